"""The sums ``x_n = sum_{k=1}^{n-1} f(k/n)``, their increments ``y_n`` and the
``y_n = f(0) + I_n - J_n`` decomposition for absolutely continuous ``f``."""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial.legendre import leggauss

from .functions import SpecError

__all__ = [
    "SequenceReport",
    "x_n",
    "y_n",
    "h_n",
    "window_measure",
    "decomposition_terms",
    "decomposition_residual",
    "sequence_report",
]


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def x_n(spec, n):
    """``sum_{k=1}^{n-1} f(k/n)``, correctly rounded via :func:`math.fsum`."""
    n = _check_n(n)
    return math.fsum(spec.lattice_values(n).tolist())


def y_n(spec, n):
    n = _check_n(n)
    return x_n(spec, n + 1) - x_n(spec, n)


def h_n(u, n):
    """Indicator of ``u`` in the union of windows ``[k/(n+1), k/n)``, ``1 <= k < n``.

    The windows are disjoint, so the sum of indicators is itself 0 or 1.
    """
    n = _check_n(n)
    u = Fraction(u)
    if not 0 <= u < 1:
        raise ValueError(f"u must lie in [0, 1), got {u}")
    # smallest k with u < k/n; only that window can contain u
    k = math.floor(u * n) + 1
    return int(k <= n - 1 and Fraction(k, n + 1) <= u)


def window_measure(n):
    """Total length of the ``h_n`` windows, exactly ``(n-1)/(2(n+1))``."""
    n = _check_n(n)
    return sum((Fraction(k, n) - Fraction(k, n + 1) for k in range(1, n)), Fraction(0))


def decomposition_terms(spec, n, quadrature_points=8):
    """``(f(0), I_n, J_n)`` with ``g = f'``.

    ``I_n = f(n/(n+1)) - f(0)`` and ``J_n`` integrates ``g`` over each window
    with its own Gauss-Legendre rule, so no rule straddles a window edge.
    """
    n = _check_n(n)
    if not spec.derivative_available:
        raise SpecError(f"{spec.kind} spec has no a.e. derivative; decomposition unsupported")
    if quadrature_points < 2:
        raise ValueError("quadrature_points must be at least 2")
    f0 = spec(0.0)
    i_n = spec(n / (n + 1)) - f0
    if n == 1:
        return f0, i_n, 0.0
    nodes, weights = leggauss(quadrature_points)
    k = np.arange(1, n)
    lo = k / (n + 1)
    hi = k / n
    half = (hi - lo) / 2.0
    mid = (hi + lo) / 2.0
    g = spec.derivative(mid[:, None] + half[:, None] * nodes[None, :])
    j_n = math.fsum((half * (g @ weights)).tolist())
    return f0, i_n, j_n


def decomposition_residual(spec, n, quadrature_points=8):
    """``|y_n - (f(0) + I_n - J_n)|``; only quadrature and rounding error remain."""
    f0, i_n, j_n = decomposition_terms(spec, n, quadrature_points)
    return abs(y_n(spec, n) - (f0 + i_n - j_n))


@dataclass
class SequenceReport:
    n_values: list
    x_values: list
    y_values: list
    mean_values: list
    tail_window: int
    oscillation: float = field(init=False)
    residuals: list = None

    def __post_init__(self):
        tail = self.y_values[-self.tail_window :]
        self.oscillation = max(tail) - min(tail) if tail else 0.0

    def rows(self):
        for i, n in enumerate(self.n_values):
            row = {
                "n": n,
                "x_n": self.x_values[i],
                "y_n": self.y_values[i],
                "x_n_over_n": self.mean_values[i],
            }
            if self.residuals is not None:
                row["residual"] = self.residuals[i]
            yield row


def sequence_report(spec, n_min, n_max, tail_window=None, quadrature_points=None):
    """Tabulate ``x_n``, ``y_n`` and ``x_n/n`` for ``n_min <= n <= n_max``.

    ``tail_window`` defaults to the whole range.  With ``quadrature_points``
    set and a differentiable spec, decomposition residuals are added.
    """
    if isinstance(n_min, bool) or isinstance(n_max, bool) or not 1 <= n_min <= n_max:
        raise ValueError(f"invalid index range [{n_min}, {n_max}]")
    n_min, n_max = int(n_min), int(n_max)
    if tail_window is None:
        tail_window = n_max - n_min + 1
    if tail_window < 1:
        raise ValueError("tail_window must be positive")
    xs = [x_n(spec, n) for n in range(n_min, n_max + 2)]
    ns = list(range(n_min, n_max + 1))
    report = SequenceReport(
        n_values=ns,
        x_values=xs[:-1],
        y_values=[b - a for a, b in zip(xs, xs[1:])],
        mean_values=[x / n for x, n in zip(xs, ns)],
        tail_window=tail_window,
    )
    if quadrature_points is not None and spec.derivative_available:
        report.residuals = []
        for n, y in zip(ns, report.y_values):
            f0, i_n, j_n = decomposition_terms(spec, n, quadrature_points)
            report.residuals.append(abs(y - (f0 + i_n - j_n)))
    return report
