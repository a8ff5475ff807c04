"""Exact Gaussian covariances of Riemann sums of a Wiener path.

With ``f = W`` a standard Wiener process, ``x_n = sum_{k<n} W(k/n)`` is a
centred Gaussian variable and every second moment reduces to a double sum of
the kernel ``E W(u) W(v) = min(u, v)``.  Everything here is returned as a
:class:`fractions.Fraction`, which is always stored reduced with a positive
denominator.
"""

from fractions import Fraction

import numpy as np

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "CovariancePair",
    "min_sum",
    "min_sum_bruteforce",
    "min_sum_split",
    "ex_n_squared",
    "ex_n_xnp1",
    "cross_covariances",
    "cross_covariances_bruteforce",
    "ey_n_squared",
    "ey_n_ym",
    "ey4s_y2s",
    "var_ydiff",
]

#: Above this many (j, k) term pairs ``min_sum`` switches to the split-sum path.
BRUTE_FORCE_LIMIT = 10**7

_INT64_SAFE = 2**62


def _check_positive(*values):
    for v in values:
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 1:
            raise ValueError(f"expected a positive integer, got {v!r}")


def min_sum_bruteforce(n, m):
    """``sum_{j<n} sum_{k<m} min(j/n, k/m)`` by direct enumeration.

    Works over the common denominator ``n*m``: ``min(j/n, k/m) = min(j*m, k*n)/(n*m)``.
    """
    _check_positive(n, m)
    n, m = int(n), int(m)
    if n == 1 or m == 1:
        return Fraction(0)
    if (n - 1) * (m - 1) * n * m < _INT64_SAFE:
        jm = np.arange(1, n, dtype=np.int64) * m
        total = 0
        for k in range(1, m):
            total += int(np.minimum(jm, k * n).sum())
    else:
        total = sum(min(j * m, k * n) for j in range(1, n) for k in range(1, m))
    return Fraction(total, n * m)


def min_sum_split(n, m):
    """Same double sum in O(m) exact integer steps.

    For each inner index ``k`` the outer range splits at ``J = floor(n k / m)``:
    below it ``min`` is ``j/n`` (a triangular sum), above it ``k/m``.
    """
    _check_positive(n, m)
    n, m = int(n), int(m)
    # accumulated over the common denominator 2*n*m
    total = 0
    for k in range(1, m):
        J = min((n * k) // m, n - 1)
        total += J * (J + 1) * m + 2 * (n - 1 - J) * k * n
    return Fraction(total, 2 * n * m)


def min_sum(n, m, limit=BRUTE_FORCE_LIMIT):
    """``E x_n x_m`` for ``f = W``, i.e. ``sum_{j<n} sum_{k<m} min(j/n, k/m)``.

    Enumerates directly while ``n*m <= limit`` and otherwise uses
    :func:`min_sum_split`.  Both routes are exact.
    """
    _check_positive(n, m)
    if n * m <= limit:
        return min_sum_bruteforce(n, m)
    return min_sum_split(n, m)


class CovariancePair:
    """``E x_n x_m`` tagged with its grid sizes."""

    __slots__ = ("n", "m", "value")

    def __init__(self, n, m, value=None):
        _check_positive(n, m)
        self.n = int(n)
        self.m = int(m)
        self.value = min_sum(n, m) if value is None else Fraction(value)

    def verify(self):
        return self.value == min_sum_bruteforce(self.n, self.m)

    def __eq__(self, other):
        if not isinstance(other, CovariancePair):
            return NotImplemented
        return (self.n, self.m, self.value) == (other.n, other.m, other.value)

    def __repr__(self):
        return f"CovariancePair(n={self.n}, m={self.m}, value={self.value})"


def ex_n_squared(n):
    """Closed form ``E x_n^2 = (2n^2 - 3n + 1)/6``."""
    _check_positive(n)
    return Fraction(2 * n * n - 3 * n + 1, 6)


def ex_n_xnp1(n):
    """Closed form ``E x_n x_{n+1} = (2n^2 - n - 1)/6``."""
    _check_positive(n)
    return Fraction(2 * n * n - n - 1, 6)


def cross_covariances(s):
    """Closed forms for the dyadic pair ``(2s, 4s)``.

    Returns ``(E x_{4s} x_{2s}, E x_{4s+1} x_{2s+1}, E x_{4s+1} x_{2s}, E x_{4s} x_{2s+1})``.
    """
    _check_positive(s)
    return (
        Fraction(32 * s**2 - 18 * s + 1, 12),
        Fraction(32 * s**3 + 14 * s**2, 12 * s + 3),
        Fraction(32 * s**3 - 2 * s**2 - 5 * s - 1, 12 * s + 3),
        Fraction(64 * s**3 + 28 * s**2 - 7 * s - 1, 24 * s + 12),
    )


def cross_covariances_bruteforce(s, limit=BRUTE_FORCE_LIMIT):
    """The four sums of :func:`cross_covariances` evaluated through :func:`min_sum`."""
    _check_positive(s)
    return (
        min_sum(4 * s, 2 * s, limit),
        min_sum(4 * s + 1, 2 * s + 1, limit),
        min_sum(4 * s + 1, 2 * s, limit),
        min_sum(4 * s, 2 * s + 1, limit),
    )


def ey_n_squared(n):
    """``E y_n^2 = E x_{n+1}^2 + E x_n^2 - 2 E x_n x_{n+1}``; equal to 1/2 for all n."""
    _check_positive(n)
    return ex_n_squared(n + 1) + ex_n_squared(n) - 2 * ex_n_xnp1(n)


def ey_n_ym(n, m, limit=BRUTE_FORCE_LIMIT):
    """``E y_n y_m`` for arbitrary indices, by expanding both differences.

    There is no closed form to compare with outside the ``(2s, 4s)`` family.
    """
    _check_positive(n, m)
    return (
        min_sum(n + 1, m + 1, limit)
        - min_sum(n + 1, m, limit)
        - min_sum(n, m + 1, limit)
        + min_sum(n, m, limit)
    )


def ey4s_y2s(s):
    """``E y_{4s} y_{2s}``, combined from :func:`cross_covariances`.

    Equals ``(12s^2 + 9s + 2)/(32s^2 + 24s + 4)`` and tends to 3/8.
    """
    a, b, c, d = cross_covariances(s)
    return a + b - c - d


def var_ydiff(s):
    """Exact ``Var(y_{4s} - y_{2s}) = 1 - 2 E y_{4s} y_{2s}``; tends to 1/4 from below."""
    return ey_n_squared(4 * s) + ey_n_squared(2 * s) - 2 * ey4s_y2s(s)
