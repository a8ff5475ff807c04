"""Monte Carlo summaries, KS testing and convergence diagnostics."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import ndtr
from scipy.stats import kstwobign

from .covariance import var_ydiff
from .functions import SampledPath
from .sequences import x_n, y_n
from .wiener import sample_lattice_path, sample_y_pairs

__all__ = [
    "CI_SIGMAS",
    "HARD_FAIL_SIGMAS",
    "KS_ALPHA",
    "MonteCarloSummary",
    "StolzCesaroCheck",
    "ks_normal",
    "summarize",
    "stream_base",
    "variance_convergence_study",
    "tail_probability_check",
    "stolz_cesaro_check",
    "oscillation_profile",
    "brownian_contrasts",
]

CI_SIGMAS = 3.0
HARD_FAIL_SIGMAS = 5.0
KS_ALPHA = 0.01

# stream id layout: purpose tag in bits 48+, s in bits 24-47, replicate below
_TAG_VARIANCE = 0
_TAG_TAIL = 1
_TAG_PATHS = 2


def stream_base(tag, s):
    if not 0 <= s < 2**24:
        raise ValueError("s too large for the stream layout")
    return (tag << 48) | (s << 24)


def ks_normal(sample):
    """One-sample KS statistic against N(0, 1) and its asymptotic p-value."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = len(x)
    if n == 0:
        raise ValueError("empty sample")
    cdf = ndtr(x)
    d_plus = np.max(np.arange(1, n + 1) / n - cdf)
    d_minus = np.max(cdf - np.arange(n) / n)
    d = float(max(d_plus, d_minus))
    return d, float(kstwobign.sf(math.sqrt(n) * d))


@dataclass(frozen=True)
class MonteCarloSummary:
    n_samples: int
    mean: float
    variance: float
    variance_ci_radius: float
    ks_statistic: float
    ks_pvalue: float
    ks_pass: bool
    exact_target: Fraction = None
    s: int = None

    @property
    def standard_error(self):
        return self.variance_ci_radius / CI_SIGMAS

    @property
    def deviation(self):
        if self.exact_target is None:
            return None
        return abs(self.variance - float(self.exact_target))

    @property
    def passed(self):
        """Variance within the 3-SE radius of the exact target (None without one)."""
        if self.exact_target is None:
            return None
        return self.deviation <= self.variance_ci_radius

    @property
    def hard_failed(self):
        if self.exact_target is None:
            return False
        return self.deviation > HARD_FAIL_SIGMAS * self.standard_error

    @property
    def verdict(self):
        if self.exact_target is None:
            return "n/a"
        if self.hard_failed:
            return "hard-fail"
        return "pass" if self.passed else "fail"


def summarize(sample, exact_target=None, s=None, alpha=KS_ALPHA):
    """Moments, confidence radius and KS verdict for a centred Gaussian sample.

    The radius is ``3 * sigma^2 * sqrt(2/N)``, with ``sigma^2`` the exact
    target when given.  The KS test standardizes by the exact standard
    deviation when known, otherwise by the sample's.
    """
    values = np.asarray(sample, dtype=float)
    n = len(values)
    if n < 2:
        raise ValueError("need at least two samples")
    mean = math.fsum(values.tolist()) / n
    variance = math.fsum(((values - mean) ** 2).tolist()) / (n - 1)
    sigma2 = float(exact_target) if exact_target is not None else variance
    radius = CI_SIGMAS * sigma2 * math.sqrt(2.0 / n)
    scale = math.sqrt(sigma2) if sigma2 > 0 else 1.0
    d, p = ks_normal(values / scale)
    return MonteCarloSummary(
        n_samples=n,
        mean=mean,
        variance=variance,
        variance_ci_radius=radius,
        ks_statistic=d,
        ks_pvalue=p,
        ks_pass=p >= alpha,
        exact_target=None if exact_target is None else Fraction(exact_target),
        s=s,
    )


def _check_samples(n_samples, minimum=100):
    if isinstance(n_samples, bool) or int(n_samples) != n_samples or n_samples < minimum:
        raise ValueError(f"n_samples must be an integer >= {minimum}, got {n_samples!r}")
    return int(n_samples)


def contrast_samples(s, n_samples, seed, tag=_TAG_VARIANCE):
    y2s, y4s = sample_y_pairs(s, n_samples, seed, stream_base(tag, s))
    return y4s - y2s


def variance_convergence_study(s_values, n_samples, seed=0):
    """One :class:`MonteCarloSummary` of ``y4s - y2s`` per ``s``, targeted at ``var_ydiff(s)``."""
    n_samples = _check_samples(n_samples)
    return [
        summarize(contrast_samples(s, n_samples, seed), var_ydiff(s), s=s) for s in s_values
    ]


def tail_probability_check(s, threshold, n_samples, seed=0):
    """Empirical ``P(|y4s - y2s| > threshold)``; near ``2 Phi(-2 threshold)`` for large s."""
    if abs(var_ydiff(s) - Fraction(1, 4)) >= Fraction(1, 1000):
        raise ValueError(f"s={s} too small: var_ydiff(s) not within 1e-3 of 1/4")
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    n_samples = _check_samples(n_samples)
    d = contrast_samples(s, n_samples, seed, tag=_TAG_TAIL)
    return int(np.count_nonzero(np.abs(d) > threshold)) / n_samples


@dataclass(frozen=True)
class StolzCesaroCheck:
    n_range: tuple
    a_seq: list
    b_seq: list
    ratio_tail: float
    increment_tail: float

    @property
    def discrepancy(self):
        return abs(self.ratio_tail - self.increment_tail)


def stolz_cesaro_check(spec, n_max, tail_window=None):
    """Compare ``x_n / n`` at ``n_max`` with the tail mean of ``y_n``.

    ``a_n = x_n`` and ``b_n = n`` are kept over the tail window only,
    ``n_max - tail_window <= n <= n_max``.
    """
    if tail_window is None:
        tail_window = max(n_max // 10, 100)
    if tail_window < 1 or n_max < 2 * tail_window:
        raise ValueError(f"need n_max >= 2 * tail_window, got {n_max}, {tail_window}")
    lo = n_max - tail_window
    ns = list(range(lo, n_max + 1))
    a = [x_n(spec, n) for n in ns]
    increments = [(a1 - a0) / (n1 - n0) for a0, a1, n0, n1 in zip(a, a[1:], ns, ns[1:])]
    return StolzCesaroCheck(
        n_range=(lo, n_max),
        a_seq=a,
        b_seq=[float(n) for n in ns],
        ratio_tail=a[-1] / n_max,
        increment_tail=math.fsum(increments) / len(increments),
    )


def oscillation_profile(spec, s_values):
    """``(s, y_{4s} - y_{2s})`` pairs, the dyadic contrasts of ``spec``."""
    return [(s, y_n(spec, 4 * s) - y_n(spec, 2 * s)) for s in s_values]


def brownian_contrasts(s, n_paths, seed=0):
    """Dyadic contrast at ``s`` for ``n_paths`` independent sampled-path specs."""
    base = stream_base(_TAG_PATHS, s)
    out = np.empty(n_paths)
    for i in range(n_paths):
        spec = SampledPath(sample_lattice_path(s, seed, base + i))
        out[i] = oscillation_profile(spec, [s])[0][1]
    return out
