"""The acceptance battery behind ``riemannlab verify``.

Each criterion returns a :class:`CriterionResult` whose ``detail`` text is a
pure function of the seed and scale, so two runs print identical bytes.
Runtime limits are checked but elapsed times are never printed.
"""

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import ndtr

from . import covariance as cov
from .functions import Kink, Polynomial, Sine
from .sequences import decomposition_residual, y_n
from .stats import (
    brownian_contrasts,
    stolz_cesaro_check,
    tail_probability_check,
    variance_convergence_study,
)

__all__ = ["CriterionResult", "Scale", "FULL", "QUICK", "CRITERIA", "run_battery", "format_report"]


@dataclass(frozen=True)
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.key} {self.title}: {self.detail}"


@dataclass(frozen=True)
class Scale:
    mc_samples: int
    tail_samples: int
    n_paths: int


FULL = Scale(mc_samples=100_000, tail_samples=100_000, n_paths=1_000)
QUICK = Scale(mc_samples=10_000, tail_samples=10_000, n_paths=200)

# tolerances pinned at full scale; sampling tolerances widen as 1/sqrt(N) below it
TAIL_TOL = 0.005
PATH_FRACTION_TARGET = 0.32
PATH_FRACTION_TOL = 0.05


def _g(x):
    return format(x, ".12g")


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def c1_exact_identities(seed, scale):
    def run():
        bad = []
        for n in range(2, 201):
            if cov.min_sum_bruteforce(n, n) != cov.ex_n_squared(n):
                bad.append(f"E x_{n}^2")
            if cov.min_sum_bruteforce(n, n + 1) != cov.ex_n_xnp1(n):
                bad.append(f"E x_{n} x_{n + 1}")
        return bad

    bad, elapsed = _timed(run)
    ok = not bad and elapsed < 10.0
    detail = "2<=n<=200 exact" if not bad else "mismatch " + ", ".join(bad[:5])
    if elapsed >= 10.0:
        detail += ", runtime limit 10 s exceeded"
    return CriterionResult("C1", "exact identity suite", ok, detail)


def c2_cross_covariances(seed, scale):
    def run():
        bad = []
        for s in range(1, 101):
            closed = cov.cross_covariances(s)
            if cov.cross_covariances_bruteforce(s) != closed:
                bad.append(f"brute s={s}")
            if cov.cross_covariances_bruteforce(s, limit=0) != closed:
                bad.append(f"split s={s}")
            if cov.ey4s_y2s(s) != Fraction(12 * s * s + 9 * s + 2, 32 * s * s + 24 * s + 4):
                bad.append(f"E y4s y2s s={s}")
        return bad

    bad, elapsed = _timed(run)
    ok = not bad and elapsed < 60.0
    detail = "1<=s<=100 exact (brute force and split sum)" if not bad else "mismatch " + ", ".join(bad[:5])
    if elapsed >= 60.0:
        detail += ", runtime limit 60 s exceeded"
    return CriterionResult("C2", "cross-covariance suite", ok, detail)


def c3_variance_law(seed, scale):
    half_ok = all(cov.ey_n_squared(n) == Fraction(1, 2) for n in range(1, 201))
    v = cov.var_ydiff(10_000)
    limit_ok = Fraction(1, 4) - Fraction(1, 10**7) < v < Fraction(1, 4)
    detail = f"E y_n^2 = 1/2 for 1<=n<=200: {half_ok}; var_ydiff(10^4) = {_g(float(v))}"
    return CriterionResult("C3", "variance law", half_ok and limit_ok, detail)


def c4_monte_carlo(seed, scale):
    summary = variance_convergence_study([100], scale.mc_samples, seed)[0]
    ok = bool(summary.passed and summary.ks_pass)
    detail = (
        f"N={summary.n_samples} var={_g(summary.variance)} target={_g(float(summary.exact_target))} "
        f"3SE={_g(summary.variance_ci_radius)} KS D={_g(summary.ks_statistic)} "
        f"p={_g(summary.ks_pvalue)}"
    )
    return CriterionResult("C4", "Monte Carlo variance at s=100", ok, detail)


def c5_tail_probability(seed, scale):
    p = tail_probability_check(100, 0.5, scale.tail_samples, seed)
    target = 2.0 * float(ndtr(-1.0))
    tol = TAIL_TOL * math.sqrt(FULL.tail_samples / scale.tail_samples)
    ok = abs(p - target) <= tol
    detail = f"N={scale.tail_samples} P={_g(p)} target={_g(target)} tol={_g(tol)}"
    return CriterionResult("C5", "limit-law tail probability", ok, detail)


def c6_proposition_1(seed, scale):
    square = Polynomial((0.0, 0.0, 1.0))
    kink = Kink(0.5)
    checks = []
    for n in (100, 1_000, 10_000):
        checks.append(abs(y_n(square, n) - 1.0 / 3.0) <= 1.0 / (2.0 * n * n))
        checks.append(abs(y_n(kink, n) - 0.25) <= 1.0 / n)
    residual = decomposition_residual(Sine(1.0, 1.0), 50, 8)
    checks.append(residual < 1e-10)
    detail = f"{sum(checks)}/{len(checks)} bounds hold, sine residual={_g(residual)}"
    return CriterionResult("C6", "Proposition 1 at desk scale", all(checks), detail)


def c7_proposition_2(seed, scale):
    parts = []
    ok = True
    for name, spec in (("x", Polynomial((0.0, 1.0))), ("x^2", Polynomial((0.0, 0.0, 1.0)))):
        d1 = stolz_cesaro_check(spec, 10_000).discrepancy
        d2 = stolz_cesaro_check(spec, 20_000).discrepancy
        ratio = d2 / d1
        ok = ok and d1 < 1e-3 and 0.4 <= ratio <= 0.6
        parts.append(f"{name}: d={_g(d1)} ratio={_g(ratio)}")
    return CriterionResult("C7", "Proposition 2 consistency", ok, "; ".join(parts))


def c8_brownian_paths(seed, scale):
    contrasts = brownian_contrasts(500, scale.n_paths, seed)
    frac = float(np.count_nonzero(np.abs(contrasts) > 0.5)) / scale.n_paths
    tol = PATH_FRACTION_TOL * math.sqrt(FULL.n_paths / scale.n_paths)
    ok = abs(frac - PATH_FRACTION_TARGET) <= tol
    detail = f"paths={scale.n_paths} fraction(|contrast|>0.5)={_g(frac)} tol={_g(tol)}"
    return CriterionResult("C8", "Brownian contrast envelope", ok, detail)


def _stochastic_lines(seed):
    return [c(seed, QUICK).line() for c in (c4_monte_carlo, c5_tail_probability, c8_brownian_paths)]


def c9_determinism(seed, scale):
    first = _stochastic_lines(seed)
    second = _stochastic_lines(seed)
    ok = first == second
    return CriterionResult("C9", "determinism", ok, "quick stochastic battery reproduced byte for byte" if ok else "outputs differ")


CRITERIA = (
    c1_exact_identities,
    c2_cross_covariances,
    c3_variance_law,
    c4_monte_carlo,
    c5_tail_probability,
    c6_proposition_1,
    c7_proposition_2,
    c8_brownian_paths,
    c9_determinism,
)


def run_battery(seed=0, quick=False, criteria=CRITERIA):
    scale = QUICK if quick else FULL
    return [criterion(seed, scale) for criterion in criteria]


def format_report(results):
    lines = [r.line() for r in results]
    failed = [r.key for r in results if not r.passed]
    if failed:
        lines.append(f"FAILED {len(failed)}/{len(results)}: {' '.join(failed)}")
    else:
        lines.append(f"OK {len(results)}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
