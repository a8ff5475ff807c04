"""Acceptance criteria, each at its pinned tolerance and full scale.

Run alone with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import time

import pytest

from riemannlab import verify
from riemannlab.cli import main
from conftest import ACCEPTANCE_LINES


def _check(criterion):
    result = criterion(seed=0, scale=verify.FULL)
    ACCEPTANCE_LINES.append(result.line())
    assert result.passed, result.line()
    return result


def test_c1_exact_identity_suite():
    t0 = time.perf_counter()
    _check(verify.c1_exact_identities)
    assert time.perf_counter() - t0 < 10


def test_c2_cross_covariance_suite():
    t0 = time.perf_counter()
    _check(verify.c2_cross_covariances)
    assert time.perf_counter() - t0 < 60


def test_c3_variance_law():
    _check(verify.c3_variance_law)


def test_c4_monte_carlo_lemma():
    _check(verify.c4_monte_carlo)


def test_c5_limit_law_functional():
    _check(verify.c5_tail_probability)


def test_c6_proposition_1():
    _check(verify.c6_proposition_1)


def test_c7_proposition_2():
    _check(verify.c7_proposition_2)


def test_c8_brownian_contrast_envelope():
    _check(verify.c8_brownian_paths)


def test_c9_verify_quick_deterministic(tmp_path, capsys):
    outputs = []
    for name in ("first.txt", "second.txt"):
        path = tmp_path / name
        assert main(["verify", "--quick", "--out", str(path)]) == 0
        outputs.append(path.read_bytes())
    ok = outputs[0] == outputs[1]
    line = f"{'PASS' if ok else 'FAIL'} C9 determinism: verify --quick twice, byte-identical={ok}"
    ACCEPTANCE_LINES.append(line)
    assert ok


def test_verify_reports_broken_criterion(monkeypatch):
    from riemannlab import covariance

    monkeypatch.setattr(covariance, "min_sum_bruteforce", lambda n, m: covariance.min_sum_split(n, m - 1))
    (result,) = verify.run_battery(criteria=(verify.c1_exact_identities,))
    assert not result.passed and result.key == "C1"
    assert verify.format_report([result]).splitlines()[-1] == "FAILED 1/1: C1"
