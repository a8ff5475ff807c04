import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riemannlab.functions import (
    Kink,
    Polynomial,
    SampledPath,
    Sine,
    SpecError,
    Weierstrass,
    eval_f,
    spec_from_dict,
    spec_from_json,
)
from riemannlab.wiener import sample_grid_path


def test_eval_examples():
    assert eval_f(Polynomial((0, 1)), 0.5) == 0.5
    assert eval_f(Kink(0.5), 0.5) == 0.0
    w = Weierstrass(0.5, 3, 1e-12)
    assert abs(eval_f(w, 0.0) - 2.0) < 1e-12


def test_weierstrass_term_count():
    w = Weierstrass(0.5, 3, 1e-12)
    assert w.a**w.n_terms / (1 - w.a) < 1e-12
    assert w.a ** (w.n_terms - 1) / (1 - w.a) >= 1e-12


@pytest.mark.parametrize("x", [0.0, 1.0])
def test_weierstrass_endpoints(x):
    w = Weierstrass(0.7, 5, 1e-10)
    geometric = (1 - 0.7**w.n_terms) / 0.3
    assert eval_f(w, x) == pytest.approx(geometric if x == 0 else -geometric, abs=1e-12)


def test_weierstrass_lattice_matches_pointwise_on_dyadic_grid():
    # k/64 is exact in binary so both evaluation paths see the same argument
    w = Weierstrass(0.5, 3, 1e-12)
    lattice = w.lattice_values(64)
    pointwise = np.array([w(k / 64) for k in range(1, 64)])
    np.testing.assert_allclose(lattice, pointwise, atol=1e-13)


def test_weierstrass_matches_naive_sum_for_few_terms():
    w = Weierstrass(0.5, 3, 0.2)
    x = np.linspace(0, 1, 11)
    naive = sum(0.5**j * np.cos(3**j * np.pi * x) for j in range(w.n_terms))
    np.testing.assert_allclose(w(x), naive, atol=1e-12)


def test_domain_error():
    with pytest.raises(SpecError):
        eval_f(Polynomial((1,)), 1.5)
    with pytest.raises(SpecError):
        eval_f(Sine(), -0.1)


@given(st.floats(0, 1))
def test_all_kinds_finite(x):
    for spec in (Polynomial((1, -2, 3)), Sine(2.0, 0.5), Kink(0.3), Weierstrass(0.6, 7, 1e-6)):
        assert math.isfinite(spec(x))


def test_derivatives():
    assert Polynomial((0, 0, 1)).derivative(0.25) == pytest.approx(0.5)
    assert Sine(1, 1).derivative(0.0) == pytest.approx(2 * np.pi)
    assert Kink(0.5).derivative(0.5) == 0.0
    assert Kink(0.5).derivative(0.2) == -1.0
    with pytest.raises(SpecError):
        Weierstrass().derivative(0.5)


def test_integrals():
    assert Polynomial((0, 0, 1)).integral() == pytest.approx(1 / 3)
    assert Kink(0.5).integral() == 0.25
    assert Sine(1, 1).integral() == pytest.approx(0.0, abs=1e-15)
    assert Weierstrass().integral() == 0.0


@pytest.mark.parametrize(
    "spec",
    [Polynomial((0.0, 0.0, 1.0)), Sine(3.0, 2.0), Kink(0.25), Weierstrass(0.5, 3, 1e-9)],
)
def test_json_roundtrip(spec):
    again = spec_from_json(spec.to_json())
    assert again == spec
    assert again.to_dict() == spec.to_dict()


def test_sampled_path_spec():
    path = sample_grid_path([0.25, 0.5, 1.0], seed=3, stream_id=1)
    spec = SampledPath(path)
    assert spec(0.5) == path.values[1]
    assert spec(0.0) == 0.0
    assert spec(0.125) == pytest.approx(path.values[0] / 2)
    assert not spec.derivative_available
    again = spec_from_dict(spec.to_dict())
    np.testing.assert_array_equal(again.path.values, path.values)
    regenerated = spec_from_dict({"kind": "sampled_path", "points": [0.25, 0.5, 1.0], "seed": 3, "stream_id": 1})
    np.testing.assert_array_equal(regenerated.path.values, path.values)


def test_sampled_path_from_lattice():
    spec = spec_from_dict({"kind": "sampled_path", "lattice_s": 1, "seed": 0, "stream_id": 0})
    assert len(spec.path) == 9


@pytest.mark.parametrize(
    "payload",
    [
        {"kind": "polynomial"},
        {"kind": "polynomial", "coefficients": "x"},
        {"kind": "kink", "knot": 1.5},
        {"kind": "weierstrass", "a": 1.2},
        {"kind": "weierstrass", "b": 4},
        {"kind": "sine", "frequency": "fast"},
        {"kind": "sampled_path", "points": [0.5, 0.2], "values": [1, 2]},
        {"kind": "spline"},
        [1, 2],
    ],
)
def test_bad_specs(payload):
    with pytest.raises(SpecError):
        spec_from_dict(payload)


def test_bad_json_reports_position():
    with pytest.raises(SpecError, match="line 1"):
        spec_from_json('{"kind": ')
    assert json.loads(Polynomial((1,)).to_json())["kind"] == "polynomial"
