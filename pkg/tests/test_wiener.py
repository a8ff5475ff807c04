import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import ks_2samp

from riemannlab.covariance import ey4s_y2s, var_ydiff
from riemannlab.functions import SampledPath
from riemannlab.sequences import y_n
from riemannlab.wiener import (
    GridPath,
    YPairSample,
    sample_gaussian_oracle,
    sample_gaussian_oracles,
    sample_grid_path,
    sample_lattice_path,
    sample_y_pair,
    sample_y_pairs,
    standard_normals,
    stream_generator,
    union_lattice,
    union_lattice_exact,
)
from oracles import lattice_size


def test_single_point_path_is_standard_normal_draw():
    path = sample_grid_path([1.0], seed=5, stream_id=9)
    assert path.values[0] == standard_normals(5, 9, 1)[0]


def test_standard_normals_look_normal():
    z = standard_normals(1, 2, 200_000)
    assert abs(z.mean()) < 0.01
    assert abs(z.var() - 1) < 0.01


def test_streams_are_distinct():
    assert not np.array_equal(standard_normals(0, 0, 8), standard_normals(0, 1, 8))
    assert not np.array_equal(standard_normals(0, 0, 8), standard_normals(1, 0, 8))


def test_stream_id_range():
    with pytest.raises(ValueError):
        stream_generator(-1, 0)
    with pytest.raises(ValueError):
        stream_generator(0, 2**64)
    stream_generator(2**64 - 1, 2**64 - 1)


def test_determinism():
    a = sample_grid_path([0.1, 0.5, 0.9], 42, 0)
    b = sample_grid_path([0.1, 0.5, 0.9], 42, 0)
    assert a == b
    assert a.values.tobytes() == b.values.tobytes()
    assert sample_y_pair(3, 42, 7) == sample_y_pair(3, 42, 7)


@pytest.mark.parametrize(
    "points", [[0.5, 0.25], [0.2, 0.2], [0.0, 0.5], [0.5, 1.5], [], [float("nan")]]
)
def test_invalid_grid(points):
    with pytest.raises(ValueError):
        sample_grid_path(points, 0, 0)


def test_fraction_grid_matches_float_grid_when_exact():
    exact = [Fraction(1, 4), Fraction(1, 2), Fraction(1)]
    a = sample_grid_path(exact, 1, 1)
    b = sample_grid_path([0.25, 0.5, 1.0], 1, 1)
    np.testing.assert_array_equal(a.values, b.values)


def test_kernel_min_covariance():
    n = 100_000
    z = np.array([standard_normals(11, i, 2) for i in range(n)])
    w_u = z[:, 0] * math.sqrt(0.25)
    w_v = w_u + z[:, 1] * math.sqrt(0.5)
    # one path per replicate through the public API for a spot check
    path = sample_grid_path([0.25, 0.75], 11, 0)
    assert path.values[0] == w_u[0] and path.values[1] == pytest.approx(w_v[0], abs=1e-15)
    prod = w_u * w_v
    se = prod.std() / math.sqrt(n)
    assert abs(prod.mean() - 0.25) < 3 * se


def test_union_lattice_s1():
    exact = union_lattice_exact(1)
    expected = sorted(
        {Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4)}
        | {Fraction(k, 5) for k in range(1, 5)}
    )
    assert exact == expected
    assert len(exact) == 9
    assert exact.count(Fraction(1, 2)) == 1


def test_union_lattice_size():
    for s in range(1, 30):
        assert len(union_lattice_exact(s)) == lattice_size(s) == 10 * s - 1


def test_union_lattice_floats_distinct():
    for s in (1, 10, 1000, 20_000):
        pts = union_lattice(s)
        assert np.all(np.diff(pts) > 0)
        assert len(pts) == 10 * s - 1


def test_lattice_path_matches_grid_path():
    a = sample_lattice_path(4, 3, 17)
    b = sample_grid_path(union_lattice_exact(4), 3, 17)
    assert a == b


def test_batch_matches_single():
    y2s, y4s = sample_y_pairs(5, 300, seed=8, stream_base=1000)
    for i in (0, 1, 150, 299):
        single = sample_y_pair(5, 8, 1000 + i)
        assert single.y2s == y2s[i] and single.y4s == y4s[i]
    part_a = sample_y_pairs(5, 100, 8, 1000)
    part_b = sample_y_pairs(5, 200, 8, 1100)
    np.testing.assert_array_equal(np.concatenate([part_a[0], part_b[0]]), y2s)


def test_y_pair_matches_sampled_path_spec():
    pair = sample_y_pair(6, 2, 99)
    spec = SampledPath(sample_lattice_path(6, 2, 99))
    assert pair.y2s == pytest.approx(y_n(spec, 12), abs=1e-12)
    assert pair.y4s == pytest.approx(y_n(spec, 24), abs=1e-12)
    assert isinstance(pair, YPairSample)
    assert pair.contrast == pair.y4s - pair.y2s


def test_contrast_mean_zero_s10():
    y2s, y4s = sample_y_pairs(10, 100_000, seed=1)
    d = y4s - y2s
    assert abs(d.mean()) < 3 * d.std() / math.sqrt(len(d))


@pytest.mark.parametrize("s", [1, 2, 5])
def test_covariance_reproduction(s):
    n = 100_000
    y2s, y4s = sample_y_pairs(s, n, seed=2024, stream_base=s << 24)
    emp = np.cov(np.vstack([y2s, y4s]))
    c = float(ey4s_y2s(s))
    exact = np.array([[0.5, c], [c, 0.5]])
    se = np.sqrt((np.outer(np.diag(exact), np.diag(exact)) + exact**2) / n)
    assert np.all(np.abs(emp - exact) <= 4 * se)


def test_var_contrast_s1():
    n = 100_000
    y2s, y4s = sample_y_pairs(1, n, seed=3)
    target = float(var_ydiff(1))
    assert abs((y4s - y2s).var(ddof=1) - target) <= 3 * target * math.sqrt(2 / n)
    assert abs(y2s.var(ddof=1) - 0.5) <= 3 * 0.5 * math.sqrt(2 / n)


def test_gaussian_oracle():
    assert sample_gaussian_oracle(1, 0, 5) == sample_gaussian_oracle(1, 0, 5)
    n = 100_000
    draws = sample_gaussian_oracles(1, n, seed=4)
    target = 7 / 30
    assert abs(draws.var(ddof=1) - target) <= 3 * target * math.sqrt(2 / n)
    assert abs(draws.mean()) <= 3 * math.sqrt(target / n)
    assert draws[3] == sample_gaussian_oracle(1, 4, 3)


def test_gaussian_oracle_same_law_as_simulation():
    oracle = sample_gaussian_oracles(10, 10_000, seed=5, stream_base=1 << 40)
    y2s, y4s = sample_y_pairs(10, 10_000, seed=5)
    assert ks_2samp(oracle, y4s - y2s).pvalue >= 0.01


def test_path_csv_export():
    path = sample_grid_path([0.25, 0.5, 1.0], 1, 2)
    text = path.to_csv()
    lines = text.split("\n")
    assert lines[0] == "point,value"
    assert len(lines) == 5 and lines[-1] == ""
    assert [float(l.split(",")[0]) for l in lines[1:4]] == [0.25, 0.5, 1.0]
    assert float(lines[2].split(",")[1]) == path.values[1]
    assert "\r" not in text


def test_grid_path_validation():
    with pytest.raises(ValueError):
        GridPath([0.1, 0.2], [1.0])
