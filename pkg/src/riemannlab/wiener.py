"""Exact finite-dimensional sampling of a standard Wiener process.

Randomness comes from numpy's counter-based Philox generator keyed by
``(seed, stream_id)``: every stream is an independent, reproducible
sequence, so a Monte Carlo replicate is fully identified by its stream id
and results do not depend on how replicates are batched.  Normal draws use
the inverse normal CDF on 53-bit uniforms.
"""

import csv
import functools
import io
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import ndtri

from .covariance import var_ydiff

__all__ = [
    "MASK64",
    "stream_generator",
    "standard_normals",
    "GridPath",
    "YPairSample",
    "sample_grid_path",
    "union_lattice",
    "union_lattice_exact",
    "sample_lattice_path",
    "sample_y_pair",
    "sample_y_pairs",
    "sample_gaussian_oracle",
    "sample_gaussian_oracles",
]

MASK64 = 2**64 - 1
_CHUNK = 2048


def _check_u64(name, value):
    if isinstance(value, bool) or int(value) != value or not 0 <= value <= MASK64:
        raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value!r}")
    return int(value)


def stream_generator(seed, stream_id):
    """Philox bit generator for one named stream."""
    seed = _check_u64("seed", seed)
    stream_id = _check_u64("stream_id", stream_id)
    return np.random.Philox(key=seed | (stream_id << 64))


def _raw_to_normal(raw):
    u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    return ndtri(u)


def standard_normals(seed, stream_id, size):
    """First ``size`` standard normal draws of stream ``(seed, stream_id)``."""
    return _raw_to_normal(stream_generator(seed, stream_id).random_raw(size))


@dataclass(frozen=True, eq=False)
class GridPath:
    """Wiener values on a strictly increasing grid in ``(0, 1]``."""

    points: np.ndarray
    values: np.ndarray
    seed: int = 0
    stream_id: int = 0

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        values = np.asarray(self.values, dtype=float)
        _validate_points(points)
        if values.shape != points.shape:
            raise ValueError("points and values must have the same length")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "seed", _check_u64("seed", self.seed))
        object.__setattr__(self, "stream_id", _check_u64("stream_id", self.stream_id))

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, GridPath):
            return NotImplemented
        return (
            self.seed == other.seed
            and self.stream_id == other.stream_id
            and np.array_equal(self.points, other.points)
            and np.array_equal(self.values, other.values)
        )

    def to_csv(self):
        """CSV text with header ``point,value``, ascending points, LF endings."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["point", "value"])
        for p, v in zip(self.points, self.values):
            writer.writerow([repr(float(p)), repr(float(v))])
        return buf.getvalue()


def _validate_points(points):
    if points.ndim != 1 or len(points) == 0:
        raise ValueError("grid must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(points)):
        raise ValueError("grid points must be finite")
    if points[0] <= 0.0 or points[-1] > 1.0:
        raise ValueError("grid points must lie in (0, 1]")
    if np.any(np.diff(points) <= 0.0):
        raise ValueError("grid points must be strictly increasing")


def _increment_sd(points):
    """Standard deviations of successive increments, exact when points are Fractions."""
    if len(points) and all(isinstance(p, (Fraction, int)) for p in points):
        exact = [Fraction(p) for p in points]
        if any(b <= a for a, b in zip(exact, exact[1:])) or exact[0] <= 0 or exact[-1] > 1:
            raise ValueError("grid points must be strictly increasing in (0, 1]")
        gaps = [exact[0]] + [b - a for a, b in zip(exact, exact[1:])]
        return np.array([float(p) for p in exact]), np.sqrt([float(g) for g in gaps])
    arr = np.asarray(points, dtype=float)
    _validate_points(arr)
    return arr, np.sqrt(np.diff(arr, prepend=0.0))


def sample_grid_path(points, seed, stream_id):
    """Sample ``W`` at ``points`` from stream ``(seed, stream_id)``.

    ``points`` may be floats or :class:`~fractions.Fraction` values; with
    fractions the increment variances are exact differences rounded once.
    """
    arr, sd = _increment_sd(points)
    z = standard_normals(seed, stream_id, len(arr))
    return GridPath(arr, np.cumsum(z * sd), seed, stream_id)


def _ypair_orders(s):
    return (2 * s, 2 * s + 1, 4 * s, 4 * s + 1)


@functools.lru_cache(maxsize=64)
def _lattice(s):
    if isinstance(s, bool) or int(s) != s or s < 1:
        raise ValueError(f"s must be a positive integer, got {s!r}")
    exact = sorted({Fraction(k, n) for n in _ypair_orders(s) for k in range(1, n)})
    index = {p: i for i, p in enumerate(exact)}
    columns = tuple(
        np.array([index[Fraction(k, n)] for k in range(1, n)], dtype=np.intp)
        for n in _ypair_orders(s)
    )
    points = np.array([float(p) for p in exact])
    gaps = [exact[0]] + [b - a for a, b in zip(exact, exact[1:])]
    sd = np.sqrt([float(g) for g in gaps])
    return tuple(exact), points, sd, columns


def union_lattice_exact(s):
    """Sorted distinct ``k/n`` (``1 <= k < n``, ``n`` in ``2s, 2s+1, 4s, 4s+1``) as Fractions."""
    return list(_lattice(s)[0])


def union_lattice(s):
    """Float version of :func:`union_lattice_exact`, deduplicated before rounding."""
    return _lattice(s)[1].copy()


@dataclass(frozen=True)
class YPairSample:
    s: int
    y2s: float
    y4s: float

    @property
    def contrast(self):
        return self.y4s - self.y2s


def sample_lattice_path(s, seed, stream_id):
    """Same as ``sample_grid_path(union_lattice_exact(s), seed, stream_id)``, cached grid."""
    _, points, sd, _ = _lattice(s)
    z = standard_normals(seed, stream_id, len(points))
    return GridPath(points, np.cumsum(z * sd), seed, stream_id)


def sample_y_pairs(s, n_samples, seed, stream_base=0):
    """``(y2s, y4s)`` arrays for replicates with stream ids ``stream_base + i``.

    Each replicate is one Wiener path on ``union_lattice(s)``; only the two
    statistics are kept.
    """
    if n_samples < 0:
        raise ValueError("n_samples must be non-negative")
    _, _, sd, columns = _lattice(s)
    m = len(sd)
    y2s = np.empty(n_samples)
    y4s = np.empty(n_samples)
    raw = np.empty((min(_CHUNK, max(n_samples, 1)), m), dtype=np.uint64)
    for start in range(0, n_samples, _CHUNK):
        rows = min(_CHUNK, n_samples - start)
        for i in range(rows):
            raw[i] = stream_generator(seed, stream_base + start + i).random_raw(m)
        paths = np.cumsum(_raw_to_normal(raw[:rows]) * sd, axis=1)
        # sequential accumulation keeps each row independent of the batch shape
        x = [np.cumsum(paths[:, col], axis=1)[:, -1] for col in columns]
        y2s[start : start + rows] = x[1] - x[0]
        y4s[start : start + rows] = x[3] - x[2]
    return y2s, y4s


def sample_y_pair(s, seed, stream_id):
    """One :class:`YPairSample` from the path of stream ``(seed, stream_id)``."""
    y2s, y4s = sample_y_pairs(s, 1, seed, stream_id)
    return YPairSample(int(s), float(y2s[0]), float(y4s[0]))


def sample_gaussian_oracle(s, seed, stream_id):
    """One draw from ``N(0, var_ydiff(s))``, the exact law of ``y4s - y2s``."""
    return float(np.sqrt(float(var_ydiff(s))) * standard_normals(seed, stream_id, 1)[0])


def sample_gaussian_oracles(s, n_samples, seed, stream_base=0):
    sd = np.sqrt(float(var_ydiff(s)))
    z = np.array([standard_normals(seed, stream_base + i, 1)[0] for i in range(n_samples)])
    return sd * z
