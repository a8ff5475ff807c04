"""Test functions ``f: [0, 1] -> R`` and their JSON form.

Every spec evaluates pointwise (``spec(x)``) and on a whole uniform lattice
(``spec.lattice_values(n)`` gives ``f(k/n)`` for ``k = 1..n-1``).  Specs that
are absolutely continuous with a usable a.e. derivative also expose
``spec.derivative(u)``.
"""

import json
import math
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np
from numpy.polynomial import polynomial as P

__all__ = [
    "SpecError",
    "FunctionSpec",
    "Polynomial",
    "Sine",
    "Kink",
    "Weierstrass",
    "SampledPath",
    "spec_from_dict",
    "spec_from_json",
    "eval_f",
]


class SpecError(ValueError):
    """Raised for malformed or unsupported function specs."""


def _check_domain(x):
    arr = np.asarray(x, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise SpecError(f"argument outside [0, 1]: {x!r}")
    return arr


class FunctionSpec:
    kind: ClassVar[str] = ""
    derivative_available: ClassVar[bool] = False

    def __call__(self, x):
        arr = _check_domain(x)
        out = self._evaluate(arr)
        return float(out) if np.ndim(x) == 0 else out

    def lattice_values(self, n):
        """``f(k/n)`` for ``k = 1, ..., n-1`` as a float array."""
        if n < 2:
            return np.empty(0)
        return self._evaluate(np.arange(1, n) / n)

    def derivative(self, u):
        raise SpecError(f"{self.kind} spec has no a.e. derivative available")

    def integral(self):
        """Exact ``int_0^1 f``, or None when not known in closed form."""
        return None

    def to_dict(self):
        raise NotImplementedError

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def _evaluate(self, x):
        raise NotImplementedError


@dataclass(frozen=True)
class Polynomial(FunctionSpec):
    """``f(x) = sum_i coefficients[i] * x**i``."""

    coefficients: tuple

    kind: ClassVar[str] = "polynomial"
    derivative_available: ClassVar[bool] = True

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if not coeffs or not all(math.isfinite(c) for c in coeffs):
            raise SpecError("polynomial needs a non-empty list of finite coefficients")
        object.__setattr__(self, "coefficients", coeffs)

    def _evaluate(self, x):
        return P.polyval(x, self.coefficients)

    def derivative(self, u):
        return P.polyval(np.asarray(u, dtype=float), P.polyder(self.coefficients))

    def integral(self):
        return sum(c / (i + 1) for i, c in enumerate(self.coefficients))

    def to_dict(self):
        return {"kind": self.kind, "coefficients": list(self.coefficients)}


@dataclass(frozen=True)
class Sine(FunctionSpec):
    """``f(x) = amplitude * sin(2 pi frequency x)``."""

    frequency: float = 1.0
    amplitude: float = 1.0

    kind: ClassVar[str] = "sine"
    derivative_available: ClassVar[bool] = True

    def __post_init__(self):
        for name in ("frequency", "amplitude"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise SpecError(f"sine.{name} must be finite")
            object.__setattr__(self, name, value)

    def _evaluate(self, x):
        return self.amplitude * np.sin(2.0 * np.pi * self.frequency * x)

    def derivative(self, u):
        w = 2.0 * np.pi * self.frequency
        return self.amplitude * w * np.cos(w * np.asarray(u, dtype=float))

    def integral(self):
        if self.frequency == 0.0:
            return 0.0
        w = 2.0 * math.pi * self.frequency
        return self.amplitude * (1.0 - math.cos(w)) / w

    def to_dict(self):
        return {"kind": self.kind, "frequency": self.frequency, "amplitude": self.amplitude}


@dataclass(frozen=True)
class Kink(FunctionSpec):
    """``f(x) = |x - knot|``; the derivative is taken as 0 at the knot."""

    knot: float = 0.5

    kind: ClassVar[str] = "kink"
    derivative_available: ClassVar[bool] = True

    def __post_init__(self):
        knot = float(self.knot)
        if not 0.0 < knot < 1.0:
            raise SpecError("kink.knot must lie in (0, 1)")
        object.__setattr__(self, "knot", knot)

    def _evaluate(self, x):
        return np.abs(x - self.knot)

    def derivative(self, u):
        return np.sign(np.asarray(u, dtype=float) - self.knot)

    def integral(self):
        c = self.knot
        return (c * c + (1.0 - c) ** 2) / 2.0

    def to_dict(self):
        return {"kind": self.kind, "knot": self.knot}


@dataclass(frozen=True)
class Weierstrass(FunctionSpec):
    """Truncated ``f(x) = sum_{j<N} a**j cos(b**j pi x)``.

    ``N`` is the smallest count with ``a**N / (1 - a) < truncation_epsilon``.
    Cosine arguments are reduced modulo ``2 pi`` in exact integer arithmetic,
    so large ``b**j`` never costs precision.
    """

    a: float = 0.5
    b: int = 3
    truncation_epsilon: float = 1e-12
    n_terms: int = field(init=False, repr=False)

    kind: ClassVar[str] = "weierstrass"

    def __post_init__(self):
        a = float(self.a)
        if not 0.0 < a < 1.0:
            raise SpecError("weierstrass.a must lie in (0, 1)")
        if isinstance(self.b, bool) or int(self.b) != self.b or self.b < 1 or self.b % 2 == 0:
            raise SpecError("weierstrass.b must be an odd positive integer")
        eps = float(self.truncation_epsilon)
        if not eps > 0.0:
            raise SpecError("weierstrass.truncation_epsilon must be positive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "truncation_epsilon", eps)
        n_terms = 0
        while a**n_terms / (1.0 - a) >= eps:
            n_terms += 1
        object.__setattr__(self, "n_terms", n_terms)

    def _point(self, x):
        p, q = float(x).as_integer_ratio()
        total = math.fsum(
            self.a**j * math.cos(math.pi * (((pow(self.b, j, 2 * q) * p) % (2 * q)) / q))
            for j in range(self.n_terms)
        )
        return total

    def _evaluate(self, x):
        return np.vectorize(self._point, otypes=[float])(x)

    def lattice_values(self, n):
        if n < 2:
            return np.empty(0)
        k = np.arange(1, n, dtype=np.int64)
        out = np.zeros(n - 1)
        for j in range(self.n_terms):
            # b**j * k/n reduced modulo 2, as an integer numerator over n
            r = (pow(self.b, j, 2 * n) * k) % (2 * n)
            out += self.a**j * np.cos(np.pi * r / n)
        return out

    def integral(self):
        # each cos(b**j pi x) integrates to sin(b**j pi)/(b**j pi) = 0 for integer b
        return 0.0

    def to_dict(self):
        return {
            "kind": self.kind,
            "a": self.a,
            "b": self.b,
            "truncation_epsilon": self.truncation_epsilon,
        }


@dataclass(frozen=True, eq=False)
class SampledPath(FunctionSpec):
    """A Wiener path known on a finite grid.

    Grid points return the sampled value exactly; between them (and on
    ``[0, points[0]]`` with ``W(0) = 0``) the path is linearly interpolated.
    """

    path: object

    kind: ClassVar[str] = "sampled_path"

    def __post_init__(self):
        xs = np.concatenate(([0.0], np.asarray(self.path.points, dtype=float)))
        ys = np.concatenate(([0.0], np.asarray(self.path.values, dtype=float)))
        object.__setattr__(self, "_xs", xs)
        object.__setattr__(self, "_ys", ys)

    def _evaluate(self, x):
        idx = np.searchsorted(self._xs, x)
        idx = np.clip(idx, 0, len(self._xs) - 1)
        hit = self._xs[idx] == x
        return np.where(hit, self._ys[idx], np.interp(x, self._xs, self._ys))

    def to_dict(self):
        return {
            "kind": self.kind,
            "points": [float(p) for p in self.path.points],
            "values": [float(v) for v in self.path.values],
            "seed": self.path.seed,
            "stream_id": self.path.stream_id,
        }


def _require(data, key, kind):
    if key not in data:
        raise SpecError(f"{kind}: missing field {key!r}")
    return data[key]


def _sampled_path_from_dict(data):
    from .wiener import GridPath, sample_grid_path, union_lattice_exact

    seed = data.get("seed", 0)
    stream_id = data.get("stream_id", 0)
    if "values" in data:
        points = _require(data, "points", "sampled_path")
        try:
            path = GridPath(points=points, values=data["values"], seed=seed, stream_id=stream_id)
        except ValueError as exc:
            raise SpecError(f"sampled_path: {exc}") from exc
        return SampledPath(path)
    if "lattice_s" in data:
        points = union_lattice_exact(int(data["lattice_s"]))
    else:
        points = _require(data, "points", "sampled_path")
    try:
        return SampledPath(sample_grid_path(points, seed, stream_id))
    except ValueError as exc:
        raise SpecError(f"sampled_path: {exc}") from exc


def spec_from_dict(data):
    """Build a spec from its JSON object form ``{"kind": ..., ...}``."""
    if not isinstance(data, dict):
        raise SpecError("function spec must be a JSON object")
    kind = data.get("kind")
    try:
        if kind == "polynomial":
            coeffs = _require(data, "coefficients", kind)
            if not isinstance(coeffs, list):
                raise SpecError("polynomial: field 'coefficients' must be a list")
            return Polynomial(tuple(coeffs))
        if kind == "sine":
            return Sine(data.get("frequency", 1.0), data.get("amplitude", 1.0))
        if kind == "kink":
            return Kink(data.get("knot", 0.5))
        if kind == "weierstrass":
            return Weierstrass(
                data.get("a", 0.5), data.get("b", 3), data.get("truncation_epsilon", 1e-12)
            )
        if kind == "sampled_path":
            return _sampled_path_from_dict(data)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"{kind}: {exc}") from exc
    raise SpecError(f"field 'kind': unknown function kind {kind!r}")


def spec_from_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return spec_from_dict(data)


def eval_f(spec, x):
    """Evaluate ``spec`` at ``x`` in ``[0, 1]``."""
    return spec(x)
