"""Finite weighted measure spaces and the linear algebra living on them.

A :class:`MeasureSpace` is a finite set of atoms ``0..n-1`` with strictly
positive masses ``m``.  Functions on it are vectors, bounded operators are
``n x n`` matrices acting by ``(Bu)_i = sum_j B_ij u_j``.  The inner product
is ``<u, v> = sum_i m_i u_i v_i`` and the L1 norm is ``sum_i m_i |u_i|``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "MeasureSpace",
    "Func",
    "Operator",
    "inner",
    "norm_l1",
    "norm_sup",
    "adjoint",
    "form_value",
    "l1_operator_norm",
    "kernel",
    "func_to_json",
    "func_from_json",
    "operator_to_json",
    "operator_from_json",
    "save_func",
    "load_func",
    "save_operator",
    "load_operator",
]


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MeasureSpace:
    """Finite atomic measure space with weights ``m``."""

    m: np.ndarray

    def __post_init__(self):
        m = _frozen(self.m)
        if m.ndim != 1 or m.size < 1:
            raise InvalidArgumentError("weights must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(m)) or np.any(m <= 0):
            raise InvalidArgumentError("weights must be finite and strictly positive")
        object.__setattr__(self, "m", m)

    @classmethod
    def uniform(cls, n, weight=1.0):
        return cls(np.full(n, float(weight)))

    @property
    def n(self) -> int:
        return self.m.size

    @property
    def total(self) -> float:
        return float(self.m.sum())

    def func(self, values) -> "Func":
        return Func(self, values)

    def operator(self, entries) -> "Operator":
        return Operator(self, entries)

    def one(self) -> "Func":
        """Indicator of the whole space."""
        return Func(self, np.ones(self.n))

    def basis(self, j) -> "Func":
        e = np.zeros(self.n)
        e[j] = 1.0
        return Func(self, e)

    def identity(self) -> "Operator":
        return Operator(self, np.eye(self.n))

    def __eq__(self, other):
        if not isinstance(other, MeasureSpace):
            return NotImplemented
        return self is other or (self.n == other.n and np.array_equal(self.m, other.m))

    def __hash__(self):
        return hash(self.m.tobytes())

    def __repr__(self):
        return f"MeasureSpace(n={self.n}, m={self.m.tolist()!r})"


@dataclass(frozen=True, eq=False)
class Func:
    """Real function on a :class:`MeasureSpace`."""

    space: MeasureSpace
    values: np.ndarray

    def __post_init__(self):
        v = _frozen(self.values)
        if v.shape != (self.space.n,):
            raise InvalidArgumentError(
                f"function has shape {v.shape}, space has {self.space.n} points"
            )
        object.__setattr__(self, "values", v)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __add__(self, other):
        _same_space(self, other)
        return Func(self.space, self.values + other.values)

    def __sub__(self, other):
        _same_space(self, other)
        return Func(self.space, self.values - other.values)

    def __mul__(self, c):
        return Func(self.space, self.values * float(c))

    __rmul__ = __mul__

    def __neg__(self):
        return Func(self.space, -self.values)

    def is_nonnegative(self, tol=0.0) -> bool:
        return bool(np.all(self.values >= -tol))


@dataclass(frozen=True, eq=False)
class Operator:
    """Linear operator on a :class:`MeasureSpace`, stored as a dense matrix."""

    space: MeasureSpace
    entries: np.ndarray

    def __post_init__(self):
        e = _frozen(self.entries)
        n = self.space.n
        if e.shape != (n, n):
            raise InvalidArgumentError(
                f"operator has shape {e.shape}, expected ({n}, {n})"
            )
        object.__setattr__(self, "entries", e)

    @property
    def n(self) -> int:
        return self.space.n

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __matmul__(self, other):
        _same_space(self, other)
        if isinstance(other, Func):
            return Func(self.space, self.entries @ other.values)
        if isinstance(other, Operator):
            return Operator(self.space, self.entries @ other.entries)
        return NotImplemented

    def __call__(self, u: Func) -> Func:
        return self @ u

    def __add__(self, other):
        _same_space(self, other)
        return type(self)(self.space, self.entries + other.entries)

    def __sub__(self, other):
        _same_space(self, other)
        return type(self)(self.space, self.entries - other.entries)

    def __mul__(self, c):
        return type(self)(self.space, self.entries * float(c))

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(self.space, -self.entries)


def _same_space(a, b):
    sa = getattr(a, "space", None)
    sb = getattr(b, "space", None)
    if sa is None or sb is None:
        raise InvalidArgumentError("expected objects living on a MeasureSpace")
    if sa != sb:
        raise InvalidArgumentError(f"space mismatch: {sa!r} vs {sb!r}")


def _check(space, *objs):
    for obj in objs:
        if obj.space != space:
            raise InvalidArgumentError(
                f"object lives on {obj.space!r}, expected {space!r}"
            )


def inner(space: MeasureSpace, u: Func, v: Func) -> float:
    """Weighted inner product ``sum_i m_i u_i v_i``."""
    _check(space, u, v)
    return float(np.sum(space.m * u.values * v.values))


def norm_l1(space: MeasureSpace, u: Func) -> float:
    _check(space, u)
    return float(np.sum(space.m * np.abs(u.values)))


def norm_sup(space: MeasureSpace, u: Func) -> float:
    _check(space, u)
    return float(np.max(np.abs(u.values)))


def adjoint(space: MeasureSpace, B: Operator) -> Operator:
    """Adjoint with respect to the weighted inner product.

    ``B*_ij = (m_j / m_i) B_ji``, so that ``<Bu, v> = <u, B* v>``.  The
    result has the same class as ``B`` (a generator stays a generator).
    """
    _check(space, B)
    m = space.m
    return type(B)(space, (B.entries.T * m[np.newaxis, :]) / m[:, np.newaxis])


def form_value(space: MeasureSpace, A: Operator, u: Func, v: Func) -> float:
    """Quadratic form ``a(u, v) = <-Au, v>`` associated with a generator."""
    _check(space, A, u, v)
    return inner(space, -(A @ u), v)


def l1_operator_norm(space: MeasureSpace, B: Operator | np.ndarray) -> float:
    """Exact L1 -> L1 operator norm, ``max_j (1/m_j) sum_i m_i |B_ij|``."""
    entries = B.entries if isinstance(B, Operator) else np.asarray(B, dtype=float)
    if isinstance(B, Operator):
        _check(space, B)
    m = space.m
    return float(np.max((m @ np.abs(entries)) / m))


def kernel(space: MeasureSpace, B: Operator) -> np.ndarray:
    """Integral kernel ``k(i, j) = B_ij / m_j`` of an operator."""
    _check(space, B)
    return B.entries / space.m[np.newaxis, :]


# --- JSON file formats ----------------------------------------------------

def func_to_json(u: Func) -> dict:
    return {"m": u.space.m.tolist(), "values": u.values.tolist()}


def func_from_json(obj: dict, space: MeasureSpace | None = None) -> Func:
    try:
        sp = space or MeasureSpace(obj["m"])
        return Func(sp, obj["values"])
    except KeyError as exc:
        raise InvalidArgumentError(f"missing field {exc.args[0]!r}") from None


def operator_to_json(B: Operator) -> dict:
    return {"m": B.space.m.tolist(), "entries": B.entries.tolist()}


def operator_from_json(obj: dict, cls=Operator, space: MeasureSpace | None = None):
    try:
        sp = space or MeasureSpace(obj["m"])
        return cls(sp, obj["entries"])
    except KeyError as exc:
        raise InvalidArgumentError(f"missing field {exc.args[0]!r}") from None


def save_func(u: Func, path):
    Path(path).write_text(json.dumps(func_to_json(u)))


def load_func(path) -> Func:
    return func_from_json(json.loads(Path(path).read_text()))


def save_operator(B: Operator, path):
    Path(path).write_text(json.dumps(operator_to_json(B)))


def load_operator(path, cls=Operator):
    return operator_from_json(json.loads(Path(path).read_text()), cls=cls)
