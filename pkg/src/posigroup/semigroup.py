"""Positive matrix semigroups: exponentials, resolvents and L1 growth bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidArgumentError, InvalidBoundError, ResolventUndefinedError
from .measure import Operator, l1_operator_norm

__all__ = [
    "Generator",
    "SemigroupBound",
    "PositivityVerdict",
    "default_t_grid",
    "check_positivity_generator",
    "expm",
    "resolvent",
    "resolvent_power",
    "euler_approx",
    "l1_log_norm",
    "semigroup_bound",
    "bound_slack",
]

# Scaled-argument norm before squaring.  A nonnegative argument has a
# cancellation-free series, so it tolerates a larger norm (fewer squarings,
# each of which doubles the relative error); signed arguments do not.
_SCALED_NORM_NONNEG = 8.0
_SCALED_NORM_SIGNED = 0.5
_MAX_TERMS = 200


class Generator(Operator):
    """Generator of a matrix semigroup ``T(t) = exp(tA)``.

    Positivity of the semigroup is equivalent to nonnegative off-diagonal
    entries; this is not enforced at construction, use
    :func:`check_positivity_generator`.
    """

    @classmethod
    def from_operator(cls, B: Operator) -> "Generator":
        return cls(B.space, B.entries)


@dataclass(frozen=True)
class SemigroupBound:
    """Constants with ``||exp(tA)||_{L1->L1} <= M exp(omega t)``."""

    M: float = 1.0
    omega: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.M) and math.isfinite(self.omega)):
            raise InvalidArgumentError("M and omega must be finite")
        if self.M < 1:
            raise InvalidArgumentError(f"M must be >= 1, got {self.M}")
        object.__setattr__(self, "M", float(self.M))
        object.__setattr__(self, "omega", float(self.omega))

    def growth(self, t):
        return self.M * np.exp(self.omega * np.asarray(t, dtype=float))

    def combine(self, other: "SemigroupBound") -> "SemigroupBound":
        """Smallest bound of this form dominating both."""
        return SemigroupBound(max(self.M, other.M), max(self.omega, other.omega))


class PositivityVerdict(NamedTuple):
    ok: bool
    index: tuple[int, int] | None  # worst off-diagonal entry (0-based)
    value: float


def default_t_grid(t_max=5.0, t_step=0.05):
    """``[0, t_step, 2 t_step, ..., t_max]``."""
    k = int(round(t_max / t_step))
    return [0.0] + [t_step * i for i in range(1, k + 1)]


def check_positivity_generator(A: Operator, tol: float = 0.0) -> PositivityVerdict:
    """Metzler test: the semigroup is positive iff all off-diagonals are >= 0."""
    n = A.n
    if n == 1:
        return PositivityVerdict(True, None, math.inf)
    off = np.array(A.entries, dtype=float)
    np.fill_diagonal(off, np.inf)
    idx = np.unravel_index(np.argmin(off), off.shape)
    worst = float(off[idx])
    index = (int(idx[0]), int(idx[1]))
    if worst >= -tol:
        return PositivityVerdict(True, index, worst)
    return PositivityVerdict(False, index, worst)


def expm(A: Operator, t: float) -> Operator:
    """Matrix exponential ``exp(tA)`` by shifted scaling and squaring.

    The diagonal is shifted by ``c`` so that ``tA + cI`` is entrywise
    nonnegative whenever ``A`` is Metzler.  The scaled Taylor series and
    all subsequent squarings then involve only nonnegative numbers, so
    positivity of the result is exact and there is no cancellation.
    """
    if t < 0:
        raise InvalidArgumentError(f"t must be >= 0, got {t}")
    n = A.n
    if t == 0:
        return Operator(A.space, np.eye(n))
    X = t * np.asarray(A.entries)
    c = max(0.0, -float(np.min(np.diag(X))))
    B = X + c * np.eye(n)
    theta = _SCALED_NORM_NONNEG if B.min() >= 0 else _SCALED_NORM_SIGNED
    nrm = float(np.max(np.sum(np.abs(B), axis=0)))
    s = 0 if nrm <= theta else int(math.ceil(math.log2(nrm / theta)))
    Bs = B / 2.0**s

    E = np.eye(n)
    term = np.eye(n)
    for k in range(1, _MAX_TERMS + 1):
        term = term @ Bs / k
        E += term
        if np.abs(term).max() <= 1e-18 * np.abs(E).max():
            break
    E *= math.exp(-c / 2.0**s)
    for _ in range(s):
        E = E @ E
    return Operator(A.space, E)


def _solve_shifted(entries, lam, scale=1.0):
    """Return ``(lam I - scale * entries)^{-1}`` or raise."""
    n = entries.shape[0]
    M = lam * np.eye(n) - scale * entries
    try:
        inv = np.linalg.solve(M, np.eye(n))
    except np.linalg.LinAlgError:
        raise ResolventUndefinedError(lam) from None
    if not np.all(np.isfinite(inv)):
        raise ResolventUndefinedError(lam)
    cond = np.linalg.norm(M, 1) * np.linalg.norm(inv, 1)
    if not math.isfinite(cond) or cond * np.finfo(float).eps > 1e-2:
        raise ResolventUndefinedError(lam)
    return inv


def resolvent(A: Operator, lam: float) -> Operator:
    """``(lam - A)^{-1}``."""
    return Operator(A.space, _solve_shifted(np.asarray(A.entries), float(lam)))


def resolvent_power(A: Operator, lam: float, k: int) -> Operator:
    """``(lam - A)^{-k}`` for ``k >= 0``."""
    if k < 0:
        raise InvalidArgumentError("k must be >= 0")
    R = _solve_shifted(np.asarray(A.entries), float(lam))
    return Operator(A.space, np.linalg.matrix_power(R, k))


def euler_approx(A: Operator, t: float, n: int) -> Operator:
    """Euler approximant ``(n/t)^n (n/t - A)^{-n}`` of ``exp(tA)``.

    Evaluated as ``(I - (t/n) A)^{-n}`` so the prefactor never overflows.
    """
    if t <= 0:
        raise InvalidArgumentError(f"t must be > 0, got {t}")
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n}")
    n = int(n)
    try:
        R = _solve_shifted(np.asarray(A.entries), 1.0, scale=t / n)
    except ResolventUndefinedError:
        raise ResolventUndefinedError(n / t) from None
    return Operator(A.space, np.linalg.matrix_power(R, n))


def l1_log_norm(A: Operator) -> float:
    """Weighted-L1 logarithmic norm of ``A``.

    ``max_j [A_jj + (1/m_j) sum_{i != j} m_i |A_ij|]``; the smallest
    ``omega`` for which ``||exp(tA)||_1 <= exp(omega t)`` is guaranteed by
    column sums alone.
    """
    m = A.space.m
    off = np.abs(np.asarray(A.entries, dtype=float))
    np.fill_diagonal(off, 0.0)
    return float(np.max(np.diag(A.entries) + (m @ off) / m))


def bound_slack(A: Operator, bound: SemigroupBound, t_grid=None):
    """Worst ``(t, ||exp(tA)||_1 - M e^{omega t})`` over a grid of times."""
    t_grid = default_t_grid() if t_grid is None else t_grid
    worst_t, worst = None, -math.inf
    for t in t_grid:
        slack = l1_operator_norm(A.space, expm(A, t)) - float(bound.growth(t))
        if slack > worst:
            worst_t, worst = t, slack
    return worst_t, worst


def semigroup_bound(A: Operator, override=None, t_grid=None, tol=1e-10) -> SemigroupBound:
    """L1 growth constants for the semigroup generated by ``A``.

    Without ``override`` this is ``(1, l1_log_norm(A))``.  An override
    ``(M, omega)`` (tuple or :class:`SemigroupBound`) is returned after
    checking it on ``t_grid``; :class:`InvalidBoundError` otherwise.
    """
    if override is None:
        return SemigroupBound(1.0, l1_log_norm(A))
    bound = override if isinstance(override, SemigroupBound) else SemigroupBound(*override)
    t, slack = bound_slack(A, bound, t_grid)
    if slack > tol * max(1.0, float(bound.growth(t))):
        raise InvalidBoundError(t, slack)
    return bound
