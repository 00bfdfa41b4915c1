"""Comparison of two positive semigroups through their generators.

Given generators ``A0`` (unperturbed) and ``A`` (perturbed) with a common
L1 growth bound ``(M, omega)`` for ``exp(tA)`` and ``exp(tA0)*``, the
following are equivalent, with constants linked in a loop
``C2 = C1``, ``C3 = C2 M^2``, ``C1 = C3 M^2``:

(a) ``exp(tA) u <= exp(tA0) u + C1 t e^{omega t} ||u||_1 1``      (t >= 0)
(b) ``<Au, v> <= <u, A0* v> + C2 ||u||_1 ||v||_1``
(c) ``R(lam, A) u <= R(lam, A0) u + C3 / (lam - omega)^2 ||u||_1 1``  (lam > omega)

for all nonnegative ``u`` (and ``v``).  On a finite space every inequality
is linear in ``u`` and ``v``, so it holds for all nonnegative inputs iff
it holds for basis vectors; every checker here works entrywise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisNotSatisfiedError, InvalidArgumentError
from .measure import Func, MeasureSpace, Operator, adjoint, inner
from .semigroup import (
    Generator,
    SemigroupBound,
    default_t_grid,
    expm,
    resolvent_power,
    semigroup_bound,
)

__all__ = [
    "DEFAULT_TOL",
    "PerturbationPair",
    "Constants",
    "ConditionReport",
    "make_pair",
    "default_lambda_grid",
    "dyadic_t_grid",
    "gap",
    "minimal_c2",
    "minimal_c1",
    "check_condition_a",
    "check_condition_b",
    "check_condition_c",
    "propagate_constants",
    "induction_bound_check",
    "kernel_bound_check",
    "verify_theorem_loop",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PerturbationPair:
    space: MeasureSpace
    A0: Generator
    A: Generator
    bound: SemigroupBound

    def __post_init__(self):
        if self.A0.space != self.space or self.A.space != self.space:
            raise InvalidArgumentError("A0 and A must live on the pair's space")

    @property
    def M(self) -> float:
        return self.bound.M

    @property
    def omega(self) -> float:
        return self.bound.omega

    @property
    def difference(self) -> np.ndarray:
        return np.asarray(self.A.entries) - np.asarray(self.A0.entries)


def make_pair(A0: Operator, A: Operator, override=None, t_grid=None) -> PerturbationPair:
    """Build a pair whose bound covers both ``exp(tA)`` and ``exp(tA0)*``.

    Without ``override`` the bound is the max-combination of the L1
    log-norm bounds of ``A`` and ``adjoint(A0)``.  An override is validated
    against both semigroups.
    """
    space = A0.space
    if A.space != space:
        raise InvalidArgumentError("A0 and A must live on the same space")
    A0 = Generator.from_operator(A0)
    A = Generator.from_operator(A)
    A0_star = adjoint(space, A0)
    if override is None:
        bound = semigroup_bound(A).combine(semigroup_bound(A0_star))
    else:
        bound = semigroup_bound(A, override, t_grid)
        semigroup_bound(A0_star, bound, t_grid)
    return PerturbationPair(space, A0, A, bound)


@dataclass(frozen=True)
class Constants:
    C1: float
    C2: float
    C3: float


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one entrywise check over a grid.

    ``witness`` is ``(grid_value, row, col)`` of the largest slack with
    0-based indices; ``grid_value`` is ``None`` for condition (b).
    ``slacks`` holds the worst slack per grid point.
    """

    condition: str
    constant_used: float
    grid: list = field(default_factory=list)
    worst_slack: float = -math.inf
    witness: tuple = (None, 0, 0)
    passed: bool = True
    tolerance: float = DEFAULT_TOL
    slacks: list = field(default_factory=list)

    def to_dict(self) -> dict:
        grid_value, row, col = self.witness
        return {
            "condition": self.condition,
            "constant_used": self.constant_used,
            "grid": list(self.grid),
            "worst_slack": self.worst_slack,
            "witness": {"grid_value": grid_value, "row": row, "col": col},
            "pass": self.passed,
            "tolerance": self.tolerance,
            "slacks": list(self.slacks),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConditionReport":
        w = d["witness"]
        return cls(
            condition=d["condition"],
            constant_used=d["constant_used"],
            grid=list(d["grid"]),
            worst_slack=d["worst_slack"],
            witness=(w["grid_value"], w["row"], w["col"]),
            passed=d["pass"],
            tolerance=d["tolerance"],
            slacks=list(d.get("slacks", [])),
        )


def default_lambda_grid(omega, step=0.1, count=100):
    """``[omega + step, omega + 2 step, ..., omega + count step]``."""
    return [omega + step * k for k in range(1, count + 1)]


def dyadic_t_grid(kmax=20):
    """``[1, 1/2, ..., 2^-kmax]``, the refinement towards ``t -> 0``."""
    return [2.0**-k for k in range(kmax + 1)]


def _nonneg(u: Func, name):
    if not u.is_nonnegative():
        raise InvalidArgumentError(f"{name} must be entrywise nonnegative")


def gap(pair: PerturbationPair, u: Func, v: Func) -> float:
    """``<Au, v> - <u, A0* v>`` for nonnegative ``u``, ``v``."""
    _nonneg(u, "u")
    _nonneg(v, "v")
    sp = pair.space
    return inner(sp, pair.A @ u, v) - inner(sp, u, adjoint(sp, pair.A0) @ v)


def _c2_matrix(pair):
    return pair.difference / pair.space.m[np.newaxis, :]


def minimal_c2(pair: PerturbationPair) -> float:
    """Smallest constant in condition (b): ``max_ij (A - A0)_ij / m_j``.

    The gap is bilinear, so its supremum over normalized nonnegative
    ``u``, ``v`` is attained at ``u = e_j / m_j``, ``v = e_i / m_i``.
    May be negative.
    """
    return float(np.max(_c2_matrix(pair)))


def _entrywise_report(condition, constant, grid, slack_mats, tol):
    slacks, worst, witness = [], -math.inf, (None, 0, 0)
    for g, S in zip(grid, slack_mats):
        idx = np.unravel_index(np.argmax(S), S.shape)
        s = float(S[idx])
        slacks.append(s)
        if s > worst:
            worst, witness = s, (g, int(idx[0]), int(idx[1]))
    return ConditionReport(
        condition=condition,
        constant_used=float(constant),
        grid=[float(g) for g in grid],
        worst_slack=worst,
        witness=witness,
        passed=bool(worst <= tol),
        tolerance=float(tol),
        slacks=slacks,
    )


def check_condition_b(pair: PerturbationPair, C2: float, tol: float = DEFAULT_TOL) -> ConditionReport:
    D = _c2_matrix(pair)
    i, j = np.unravel_index(np.argmax(D), D.shape)
    slack = float(D[i, j]) - C2
    return ConditionReport(
        condition="b",
        constant_used=float(C2),
        grid=[],
        worst_slack=slack,
        witness=(None, int(i), int(j)),
        passed=bool(slack <= tol),
        tolerance=float(tol),
        slacks=[],
    )


def _check_grid(values, name):
    for x in values:
        if not math.isfinite(x) or x < 0:
            raise InvalidArgumentError(f"{name} values must be finite and >= 0, got {x}")


def check_condition_a(pair: PerturbationPair, C1: float, t_grid=None, tol: float = DEFAULT_TOL) -> ConditionReport:
    """``exp(tA)_ij <= exp(tA0)_ij + C1 t e^{omega t} m_j + tol`` on ``t_grid``."""
    t_grid = default_t_grid() if t_grid is None else list(t_grid)
    _check_grid(t_grid, "t")
    m = pair.space.m
    mats = (
        np.asarray(expm(pair.A, t).entries)
        - np.asarray(expm(pair.A0, t).entries)
        - C1 * t * math.exp(pair.omega * t) * m[np.newaxis, :]
        for t in t_grid
    )
    return _entrywise_report("a", C1, t_grid, mats, tol)


def _check_lambdas(pair, lambda_grid):
    for lam in lambda_grid:
        if not lam > pair.omega:
            raise InvalidArgumentError(f"lambda={lam} must exceed omega={pair.omega}")


def check_condition_c(pair: PerturbationPair, C3: float, lambda_grid=None, tol: float = DEFAULT_TOL) -> ConditionReport:
    """``R(lam,A)_ij <= R(lam,A0)_ij + C3 / (lam - omega)^2 m_j + tol``."""
    lambda_grid = default_lambda_grid(pair.omega) if lambda_grid is None else list(lambda_grid)
    _check_lambdas(pair, lambda_grid)
    m = pair.space.m
    mats = (
        np.asarray(resolvent_power(pair.A, lam, 1).entries)
        - np.asarray(resolvent_power(pair.A0, lam, 1).entries)
        - C3 / (lam - pair.omega) ** 2 * m[np.newaxis, :]
        for lam in lambda_grid
    )
    return _entrywise_report("c", C3, lambda_grid, mats, tol)


_LOOP = ("a", "b", "c")


def propagate_constants(C: float, start: str, M: float) -> Constants:
    """Fill in the other two constants from the one for condition ``start``.

    Follows the loop ``a -> b -> c -> a`` (``C2 = C1``, ``C3 = C2 M^2``,
    ``C1 = C3 M^2``), keeping the starting constant fixed.
    """
    if M < 1:
        raise InvalidArgumentError(f"M must be >= 1, got {M}")
    if start not in _LOOP:
        raise InvalidArgumentError(f"unknown condition {start!r}")
    vals = {start: float(C)}
    cur = start
    for _ in range(2):
        nxt = _LOOP[(_LOOP.index(cur) + 1) % 3]
        vals[nxt] = vals[cur] if cur == "a" else vals[cur] * M**2
        cur = nxt
    return Constants(C1=vals["a"], C2=vals["b"], C3=vals["c"])


def induction_bound_check(pair: PerturbationPair, C3: float, lam: float, n_max: int, tol: float = DEFAULT_TOL) -> ConditionReport:
    """Resolvent powers: ``R^n_ij <= R0^n_ij + n C3 M^2 / (lam-omega)^(n+1) m_j``.

    The grid of the report is ``[1, ..., n_max]``.
    """
    _check_lambdas(pair, [lam])
    if n_max < 1:
        raise InvalidArgumentError("n_max must be >= 1")
    m = pair.space.m
    d = lam - pair.omega
    R = np.asarray(resolvent_power(pair.A, lam, 1).entries)
    R0 = np.asarray(resolvent_power(pair.A0, lam, 1).entries)
    mats = []
    P, P0 = np.eye(pair.space.n), np.eye(pair.space.n)
    for k in range(1, n_max + 1):
        P, P0 = P @ R, P0 @ R0
        mats.append(P - P0 - k * C3 * pair.M**2 / d ** (k + 1) * m[np.newaxis, :])
    report = _entrywise_report("induction", C3, list(range(1, n_max + 1)), mats, tol)
    return report


def kernel_bound_check(pair: PerturbationPair, C: float, t_grid=None, tol: float = DEFAULT_TOL) -> ConditionReport:
    """Heat kernel comparison ``k_t(i,j) <= k0_t(i,j) + C M^4 e^{omega t} t``.

    Kernels are ``exp(tA)_ij / m_j``.  ``C`` must satisfy condition (b).
    """
    hyp = check_condition_b(pair, C, tol)
    if not hyp.passed:
        raise HypothesisNotSatisfiedError(
            f"C={C} violates condition (b); minimal constant is {minimal_c2(pair)}"
        )
    t_grid = default_t_grid() if t_grid is None else list(t_grid)
    _check_grid(t_grid, "t")
    m = pair.space.m
    mats = (
        (np.asarray(expm(pair.A, t).entries) - np.asarray(expm(pair.A0, t).entries)) / m[np.newaxis, :]
        - C * pair.M**4 * math.exp(pair.omega * t) * t
        for t in t_grid
    )
    return _entrywise_report("kernel", C, t_grid, mats, tol)


def minimal_c1(pair: PerturbationPair, t_grid) -> float:
    """Smallest ``C1`` passing condition (a) with zero tolerance on ``t_grid``.

    ``t = 0`` points carry no information and are skipped.
    """
    m = pair.space.m
    best = -math.inf
    for t in t_grid:
        if t <= 0:
            continue
        Q = (np.asarray(expm(pair.A, t).entries) - np.asarray(expm(pair.A0, t).entries)) / (
            t * math.exp(pair.omega * t) * m[np.newaxis, :]
        )
        best = max(best, float(Q.max()))
    return best


def verify_theorem_loop(pair: PerturbationPair, t_grid=None, lambda_grid=None, tol: float = DEFAULT_TOL):
    """Run the loop b -> c -> a -> b starting from the minimal constant.

    Returns reports for (c) with ``C3 = C2 M^2``, (a) with ``C1 = C2 M^4``
    and (b) again with ``C2 := C1``.  The starting constant is
    ``max(minimal_c2, 0)``: the implications b -> c -> a multiply the
    constant by upper bounds on L1 norms, which is only valid for a
    nonnegative constant.
    """
    c2 = max(minimal_c2(pair), 0.0)
    consts = propagate_constants(c2, "b", pair.M)
    return [
        check_condition_c(pair, consts.C3, lambda_grid, tol),
        check_condition_a(pair, consts.C1, t_grid, tol),
        check_condition_b(pair, consts.C1, tol),
    ]
