"""Scenario builders: 1-D Laplacians, jump kernels, potentials, random generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InvalidArgumentError, UnknownScenarioError
from .measure import Func, MeasureSpace, Operator, l1_operator_norm
from .perturbation import PerturbationPair, make_pair
from .semigroup import Generator

__all__ = [
    "Grid1D",
    "JumpKernel",
    "laplacian_neumann",
    "laplacian_periodic",
    "jump_generator",
    "random_jump_kernel",
    "potential_perturbation",
    "counterexample_pair",
    "canonical_pair",
    "jump_pair",
    "potential_pair",
    "random_space",
    "random_metzler",
    "random_pair",
    "unit_scale",
    "Scenario",
    "SCENARIOS",
    "build_scenario",
]


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform cell-centred grid on the unit interval, cell measure ``h = 1/n``."""

    n: int
    space: MeasureSpace = field(init=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvalidArgumentError(f"grid needs n >= 2 cells, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "space", MeasureSpace.uniform(self.n, 1.0 / self.n))

    @property
    def h(self) -> float:
        return 1.0 / self.n

    @property
    def centers(self) -> np.ndarray:
        return (np.arange(self.n) + 0.5) * self.h


def _second_difference(n):
    L = -2.0 * np.eye(n)
    i = np.arange(n - 1)
    L[i, i + 1] = 1.0
    L[i + 1, i] = 1.0
    return L


def laplacian_neumann(grid: Grid1D) -> Generator:
    """Second differences with reflecting boundary rows ``(-1, 1) / h^2``."""
    L = _second_difference(grid.n)
    L[0, 0] = L[-1, -1] = -1.0
    return Generator(grid.space, L * float(grid.n) ** 2)


def laplacian_periodic(grid: Grid1D) -> Generator:
    """Circulant second differences; the ends are coupled by ``1 / h^2``."""
    if grid.n < 3:
        raise InvalidArgumentError("periodic Laplacian needs n >= 3")
    L = _second_difference(grid.n)
    L[0, -1] = L[-1, 0] = 1.0
    return Generator(grid.space, L * float(grid.n) ** 2)


@dataclass(frozen=True, eq=False)
class JumpKernel:
    """Symmetric jump intensity ``j`` with ``0 <= j <= bound_C``.

    The diagonal carries no jumps and is zeroed on construction.
    """

    space: MeasureSpace
    j: np.ndarray
    bound_C: float

    def __post_init__(self):
        j = np.array(self.j, dtype=float)
        n = self.space.n
        if j.shape != (n, n):
            raise InvalidArgumentError(f"kernel has shape {j.shape}, expected ({n}, {n})")
        if self.bound_C < 0:
            raise InvalidArgumentError("bound_C must be >= 0")
        np.fill_diagonal(j, 0.0)
        if not np.array_equal(j, j.T):
            raise InvalidArgumentError("jump kernel must be symmetric")
        if np.any(j < 0) or np.any(j > self.bound_C):
            raise InvalidArgumentError(f"jump kernel entries must lie in [0, {self.bound_C}]")
        j.setflags(write=False)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "bound_C", float(self.bound_C))


def jump_generator(kernel: JumpKernel) -> Generator:
    """Generator of the form ``1/2 sum_{i,k} (u_i-u_k)(v_i-v_k) j_ik m_i m_k``.

    Off-diagonals are ``j_ik m_k``; each row sums to zero.
    """
    A = kernel.j * kernel.space.m[np.newaxis, :]
    np.fill_diagonal(A, -A.sum(axis=1))
    return Generator(kernel.space, A)


def random_jump_kernel(space: MeasureSpace, seed: int, C: float) -> JumpKernel:
    rng = np.random.default_rng(seed)
    U = rng.uniform(0.0, C, size=(space.n, space.n))
    j = np.triu(U, 1)
    return JumpKernel(space, j + j.T, C)


def potential_perturbation(A0: Operator, V: Func) -> Generator:
    """``A0 + diag(V)`` for a bounded potential ``V >= 0``."""
    if V.space != A0.space:
        raise InvalidArgumentError("potential and generator live on different spaces")
    if not V.is_nonnegative():
        raise InvalidArgumentError("potential must be entrywise nonnegative")
    return Generator(A0.space, np.asarray(A0.entries) + np.diag(V.values))


def counterexample_pair(grid: Grid1D, override=None) -> PerturbationPair:
    """Neumann Laplacian (``A0``) against the periodic one (``A``).

    The difference sits in the corner entries ``1/h^2``, so the minimal
    condition-(b) constant is ``n^3`` and grows without bound.
    """
    return make_pair(laplacian_neumann(grid), laplacian_periodic(grid), override)


def canonical_pair(override=None) -> PerturbationPair:
    """Two-point pair ``A0 = [[-1,1],[1,-1]]``, ``A = [[-1,1.5],[1.5,-1]]``."""
    sp = MeasureSpace.uniform(2)
    A0 = Generator(sp, [[-1.0, 1.0], [1.0, -1.0]])
    A = Generator(sp, [[-1.0, 1.5], [1.5, -1.0]])
    return make_pair(A0, A, override)


def jump_pair(n=32, seed=7, C=2.0, override=None) -> PerturbationPair:
    """Neumann Laplacian perturbed by a seeded jump kernel with values in ``[0, C]``."""
    grid = Grid1D(n)
    A0 = laplacian_neumann(grid)
    A = A0 + jump_generator(random_jump_kernel(grid.space, seed, C))
    return make_pair(A0, A, override)


def potential_pair(n=16, seed=0, scale=1.0, override=None) -> PerturbationPair:
    """Neumann Laplacian plus a seeded potential with values in ``[0, scale]``."""
    grid = Grid1D(n)
    rng = np.random.default_rng(seed)
    A0 = laplacian_neumann(grid)
    V = Func(grid.space, rng.uniform(0.0, scale, size=n))
    return make_pair(A0, potential_perturbation(A0, V), override)


def random_space(n: int, seed: int, low=0.5, high=2.0) -> MeasureSpace:
    rng = np.random.default_rng(seed)
    return MeasureSpace(rng.uniform(low, high, size=n))


def random_metzler(space: MeasureSpace, seed: int, offdiag_scale: float = 1.0) -> Generator:
    """Seeded Metzler matrix with weighted column sums in ``[-scale, scale]``."""
    if offdiag_scale <= 0:
        raise InvalidArgumentError("offdiag_scale must be > 0")
    n, m = space.n, space.m
    rng = np.random.default_rng(seed)
    A = rng.uniform(0.0, offdiag_scale, size=(n, n))
    np.fill_diagonal(A, 0.0)
    col = rng.uniform(-offdiag_scale, offdiag_scale, size=n)
    np.fill_diagonal(A, col - (m @ A) / m)
    return Generator(space, A)


def unit_scale(pair: PerturbationPair) -> PerturbationPair:
    """Rescale time so that ``max(||A||_1, ||A0||_1) = 1``."""
    sp = pair.space
    c = max(l1_operator_norm(sp, pair.A), l1_operator_norm(sp, pair.A0))
    if c == 0:
        return pair
    return make_pair(pair.A0 * (1.0 / c), pair.A * (1.0 / c))


def random_pair(seed: int, max_dim=8, scale=1.0, dominated=False, dim=None, override=None) -> PerturbationPair:
    """Seeded pair on a random weighted space of dimension ``2..max_dim``.

    With ``dominated=True``, ``A <= A0`` entrywise (off-diagonals shrunk,
    diagonal lowered), so the minimal condition-(b) constant is ``<= 0``.
    """
    rng = np.random.default_rng([seed, 0x5EED])
    n = int(dim) if dim is not None else int(rng.integers(2, max_dim + 1))
    s_space, s0, s1 = (int(x) for x in rng.integers(0, 2**31, size=3))
    space = random_space(n, s_space)
    A0 = random_metzler(space, s0, scale)
    if dominated:
        r = np.random.default_rng(s1)
        E = np.asarray(A0.entries)
        off = E * r.uniform(0.0, 1.0, size=(n, n))
        np.fill_diagonal(off, np.diag(E) - r.uniform(0.0, scale, size=n))
        A = Generator(space, off)
    else:
        A = random_metzler(space, s1, scale)
    return make_pair(A0, A, override)


@dataclass(frozen=True)
class Scenario:
    name: str
    builder: Callable[..., PerturbationPair]
    defaults: dict
    description: str


SCENARIOS = {
    s.name: s
    for s in [
        Scenario("canonical", lambda override=None: canonical_pair(override), {},
                 "two-point pair with minimal constant 0.5"),
        Scenario("jump", jump_pair, {"n": 32, "seed": 7, "C": 2.0},
                 "Neumann Laplacian plus a bounded symmetric jump kernel"),
        Scenario("potential", potential_pair, {"n": 16, "seed": 0, "scale": 1.0},
                 "Neumann Laplacian plus a bounded nonnegative potential"),
        Scenario("counterexample", lambda n=8, override=None: counterexample_pair(Grid1D(n), override),
                 {"n": 8}, "Neumann vs periodic Laplacian; no uniform constant"),
        Scenario("random", lambda n=6, seed=0, scale=1.0, override=None:
                 random_pair(seed, scale=scale, dim=n, override=override), {"n": 6, "seed": 0, "scale": 1.0},
                 "random Metzler pair on a random weighted space"),
    ]
}


def build_scenario(name: str, params=None, override=None) -> PerturbationPair:
    """Build the pair for a registered scenario; unknown keys in ``params`` are ignored."""
    try:
        sc = SCENARIOS[name]
    except KeyError:
        raise UnknownScenarioError(
            f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}"
        ) from None
    kwargs = dict(sc.defaults)
    for k in sc.defaults:
        if params and k in params:
            kwargs[k] = params[k]
    if "n" in kwargs:
        kwargs["n"] = int(kwargs["n"])
    if "seed" in kwargs:
        kwargs["seed"] = int(kwargs["seed"])
    return sc.builder(override=override, **kwargs)
