"""Numerical verification of perturbation bounds for positive matrix semigroups."""

from .errors import (
    ConfigError,
    HypothesisNotSatisfiedError,
    InvalidArgumentError,
    InvalidBoundError,
    ResolventUndefinedError,
    ScenarioNumericError,
    UnknownScenarioError,
)
from .measure import (
    Func,
    MeasureSpace,
    Operator,
    adjoint,
    form_value,
    inner,
    kernel,
    l1_operator_norm,
    norm_l1,
)
from .models import (
    SCENARIOS,
    Grid1D,
    JumpKernel,
    build_scenario,
    canonical_pair,
    counterexample_pair,
    jump_generator,
    jump_pair,
    laplacian_neumann,
    laplacian_periodic,
    potential_pair,
    potential_perturbation,
    random_jump_kernel,
    random_metzler,
    random_pair,
    unit_scale,
)
from .perturbation import (
    ConditionReport,
    Constants,
    PerturbationPair,
    check_condition_a,
    check_condition_b,
    check_condition_c,
    gap,
    induction_bound_check,
    kernel_bound_check,
    make_pair,
    minimal_c1,
    minimal_c2,
    propagate_constants,
    verify_theorem_loop,
)
from .semigroup import (
    Generator,
    SemigroupBound,
    check_positivity_generator,
    euler_approx,
    expm,
    l1_log_norm,
    resolvent,
    semigroup_bound,
)

__version__ = "0.1.0"
