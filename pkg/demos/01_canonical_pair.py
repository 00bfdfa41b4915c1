# Two-point pair: walk once around the b -> c -> a -> b loop of constants.
import numpy as np

from posigroup import (
    canonical_pair,
    check_condition_a,
    check_condition_c,
    gap,
    minimal_c2,
    propagate_constants,
)

pair = canonical_pair()
print("A0 =\n", pair.A0.entries)
print("A  =\n", pair.A.entries)
print("shared growth bound:", pair.bound)

# The generator gap is bilinear; its maximum over normalized nonnegative
# (u, v) sits on a pair of basis vectors.
sp = pair.space
print("gap(e1, e2) =", gap(pair, sp.basis(0), sp.basis(1)))
c2 = minimal_c2(pair)
print("minimal C2 =", c2)

consts = propagate_constants(c2, "b", pair.M)
print("propagated:", consts)

lam_grid = [pair.omega + 0.1 * k for k in range(1, 101)]
rc = check_condition_c(pair, consts.C3, lam_grid)
print(f"(c) with C3={consts.C3}: pass={rc.passed}, worst slack {rc.worst_slack:.4e} at lambda={rc.witness[0]:.2f}")

ra = check_condition_a(pair, consts.C1)
print(f"(a) with C1={consts.C1}: pass={ra.passed}")

# Without any constant the perturbed semigroup is not dominated.
r0 = check_condition_a(pair, 0.0, [1.0])
print(f"(a) with C1=0 at t=1: pass={r0.passed}, worst slack {r0.worst_slack:.4f}")

# With M = 2 the constants pick up M^2 and M^4.
pair2 = canonical_pair(override=(2.0, 0.5))
print("with M=2:", propagate_constants(minimal_c2(pair2), "b", pair2.M))
np.set_printoptions(precision=4)
print("slack of (a) along t (M=1):", np.array(ra.slacks[::10]))
