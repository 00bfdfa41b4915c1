# Neumann Laplacian plus a bounded symmetric jump kernel: the minimal
# constant is the largest jump intensity, and the heat kernel of the
# perturbed semigroup exceeds the unperturbed one by at most C t.
import numpy as np

from posigroup import (
    Grid1D,
    jump_generator,
    kernel,
    kernel_bound_check,
    expm,
    laplacian_neumann,
    make_pair,
    minimal_c2,
    random_jump_kernel,
)

grid = Grid1D(32)
A0 = laplacian_neumann(grid)
J = random_jump_kernel(grid.space, seed=7, C=2.0)
pair = make_pair(A0, A0 + jump_generator(J))

print("max j =", J.j.max(), " minimal C2 =", minimal_c2(pair), " bound:", pair.bound)

report = kernel_bound_check(pair, 2.0)
print("kernel estimate with C=2:", "pass" if report.passed else "FAIL")

for t in (0.1, 0.5, 1.0, 5.0):
    k = kernel(grid.space, expm(pair.A, t))
    k0 = kernel(grid.space, expm(pair.A0, t))
    excess = (k - k0).max()
    print(f"t={t:4.1f}: max(k_t - k0_t) = {excess:8.4f}  <=  C t = {2.0 * t:5.2f}")

print("perturbed kernel at t=0.05, first row:", np.round(kernel(grid.space, expm(pair.A, 0.05))[0, :6], 4))
