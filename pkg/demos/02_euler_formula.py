# exp(tA) as the limit of (n/t)^n (n/t - A)^{-n}: first-order convergence.
import math

import numpy as np

from posigroup import canonical_pair, euler_approx, expm

A0 = canonical_pair().A0
exact = expm(A0, 1.0).entries

print(f"{'n':>6} {'max error':>12} {'ratio':>8}")
prev = None
for n in [1, 2, 4, 8, 16, 32, 64, 128, 4096]:
    err = np.abs(euler_approx(A0, 1.0, n).entries - exact).max()
    ratio = "" if prev is None else f"{err / prev:8.4f}"
    print(f"{n:>6} {err:12.4e} {ratio}")
    prev = err

# On the eigenvector (1, -1) the approximant is the scalar (1 + 2/n)^{-n}.
for n in (10, 100):
    print(f"n={n}: (1+2/n)^-n - e^-2 = {(1 + 2 / n) ** -n - math.exp(-2):.5f}")
