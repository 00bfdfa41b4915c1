# Neumann vs periodic Laplacian: the boundary coupling makes the minimal
# constant blow up under refinement, so no uniform constant exists.
from posigroup import Grid1D, check_condition_b, counterexample_pair, minimal_c2

prev = None
for n in (4, 8, 16, 32, 64, 128):
    c2 = minimal_c2(counterexample_pair(Grid1D(n)))
    growth = "" if prev is None else f"x{c2 / prev:.1f}"
    print(f"n={n:4d}  minimal C2 = {c2:12.1f}  n^3 = {n**3:9d}  {growth}")
    prev = c2

# The maximizing pair couples the two ends of the interval: u concentrated
# at the right end, v at the left end.
r = check_condition_b(counterexample_pair(Grid1D(8)), 0.0)
print("witness (row, col):", r.witness[1:])
