# Random Metzler pairs: the loop of conditions closes on every pair, and
# pairs with A <= A0 entrywise recover plain domination.
import numpy as np

from posigroup import expm, minimal_c2, random_pair, verify_theorem_loop

results = []
for seed in range(50):
    pair = random_pair(seed)
    reports = verify_theorem_loop(pair, tol=1e-8)
    results.append((pair.space.n, minimal_c2(pair), all(r.passed for r in reports)))

dims, c2s, ok = zip(*results)
print(f"{sum(ok)}/{len(ok)} pairs close the loop; dims {min(dims)}..{max(dims)}, "
      f"minimal C2 in [{min(c2s):.2f}, {max(c2s):.2f}]")

pair = random_pair(3, dominated=True)
print("dominated pair, minimal C2 =", minimal_c2(pair))
worst = max((expm(pair.A, t).entries - expm(pair.A0, t).entries).max() for t in np.linspace(0, 5, 51))
print("max over t of exp(tA) - exp(tA0):", worst)
