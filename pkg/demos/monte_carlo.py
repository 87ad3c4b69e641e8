# Sampled k-averages of |a_n|^2 against the exact values, then the middle
# coefficient as the graph grows.  Pass a sample count to go bigger.
import sys

from bqgraph import BinaryGraph
from bqgraph.montecarlo import SimulationConfig, convergence_series, estimate_variance, sample_lengths
from bqgraph.variance import asymptotic_variance, variance_exact_pairing

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 20000

g = BinaryGraph(1, 3)
cfg = SimulationConfig(1, 3, seed=42, samples=samples)
est = estimate_variance(g, sample_lengths(g, 42), cfg)
print(f"{samples} samples over {est.spacings_covered:.1e} mean spacings")
for n in range(g.B // 2 + 1):
    exact = variance_exact_pairing(g, n)
    print(f"n={n:2d} exact={str(exact):>5} estimate={est.mean[n]:.4f} +- {est.std_error[n]:.4f}")

# n = B/2 for growing r; the limit is C_p / 2 but small graphs overshoot,
# so the approach is not monotone (p=3 first moves away from 5/8)
for p, rs in [(1, [2, 3, 4]), (3, [1, 2])]:
    pts = convergence_series(p, rs, "1/2")
    print(f"p={p} limit {asymptotic_variance(p)}:", [(pt.r, str(pt.theorem_value)) for pt in pts])
