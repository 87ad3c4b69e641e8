# The characteristic polynomial from eigenvalues against the finite sum over
# primitive pseudo orbits, at a few random wavenumbers.
import numpy as np

from bqgraph import BinaryGraph
from bqgraph.montecarlo import sample_lengths
from bqgraph.quantum import coeff_via_pseudo_orbits, evolution_map, normalized_coeffs

g = BinaryGraph(3, 1)
L = sample_lengths(g, seed=1)
ks = np.array([1000.3, 2417.9, 5050.5])

a = normalized_coeffs(np.stack([evolution_map(g, L, k) for k in ks]))
for n in range(g.B + 1):
    po_sum = coeff_via_pseudo_orbits(g, L, ks, n)
    print(n, np.round(a[:, n], 6), "max diff %.1e" % np.abs(po_sum - a[:, n]).max())

# |a_n| and |a_{B-n}| agree because U is unitary
print(np.allclose(abs(a), abs(a[:, ::-1])))
