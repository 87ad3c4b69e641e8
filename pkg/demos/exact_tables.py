# Exact variance tables for the 8- and 6-vertex binary graphs.
# Each row shows the set sizes, the counting formula, the independent pairing
# sum over bond-visit classes, and the diagonal approximation.
from bqgraph import BinaryGraph
from bqgraph.tables import render
from bqgraph.variance import variance_table

for p, r, n_max in [(1, 3, 8), (3, 1, 6)]:
    g = BinaryGraph(p, r)
    rows, cols = variance_table(g, n_max)
    print(f"V={g.V}, B={g.B}")
    print(render(rows, cols, "csv"))

# on V=6 the counted sets at n=4 are 6 free and 4 single-crossing pseudo orbits,
# giving (6 + 2*4)/16 = 7/8 from both routes
