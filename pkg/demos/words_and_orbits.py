# Lyndon words, their factorizations, and the periodic orbits they label.
from bqgraph import BinaryGraph
from bqgraph.orbits import classify, enumerate_po, enumerate_ppo
from bqgraph.words import (Multiset, cfl_decompose, count_lyndon, lyndon_index, lyndon_tuples,
                           lyndon_words, parity_bijection, word_str)

# binary Lyndon words of length 6 and the necklace count
print([word_str(w) for w in lyndon_words(2, 6)], count_lyndon(2, 6))

# every word splits uniquely into non-increasing Lyndon factors
for w in ["0101", "1001", "0110100"]:
    print(w, "->", [word_str(f) for f in cfl_decompose(w)])

# the parity bijection pairs up even and odd tuples over a multiset
M = Multiset([0, 0, 1, 2])
for t in lyndon_tuples(M):
    u = parity_bijection(t)
    print(f"{str(t):>12} index {lyndon_index(t)}  <->  {str(u):>12} index {lyndon_index(u)}")

# on the 8-vertex de Bruijn graph orbits of length n are Lyndon words of length n
g = BinaryGraph(1, 3)
print([o.label() for o in enumerate_po(g, 5)])

# pseudo orbits of length 6 sorted by how they cross themselves
for po in enumerate_ppo(g, 6)[:12]:
    prof = classify(po, g)
    print(f"{po.label():<16} {prof.category:<9} encounters={len(prof.encounters)}")
