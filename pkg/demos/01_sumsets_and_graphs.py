"""Sets in Z_n, their sumsets, and the Cayley sum graph they define.

Run: python demos/01_sumsets_and_graphs.py
"""
from cayleyfp import CayleyGraph, ZnSet, doubling_sigma, restricted_sumset, sample_p_random, sumset

# A short progression barely grows when added to itself...
ap = ZnSet.from_iterable(101, range(8))
print("AP        ", ap, " |A+A| =", len(sumset(ap, ap)), " sigma =", doubling_sigma(ap))

# ...while a Sidon set gets every pairwise sum separately.
sidon = ZnSet.from_iterable(101, [0, 1, 3, 7, 12, 20, 30, 44])
print("Sidon     ", sidon, " |A+A| =", len(sumset(sidon, sidon)), " sigma =", doubling_sigma(sidon))

# Restricted sums skip a + a.
print("A +^ A for {0,1,2} in Z_7:", restricted_sumset(ZnSet.from_iterable(7, [0, 1, 2])))

# A p-random S is a fixed function of (n, p, seed).
S = sample_p_random(31, 0.5, seed=2024)
print("\nS =", S)
G = CayleyGraph(S)
print("x ~ y iff x + y in S; degree of each vertex:")
print([G.degree(x) for x in range(S.n)])
# vertices with 2x in S lose a neighbour, since the graph has no loops
print("vertices with 2x in S:", [x for x in range(S.n) if (2 * x) % S.n in S])
