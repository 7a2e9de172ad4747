"""Exact independence numbers, and how the search cost grows with n.

Independent sets of the Cayley sum graph are sets A with A +^ A disjoint
from S.  The solver looks for a maximum clique of the complement by
branch and bound; here it is checked against brute force on small n and
timed on larger ones.

Run: python demos/02_independence_number.py
"""
import math
import time

from cayleyfp import brute_force_alpha, expected_alpha_gnp, independence_number, is_independent, sample_p_random

print("small n, against exhaustive search")
for n in (11, 17, 23):
    S = sample_p_random(n, 0.5, seed=n)
    res = independence_number(S)
    print(f"  n={n:3d} alpha={res.alpha} brute={brute_force_alpha(S)} witness={res.witness.members()}")

print("\ngrowing n, p = 1/2 (one draw each)")
print("     n  alpha  first-moment  alpha/log2 n     nodes    seconds")
for n in (101, 211, 401, 601):
    S = sample_p_random(n, 0.5, seed=1)
    t = time.perf_counter()
    res = independence_number(S)
    dt = time.perf_counter() - t
    assert is_independent(res.witness, S)
    print(f"{n:6d} {res.alpha:6d} {expected_alpha_gnp(n, 0.5):13d} {res.alpha / math.log2(n):13.3f}"
          f" {res.node_count:9d} {dt:10.2f}")

# Past a few hundred vertices the tree explodes; with a budget the solver
# hands back its best set, flagged as a lower bound.
S = sample_p_random(1009, 0.5, seed=1)
res = independence_number(S, time_budget=5.0)
print(f"\nn=1009 with a 5 s budget: alpha >= {res.alpha} (exact={res.exact}, {res.node_count} nodes);"
      f" first-moment value {expected_alpha_gnp(1009, 0.5)}")
