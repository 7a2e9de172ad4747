"""The three union bounds, evaluated in log space at concrete n.

Candidate independent sets of size k are sorted by doubling constant: tiny
(x1), medium (x2) and linear (x3).  Each class gets its own
count-times-probability sum.  The asymptotic argument needs every sum to
vanish; at desk sizes several do not, and the tables show why.

Run: python demos/05_union_bounds.py
"""
from cayleyfp import BoundParams, bound_report

for n in (1009, 10**4 + 7, 10**6 + 3):
    rep = bound_report(BoundParams(n, 0.5, 0.1))
    sums = ", ".join(
        f"{name}={s.log_sum:8.3f}{' (empty)' if s.empty_range else ''}" for name, s in rep.sums.items()
    )
    print(f"n={n:>8d} k={rep.k:7.3f}  {sums}")

print()
print(bound_report(BoundParams(1009, 0.5, 0.1), ["x3"]).format_table())
