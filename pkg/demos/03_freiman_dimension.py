"""Freiman dimension: how many independent directions a set really uses.

Two routes to the same number.  The fast one counts additive relations
a + b = c + d and takes a rank; the slow one hunts for an explicit model
in Z^d and checks it pair-sum by pair-sum.

Run: python demos/03_freiman_dimension.py
"""
import random

from cayleyfp import ZnSet, additive_quadruples, freiman_dimension, freiman_dimension_oracle
from cayleyfp.freiman import check_dimension_vs_doubling

examples = {
    "progression": [0, 1, 2, 3, 4],
    "two blocks": [0, 1, 2, 40, 41],
    "grid 2x3": [0, 1, 2, 30, 31, 32],
    "Sidon": [0, 1, 3, 7, 12],
}
for name, xs in examples.items():
    A = ZnSet.from_iterable(101, xs)
    rels = additive_quadruples(A)
    print(f"{name:12s} {xs}  relations={len(rels):2d}  dim={freiman_dimension(A)}"
          f"  oracle={freiman_dimension_oracle(A)}")

# Dimension is always below twice the doubling constant.
rng = random.Random(0)
worst = 0.0
for _ in range(300):
    A = ZnSet.from_iterable(1009, rng.sample(range(1009), rng.randint(3, 20)))
    K, d, ok = check_dimension_vs_doubling(A)
    assert ok
    worst = max(worst, float(d / (2 * K)))
print(f"\nlargest d / 2K over 300 random sets: {worst:.3f}")
