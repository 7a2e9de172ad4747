"""Fingerprints: a few elements whose pairwise sums already cover a lot.

For a set A of Freiman dimension d the restricted sumset of A has roughly
(d+1)|A|/2 elements or more.  The pipeline looks for F inside A of size
about sqrt(d|A|) that gets close to that on its own, and records how close.

Run: python demos/04_fingerprints.py
"""
import json

from cayleyfp import ZnSet, fingerprint_pipeline

for name, xs in {
    "progression": list(range(16)),
    "two blocks": list(range(8)) + list(range(300, 308)),
    "Sidon": [0, 1, 3, 7, 12, 20, 30, 44],
}.items():
    A = ZnSet.from_iterable(1009, xs)
    rep = fingerprint_pipeline(A, a=0.2)
    print(f"{name:12s} |A|={len(A):2d} d={rep.d} |X|={len(rep.X):2d} rounds={rep.rounds}"
          f" |F|={len(rep.F):2d} |F+^F|={rep.achieved:3d} target={rep.target:6.1f} ratio={rep.ratio:.2f}")
    assert not rep.structure_violations()

# The full report is plain JSON.
rep = fingerprint_pipeline(ZnSet.from_iterable(1009, [0, 1, 3, 7, 12]), a=0.3)
print(json.dumps(rep.to_dict(), indent=1)[:600], "...")
