"""Freiman isomorphisms and Freiman dimension.

The dimension is computed from the additive quadruples of a set: with
``m = |A|`` and ``r`` the rational rank of the relation vectors
``e_i + e_j - e_k - e_l``, the universal Freiman model of ``A`` spans an
affine space of dimension ``m - 1 - r``.  A nonempty set is given dimension
at least 1.

:func:`freiman_dimension_oracle` reaches the same number by a different road:
it searches integer boxes for an explicit full-rank model and confirms the
isomorphism by brute force over bijections.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, NamedTuple, Sequence, Union

import numpy as np

from .errors import ParameterError, RefusalError
from .zn import ZnSet, doubling_sigma

DEFAULT_DIMENSION_CAP = 64
ORACLE_MAX_SIZE = 6
ROBUST_SUBSET_CAP = 10**6

Point = Union[int, tuple]
SetLike = Union[ZnSet, Sequence[Point]]


class QuadrupleRelation(NamedTuple):
    """``a[i] + a[j] == a[k] + a[l]`` with ``i <= j``, ``k <= l``, ``(i, j) < (k, l)``."""

    i: int
    j: int
    k: int
    l: int


@dataclass(frozen=True)
class RobustnessParams:
    epsilon: float
    beta: float

    def __post_init__(self):
        if not (0 < self.epsilon < 1 and 0 < self.beta < 1):
            raise ParameterError("epsilon and beta must lie strictly between 0 and 1")


def _canonical(A: SetLike):
    """Sorted element list and the pair-sum function of the ambient group."""
    if isinstance(A, ZnSet):
        n = A.n
        return A.members(), lambda x, y: (x + y) % n
    elems = sorted(set(A))
    if elems and isinstance(elems[0], tuple):
        return elems, lambda x, y: tuple(a + b for a, b in zip(x, y))
    return elems, lambda x, y: x + y


def _sum_classes(elems, add) -> dict[Hashable, list[tuple[int, int]]]:
    classes: dict[Hashable, list[tuple[int, int]]] = {}
    m = len(elems)
    for i in range(m):
        for j in range(i, m):
            classes.setdefault(add(elems[i], elems[j]), []).append((i, j))
    return classes


def additive_quadruples(A: SetLike) -> list[QuadrupleRelation]:
    """Every nontrivial relation ``a_i + a_j = a_k + a_l`` among elements of A.

    Indices refer to the elements of ``A`` in increasing order.
    """
    elems, add = _canonical(A)
    out = []
    for pairs in _sum_classes(elems, add).values():
        for p, q in itertools.combinations(pairs, 2):
            out.append(QuadrupleRelation(*p, *q))
    out.sort()
    return out


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix by fraction-free elimination.

    Each new row is reduced against the stored echelon rows with the
    two-term update ``piv * row - row[c] * basis`` and then divided by the
    gcd of its entries, so all arithmetic stays in the integers.
    """
    basis: list[tuple[int, list[int]]] = []
    for row in rows:
        r = list(row)
        for col, b in basis:
            if r[col]:
                piv = b[col]
                f = r[col]
                r = [piv * x - f * y for x, y in zip(r, b)]
                g = math.gcd(*r)
                if g > 1:
                    r = [x // g for x in r]
        lead = next((c for c, x in enumerate(r) if x), None)
        if lead is not None:
            basis.append((lead, r))
    return len(basis)


def relation_rank(A: SetLike) -> int:
    elems, add = _canonical(A)
    m = len(elems)
    rows = []
    # within one sum class, differences against the first pair span all relations
    for pairs in _sum_classes(elems, add).values():
        i0, j0 = pairs[0]
        for i, j in pairs[1:]:
            v = [0] * m
            v[i0] += 1
            v[j0] += 1
            v[i] -= 1
            v[j] -= 1
            rows.append(v)
    return integer_rank(rows)


def freiman_dimension(A: SetLike, cap: int = DEFAULT_DIMENSION_CAP) -> int:
    m = len(A)
    if m == 0:
        raise ParameterError("Freiman dimension of the empty set is undefined")
    if m > cap:
        raise RefusalError(f"|A| = {m} exceeds the dimension cap {cap}")
    return max(m - 1 - relation_rank(A), 1)


def are_freiman_isomorphic(A: SetLike, B: SetLike) -> bool:
    """Brute force over all bijections between the two sets."""
    ea, add_a = _canonical(A)
    eb, add_b = _canonical(B)
    if len(ea) != len(eb):
        return False
    m = len(ea)
    rel_a = set(additive_quadruples(A))
    if len(rel_a) != len(additive_quadruples(B)):
        return False
    for perm in itertools.permutations(range(m)):
        image = [eb[perm[t]] for t in range(m)]
        if all(
            (add_b(image[i], image[j]) == add_b(image[k], image[l]))
            for i, j, k, l in rel_a
        ) and _relation_count(image, add_b) == len(rel_a):
            return True
    return False


def _relation_count(points, add) -> int:
    return sum(len(p) * (len(p) - 1) // 2 for p in _sum_classes(points, add).values())


def _coefficients(rel: QuadrupleRelation) -> dict[int, int]:
    c: dict[int, int] = {}
    for idx in (rel.i, rel.j):
        c[idx] = c.get(idx, 0) + 1
    for idx in (rel.k, rel.l):
        c[idx] = c.get(idx, 0) - 1
    return {k: v for k, v in c.items() if v}


def _pin_plan(order, coeffs):
    """For each position in ``order``, the relation that pins it (or None)."""
    placed = {0}
    plan = []
    for v in order:
        pin = None
        for rel in coeffs:
            if v in rel and all(u in placed for u in rel if u != v):
                pin = rel
                break
        plan.append(pin)
        placed.add(v)
    return plan


def _box_points(d: int, box: int, canonical: bool):
    rng = range(-box, box + 1)
    pts = [p for p in itertools.product(rng, repeat=d) if any(p)]
    if canonical:
        # coordinate permutations and sign flips preserve the box and the origin
        pts = [p for p in pts if all(x >= 0 for x in p) and list(p) == sorted(p, reverse=True)]
    pts.sort(key=lambda p: (sum(abs(x) for x in p), [-x for x in p]))
    return pts


def _find_model(m, rels, d, box):
    """Labelled full-rank model of the relation pattern in Z^d, or None.

    Element 0 sits at the origin.  Elements pinned by an already-placed
    relation are solved for; the others range over ``[-box, box]^d``.
    """
    coeffs = [_coefficients(r) for r in rels]
    rel_set = set(rels)
    best_order, best_plan, best_free = None, None, None
    for order in itertools.permutations(range(1, m)):
        plan = _pin_plan(order, coeffs)
        free = sum(p is None for p in plan)
        if best_free is None or free < best_free:
            best_order, best_plan, best_free = order, plan, free
    if best_free < d:
        return None
    free_after = [sum(p is None for p in best_plan[t + 1:]) for t in range(m - 1)]

    pos = {0: (0,) * d}
    pair_sums: dict[tuple, list[tuple[int, int]]] = {(0,) * d: [(0, 0)]}
    first_free = best_plan.index(None) if None in best_plan else -1
    boxes = {True: _box_points(d, box, True), False: _box_points(d, box, False)}

    def consistent(v, y):
        new = []
        for u, yu in list(pos.items()) + [(v, y)]:
            s = tuple(a + b for a, b in zip(y, yu))
            pair = (min(u, v), max(u, v))
            for q in pair_sums.get(s, ()):
                lo, hi = min(pair, q), max(pair, q)
                if QuadrupleRelation(*lo, *hi) not in rel_set:
                    return None
            new.append((s, pair))
        # new pairs among themselves
        seen: dict[tuple, tuple] = {}
        for s, pair in new:
            if s in seen:
                lo, hi = min(pair, seen[s]), max(pair, seen[s])
                if QuadrupleRelation(*lo, *hi) not in rel_set:
                    return None
            seen[s] = pair
        # every relation whose members are now all placed must hold
        for rel, c in zip(rels, coeffs):
            if v in c and all(u in pos or u == v for u in c):
                total = [0] * d
                for u, cu in c.items():
                    yu = y if u == v else pos[u]
                    for t in range(d):
                        total[t] += cu * yu[t]
                if any(total):
                    return None
        return new

    def rank_of(points):
        if not points:
            return 0
        return int(np.linalg.matrix_rank(np.array(points, dtype=float)))

    def place(t):
        if t == m - 1:
            return rank_of(list(pos.values())) == d
        v = best_order[t]
        pin = best_plan[t]
        if pin is not None:
            c = pin
            cv = c[v]
            acc = [0] * d
            for u, cu in c.items():
                if u != v:
                    for k in range(d):
                        acc[k] -= cu * pos[u][k]
            if any(a % cv for a in acc):
                return False
            candidates = [tuple(a // cv for a in acc)]
        else:
            candidates = boxes[t == first_free]
        for y in candidates:
            if y in pos.values():
                continue
            new = consistent(v, y)
            if new is None:
                continue
            pos[v] = y
            if rank_of(list(pos.values())) + free_after[t] >= d:
                for s, pair in new:
                    pair_sums.setdefault(s, []).append(pair)
                if place(t + 1):
                    return True
                for s, pair in new:
                    pair_sums[s].remove(pair)
            del pos[v]
        return False

    if place(0):
        return [pos[i] for i in range(m)]
    return None


def freiman_dimension_oracle(A: SetLike, box: int = 4, max_size: int = ORACLE_MAX_SIZE) -> int:
    """Freiman dimension by exhaustive search for explicit integer models.

    Tries ``d = |A| - 1, ..., 1`` and returns the first ``d`` for which a
    full-rank subset of ``Z^d`` Freiman isomorphic to ``A`` turns up; free
    coordinates range over ``[-box, box]``.  Every model found is re-checked
    with :func:`are_freiman_isomorphic`.  Falls back to 1 when no model exists.
    """
    elems, _ = _canonical(A)
    m = len(elems)
    if m == 0:
        raise ParameterError("Freiman dimension of the empty set is undefined")
    if m > max_size:
        raise RefusalError(f"oracle is limited to |A| <= {max_size}, got {m}")
    if m <= 2:
        return 1
    rels = additive_quadruples(A)
    for d in range(m - 1, 0, -1):
        model = _find_model(m, rels, d, box)
        if model is not None:
            if d == 1:
                model = [p[0] for p in model]
            if not are_freiman_isomorphic(A, model):
                raise AssertionError(f"search produced a non-isomorphic model {model}")
            return d
    return 1


def check_dimension_vs_doubling(A: ZnSet, cap: int = DEFAULT_DIMENSION_CAP) -> tuple[Fraction, int, bool]:
    """``(K, d, d < 2K)`` with ``K = |A+A|/|A|`` and ``d`` the Freiman dimension."""
    K = doubling_sigma(A)
    d = freiman_dimension(A, cap)
    return K, d, d < 2 * K


def min_subset_size(size: int, epsilon: float) -> int:
    """Smallest ``s >= 1`` with ``s >= (1 - epsilon) * size``."""
    return max(1, math.ceil((1 - epsilon) * size - 1e-12))


def count_large_subsets(size: int, epsilon: float) -> int:
    lo = min_subset_size(size, epsilon)
    return sum(math.comb(size, s) for s in range(lo, size + 1))


def is_freiman_robust(X: ZnSet, params: RobustnessParams, cap: int = ROBUST_SUBSET_CAP) -> bool:
    """Whether every ``X' <= X`` with ``|X'| >= (1-eps)|X|`` keeps ``dim >= (1-beta) dim X``."""
    m = len(X)
    if m == 0:
        raise ParameterError("robustness of the empty set is undefined")
    total = count_large_subsets(m, params.epsilon)
    if total > cap:
        raise RefusalError(f"{total} subsets exceed the enumeration cap {cap}")
    members = X.members()
    floor_dim = (1 - params.beta) * freiman_dimension(X)
    for s in range(min_subset_size(m, params.epsilon), m):
        for sub in itertools.combinations(members, s):
            if freiman_dimension(ZnSet.from_iterable(X.n, sub)) < floor_dim:
                return False
    return True
