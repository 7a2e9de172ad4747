"""Fingerprints: small subsets whose restricted sumset is already large.

The pipeline runs in four stages:

1. :func:`robust_subset` shrinks ``A`` to a subset ``X`` whose Freiman
   dimension survives the removal of any small fraction of its elements.
2. :func:`phase_one` peels off disjoint translate covers ``T_1, ..., T_l``
   of ``X`` found by :func:`find_fingerprint`.
3. :func:`phase_two` adds elements of ``X`` greedily until the restricted
   sumset of the union reaches the target.
4. The result is padded from ``X`` to the prescribed size.

The constants of the underlying existence results are asymptotic, so every
target is recorded next to the achieved value instead of being asserted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ParameterError, RefusalError
from .freiman import (
    DEFAULT_DIMENSION_CAP,
    count_large_subsets,
    freiman_dimension,
    min_subset_size,
)
from .zn import ZnSet, doubling_sigma, restricted_sumset, rotate, sumset

EXHAUSTIVE_CAP = 10**6
SUBSET_CAP = 10**6


@dataclass(frozen=True)
class GreedyTrace:
    picks: tuple[int, ...]
    gains: tuple[int, ...]


def _coverage_order(candidates: list[int], X: ZnSet, limit: int, stop_on_zero: bool):
    """Greedy max-coverage over translates ``a + X``; lowest residue wins ties."""
    n = X.n
    covered = 0
    remaining = list(candidates)
    picks, gains = [], []
    while remaining and len(picks) < limit:
        best_a, best_gain, best_mask = None, -1, 0
        for a in remaining:
            shifted = rotate(X.mask, a, n)
            gain = (shifted & ~covered).bit_count()
            if gain > best_gain:
                best_a, best_gain, best_mask = a, gain, shifted
        if stop_on_zero and best_gain == 0:
            break
        picks.append(best_a)
        gains.append(best_gain)
        covered |= best_mask
        remaining.remove(best_a)
    return picks, gains


def greedy_translate_selection(Tprime: ZnSet, X: ZnSet, t: int) -> tuple[ZnSet, GreedyTrace]:
    """``T <= T'`` of size ``t`` with ``|T + X| >= (t / |T'|) |T' + X|``.

    The trace orders all of ``T'`` by marginal gain; ``T`` is its first ``t``
    picks.
    """
    Tprime._check(X)
    size = len(Tprime)
    if not 1 <= t <= size:
        raise ParameterError(f"t must lie in [1, {size}], got {t}")
    picks, gains = _coverage_order(Tprime.members(), X, size, stop_on_zero=False)
    T = ZnSet.from_iterable(X.n, picks[:t])
    full = len(sumset(Tprime, X))
    if len(sumset(T, X)) * size < t * full:
        raise AssertionError("greedy selection violated the averaging guarantee")
    return T, GreedyTrace(tuple(picks), tuple(gains))


@dataclass(frozen=True)
class FingerprintSearch:
    T: ZnSet
    achieved: int
    target: Optional[float]

    @property
    def ratio(self) -> Optional[float]:
        if self.target is None or self.target <= 0:
            return None
        return self.achieved / self.target


def cover_target(X: ZnSet, a: float, d: Optional[int] = None) -> float:
    """``(1 - a)(d + 1)|X| / 2`` with ``d`` the Freiman dimension of ``X``."""
    if d is None:
        d = freiman_dimension(X)
    return (1 - a) * (d + 1) * len(X) / 2


def find_fingerprint(
    X: ZnSet,
    budget: int,
    mode: str = "greedy",
    a: Optional[float] = None,
    d: Optional[int] = None,
) -> FingerprintSearch:
    """A set ``T <= X`` of at most ``budget`` elements with ``|T + X|`` large.

    ``greedy`` adds translates by largest marginal gain until the budget is
    spent or nothing new is covered; ``exhaustive`` maximises ``|T + X|``
    exactly over all subsets of size ``min(budget, |X|)``.  When ``a`` is
    given the achieved value is reported against ``cover_target(X, a)``.
    """
    if budget < 1:
        raise ParameterError("budget must be at least 1")
    if len(X) == 0:
        raise ParameterError("cannot fingerprint the empty set")
    members = X.members()
    if mode == "greedy":
        picks, _ = _coverage_order(members, X, budget, stop_on_zero=True)
        T = ZnSet.from_iterable(X.n, picks)
    elif mode == "exhaustive":
        size = min(budget, len(members))
        total = math.comb(len(members), size)
        if total > EXHAUSTIVE_CAP:
            raise RefusalError(f"{total} candidate subsets exceed the cap {EXHAUSTIVE_CAP}")
        best, best_T = -1, None
        for combo in itertools.combinations(members, size):
            acc = 0
            for t in combo:
                acc |= rotate(X.mask, t, X.n)
            cov = acc.bit_count()
            if cov > best:
                best, best_T = cov, combo
        T = ZnSet.from_iterable(X.n, best_T)
    else:
        raise ParameterError(f"unknown mode {mode!r}")
    achieved = len(sumset(T, X))
    target = None
    if a is not None and (d is not None or len(X) <= DEFAULT_DIMENSION_CAP):
        target = cover_target(X, a, d)
    return FingerprintSearch(T, achieved, target)


@dataclass(frozen=True)
class RobustSubset:
    X: ZnSet
    rounds: int
    epsilon: float
    L: float
    K: Fraction
    dimensions: tuple[int, ...]


def robust_parameters(A: ZnSet, a: float) -> tuple[Fraction, float, float]:
    """``(K, L, epsilon)`` with ``K = sigma(A)``, ``L = log_{1/(1-a)}(2K)``, ``epsilon = a / L``."""
    if not 0 < a < 1:
        raise ParameterError(f"a must lie in (0, 1), got {a}")
    K = doubling_sigma(A)
    L = math.log(2 * K) / -math.log1p(-a)
    return K, L, a / L


def _dimension_drop(X: ZnSet, epsilon: float, a: float, dim_x: int, cap: int) -> Optional[ZnSet]:
    m = len(X)
    total = count_large_subsets(m, epsilon) - 1
    if total > cap:
        raise RefusalError(f"{total} candidate subsets exceed the cap {cap}")
    members = X.members()
    ceiling = (1 - a) * dim_x
    for s in range(min_subset_size(m, epsilon), m):
        for sub in itertools.combinations(members, s):
            Y = ZnSet.from_iterable(X.n, sub)
            if freiman_dimension(Y) < ceiling:
                return Y
    return None


def robust_subset(A: ZnSet, a: float, cap: int = SUBSET_CAP) -> RobustSubset:
    """Shrink ``A`` until it is ``(a / L, a)``-Freiman-robust.

    While some ``X' <= X`` with ``|X'| >= (1 - eps)|X|`` has dimension below
    ``(1 - a) dim X``, replace ``X`` by the first such subset (smallest size
    first, then lexicographic).
    """
    if len(A) == 0:
        raise ParameterError("A must be nonempty")
    K, L, eps = robust_parameters(A, a)
    X = A
    dims = [freiman_dimension(X)]
    rounds = 0
    while True:
        Y = _dimension_drop(X, eps, a, dims[-1], cap)
        if Y is None:
            break
        X = Y
        dims.append(freiman_dimension(X))
        rounds += 1
    return RobustSubset(X, rounds, eps, L, K, tuple(dims))


@dataclass(frozen=True)
class PhaseOneRound:
    T: ZnSet
    remaining: int
    achieved: int
    target: float


def phase_one(X: ZnSet, a: float, C: int, d: Optional[int] = None) -> list[PhaseOneRound]:
    """Peel ``l = max(1, round(sqrt(|X| / d)))`` disjoint covers off ``X``.

    Round ``i`` runs the greedy :func:`find_fingerprint` on ``X_i`` with
    budget ``2 C d`` and sets ``X_{i+1} = X_i \\ T_i``; the loop stops early
    once ``X_i`` is empty.  Each round records ``|T_i + X_i|`` and the target
    ``(1 - 2a)(d + 1)|X_i| / 2``.
    """
    if len(X) == 0:
        raise ParameterError("X must be nonempty")
    if C < 1:
        raise ParameterError("C must be a positive integer")
    if d is None:
        d = freiman_dimension(X)
    ell = max(1, round(math.sqrt(len(X) / d)))
    rounds = []
    Xi = X
    for _ in range(ell):
        if len(Xi) == 0:
            break
        found = find_fingerprint(Xi, 2 * C * d, "greedy")
        rounds.append(
            PhaseOneRound(found.T, len(Xi), found.achieved, (1 - 2 * a) * (d + 1) * len(Xi) / 2)
        )
        Xi = Xi - found.T
    return rounds


@dataclass(frozen=True)
class PhaseTwo:
    added: ZnSet
    gains: tuple[int, ...]
    y_sizes: tuple[int, ...]
    target: float
    increment: float
    target_met: bool
    stalled: bool
    capped: bool


def phase_two(
    F_T: ZnSet,
    X: ZnSet,
    d: int,
    a: float,
    abs_cap: Optional[int] = None,
    size_a: Optional[int] = None,
) -> PhaseTwo:
    """Grow ``Y = F_T +^ F_T`` by the ``x in X`` covering most of ``((F_T - x) + x) \\ Y``.

    Runs until ``|Y| >= (1 - 5a)(d + 1)|A| / 2`` (``|A|`` defaults to
    ``|X|``), no candidate adds anything, or ``abs_cap`` elements were added.
    ``x`` itself is left out of its own translate so that ``Y`` stays inside
    the restricted sumset of ``F_T`` plus the additions.
    """
    F_T._check(X)
    n = X.n
    size_a = len(X) if size_a is None else size_a
    target = (1 - 5 * a) * (d + 1) * size_a / 2
    increment = a / 2 * math.sqrt(d * size_a)
    Y = restricted_sumset(F_T).mask
    added: list[int] = []
    gains: list[int] = []
    sizes = [Y.bit_count()]
    stalled = capped = False
    candidates = X.members()
    while Y.bit_count() < target:
        if abs_cap is not None and len(added) >= abs_cap:
            capped = True
            break
        best_x, best_gain, best_mask = None, 0, 0
        for x in candidates:
            new = rotate(F_T.mask & ~(1 << x), x, n) & ~Y
            g = new.bit_count()
            if g > best_gain:
                best_x, best_gain, best_mask = x, g, new
        if best_x is None:
            stalled = True
            break
        added.append(best_x)
        gains.append(best_gain)
        Y |= best_mask
        sizes.append(Y.bit_count())
    return PhaseTwo(
        ZnSet.from_iterable(n, added),
        tuple(gains),
        tuple(sizes),
        target,
        increment,
        Y.bit_count() >= target,
        stalled,
        capped,
    )


@dataclass
class FingerprintReport:
    A: ZnSet
    a: float
    C: int
    K: Fraction
    X: ZnSet
    d: int
    epsilon: float
    L: float
    robust_rounds: int
    parts: list[ZnSet]
    phase_one_achieved: list[int]
    phase_one_targets: list[float]
    F_T: ZnSet
    F_prime: ZnSet
    padding: ZnSet
    F: ZnSet
    phase_two: PhaseTwo
    achieved: int
    target: float
    size_target: float
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def rounds(self) -> int:
        return len(self.parts)

    @property
    def ratio(self) -> float:
        return self.achieved / self.target if self.target > 0 else math.inf

    def structure_violations(self) -> list[str]:
        out = []
        if not (self.F <= self.X and self.X <= self.A):
            out.append("containment F <= X <= A fails")
        for i, j in itertools.combinations(range(len(self.parts)), 2):
            if (self.parts[i] & self.parts[j]).mask:
                out.append(f"T_{i + 1} and T_{j + 1} intersect")
        union = ZnSet.empty(self.A.n)
        for T in self.parts:
            union = union | T
        if union != self.F_T:
            out.append("F_T is not the union of the parts")
        if self.F != (self.F_T | self.F_prime | self.padding):
            out.append("F is not F_T + F' + padding")
        sizes = self.phase_two.y_sizes
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            out.append("phase II made an addition without growing Y")
        return out

    def to_dict(self) -> dict:
        def members(s: ZnSet) -> list[int]:
            return s.members()

        return {
            "n": self.A.n,
            "A": members(self.A),
            "a": self.a,
            "C": self.C,
            "K": str(self.K),
            "X": members(self.X),
            "d": self.d,
            "epsilon": self.epsilon,
            "L": self.L,
            "robust_rounds": self.robust_rounds,
            "rounds": self.rounds,
            "parts": [members(T) for T in self.parts],
            "phase_one_achieved": self.phase_one_achieved,
            "phase_one_targets": self.phase_one_targets,
            "F_T": members(self.F_T),
            "F_prime": members(self.F_prime),
            "padding": members(self.padding),
            "F": members(self.F),
            "phase_two": {
                **{k: v for k, v in asdict(self.phase_two).items() if k != "added"},
                "added": members(self.phase_two.added),
            },
            "achieved": self.achieved,
            "target": self.target,
            "ratio": self.ratio,
            "size_target": self.size_target,
            "flags": self.flags,
        }


def fingerprint_pipeline(
    A: ZnSet,
    a: float,
    C: int = 1,
    xi: float = 1.0,
    abs_cap: Optional[int] = None,
    subset_cap: int = SUBSET_CAP,
) -> FingerprintReport:
    """Robust subset, phase I, phase II and padding, with every target recorded.

    ``F`` is padded with the smallest unused residues of ``X`` up to
    ``ceil(C' sqrt(d |A|))`` elements, ``C' = C + 2 / a``, capped at ``|X|``.
    """
    if len(A) == 0:
        raise ParameterError("A must be nonempty")
    robust = robust_subset(A, a, subset_cap)
    X = robust.X
    d = freiman_dimension(X)
    rounds = phase_one(X, a, C, d)
    parts = [r.T for r in rounds]
    F_T = ZnSet.empty(A.n)
    for T in parts:
        F_T = F_T | T
    two = phase_two(F_T, X, d, a, abs_cap, size_a=len(A))
    F = F_T | two.added
    size_target = (C + 2 / a) * math.sqrt(d * len(A))
    want = min(math.ceil(size_target - 1e-9), len(X))
    pad = []
    if len(F) < want:
        for x in (X - F):
            pad.append(x)
            if len(F) + len(pad) == want:
                break
    padding = ZnSet.from_iterable(A.n, pad)
    F = F | padding
    K = robust.K
    log_a = math.log(len(A))
    flags = {
        "doubling_hypothesis": log_a == 0 or K <= xi * len(A) / log_a**2,
        "epsilon_regime": robust.epsilon > 4 * C * math.sqrt(K / len(X)),
        "size_capped": size_target > len(X),
        "robust_size_ok": len(X) >= (1 - a) * len(A),
        "phase_two_target_met": two.target_met,
        "phase_two_stalled": two.stalled,
        "phase_two_capped": two.capped,
    }
    return FingerprintReport(
        A=A,
        a=a,
        C=C,
        K=K,
        X=X,
        d=d,
        epsilon=robust.epsilon,
        L=robust.L,
        robust_rounds=robust.rounds,
        parts=parts,
        phase_one_achieved=[r.achieved for r in rounds],
        phase_one_targets=[r.target for r in rounds],
        F_T=F_T,
        F_prime=two.added,
        padding=padding,
        F=F,
        phase_two=two,
        achieved=len(restricted_sumset(F)),
        target=(1 - a) * (d + 1) * len(A) / 2,
        size_target=size_target,
        flags=flags,
    )
