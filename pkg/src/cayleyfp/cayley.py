"""Cayley sum graphs and their exact independence number."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _mis_kernel as K
from .errors import RefusalError
from .zn import ZnSet, restricted_sumset

BRUTE_FORCE_MAX_N = 32
_DIRECT_TABLE_BITS = 24


@dataclass(frozen=True)
class CayleyGraph:
    """Graph on Z_n in which distinct x, y are adjacent iff x + y is in S.

    Adjacency is evaluated on demand; nothing of size n^2 is stored.
    """

    S: ZnSet

    @property
    def n(self) -> int:
        return self.S.n

    def adjacent(self, x: int, y: int) -> bool:
        x %= self.n
        y %= self.n
        return x != y and ((x + y) % self.n) in self.S

    def neighbours(self, x: int) -> ZnSet:
        """``(S - x)`` without ``x`` itself."""
        return self.S.shift(-x).discard(x)

    def degree(self, x: int) -> int:
        return len(self.neighbours(x))


@dataclass(frozen=True)
class MisResult:
    alpha: int
    witness: ZnSet
    node_count: int
    elapsed: float
    exact: bool = True

    @property
    def lower_bound_only(self) -> bool:
        return not self.exact


def is_independent(A: ZnSet, S: ZnSet) -> bool:
    """True iff no two distinct members of ``A`` sum into ``S``."""
    A._check(S)
    return restricted_sumset(A).mask & S.mask == 0


class _Search:
    """Owns the resumable state arrays of one branch-and-bound run."""

    def __init__(self, S: ZnSet, seed: int, restarts: int):
        n = S.n
        self.n = n
        self.nw = (n + 63) // 64
        comp = S.complement()
        self.dmask = K.doubled_mask(comp.to_words(), n)
        self.table = K._DEBRUIJN_TABLE
        incumbent = np.zeros(n, dtype=np.int64)
        size = K.greedy_clique(n, self.dmask, self.nw, restarts, seed, incumbent, self.table)
        self.best_set = np.zeros(n, dtype=np.int32)
        self.best_set[:size] = incumbent[:size]
        depth = 64
        self.P = np.zeros((depth + 1, self.nw), dtype=np.uint64)
        self.vbuf = np.zeros(max(4 * n, 1024), dtype=np.int32)
        self.cbuf = np.zeros_like(self.vbuf)
        self.start = np.zeros(depth + 2, dtype=np.int64)
        self.pos = np.zeros(depth + 1, dtype=np.int64)
        self.clique = np.zeros(depth + 1, dtype=np.int32)
        self.state = np.zeros(4, dtype=np.int64)
        self.state[K.ST_BEST] = size
        K.mis_init(n, self.dmask, self.P, self.vbuf, self.cbuf, self.start, self.pos, self.state, self.table)

    def _grow_depth(self):
        extra = self.P.shape[0]
        self.P = np.concatenate([self.P, np.zeros((extra, self.nw), dtype=np.uint64)])
        self.start = np.concatenate([self.start, np.zeros(extra, dtype=np.int64)])
        self.pos = np.concatenate([self.pos, np.zeros(extra, dtype=np.int64)])
        self.clique = np.concatenate([self.clique, np.zeros(extra, dtype=np.int32)])

    def _grow_buffer(self):
        self.vbuf = np.concatenate([self.vbuf, np.zeros_like(self.vbuf)])
        self.cbuf = np.concatenate([self.cbuf, np.zeros_like(self.cbuf)])

    def step(self, quota: int) -> bool:
        """Run up to ``quota`` nodes; True once the search is exhausted."""
        while True:
            K.mis_run(
                self.n, self.dmask, self.P, self.vbuf, self.cbuf, self.start, self.pos,
                self.clique, self.best_set, self.state, quota, self.table,
            )
            status = self.state[K.ST_STATUS]
            if status == K.NEED_DEPTH:
                self._grow_depth()
            elif status == K.NEED_BUFFER:
                self._grow_buffer()
            else:
                return status == K.DONE

    @property
    def best(self) -> int:
        return int(self.state[K.ST_BEST])

    @property
    def nodes(self) -> int:
        return int(self.state[K.ST_NODES])

    def witness(self) -> ZnSet:
        return ZnSet.from_iterable(self.n, self.best_set[: self.best].tolist())


def independence_number(
    S: ZnSet,
    time_budget: Optional[float] = None,
    node_budget: Optional[int] = None,
    restarts: int = 8,
    seed: int = 0x5EED,
    chunk: int = 50_000,
) -> MisResult:
    """Exact independence number of the Cayley sum graph of ``S``.

    ``time_budget`` (seconds) and ``node_budget`` bound the search; when either
    runs out the best set found so far is returned with ``exact=False``.
    A node budget gives reproducible partial results, a time budget does not.
    """
    t0 = time.perf_counter()
    search = _Search(S, seed, restarts)
    done = False
    while not done:
        quota = chunk
        if node_budget is not None:
            quota = min(quota, node_budget - search.nodes)
            if quota <= 0:
                break
        done = search.step(quota)
        if time_budget is not None and time.perf_counter() - t0 > time_budget:
            break
    witness = search.witness()
    return MisResult(search.best, witness, search.nodes, time.perf_counter() - t0, exact=bool(done))


def _adjacency_rows(S: ZnSet) -> list[int]:
    G = CayleyGraph(S)
    return [G.neighbours(x).mask for x in range(S.n)]


def _independent_table(adj: list[int], bits: int) -> np.ndarray:
    """Boolean table over all subsets of the first ``bits`` vertices."""
    ok = np.ones(1, dtype=bool)
    idx = np.arange(1, dtype=np.int64)
    for v in range(bits):
        low = adj[v] & ((1 << v) - 1)
        ok = np.concatenate([ok, ok & ((idx & low) == 0)])
        idx = np.arange(1 << (v + 1), dtype=np.int64)
    return ok


def _popcount_table(bits: int) -> np.ndarray:
    pc = np.zeros(1, dtype=np.int8)
    for _ in range(bits):
        pc = np.concatenate([pc, pc + 1])
    return pc


def brute_force_alpha(S: ZnSet) -> int:
    """Independence number by checking every one of the 2^n vertex subsets.

    Subsets of the low ``min(n, 24)`` vertices are tabulated at once; any
    remaining high vertices are enumerated explicitly and combined with the
    table.  Refuses ``n > 32``.
    """
    n = S.n
    if n > BRUTE_FORCE_MAX_N:
        raise RefusalError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    adj = _adjacency_rows(S)
    low_bits = min(n, _DIRECT_TABLE_BITS)
    ok = _independent_table(adj, low_bits)
    pc = _popcount_table(low_bits)
    idx = np.arange(1 << low_bits, dtype=np.int64)
    low_full = (1 << low_bits) - 1
    best = 0
    high = n - low_bits
    for h in range(1 << high):
        members = [low_bits + i for i in range(high) if h >> i & 1]
        blocked = 0
        independent = True
        for v in members:
            if adj[v] & (1 << v):
                raise AssertionError("self-loop in adjacency")
            for u in members:
                if u != v and adj[v] >> u & 1:
                    independent = False
            blocked |= adj[v]
        if not independent:
            continue
        allowed = ok & ((idx & (blocked & low_full)) == 0)
        best = max(best, len(members) + int(pc[allowed].max()))
    return best
