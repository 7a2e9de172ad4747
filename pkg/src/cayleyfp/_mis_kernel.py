"""Numba kernels for maximum independent sets in Cayley sum graphs.

The solver searches for a maximum clique in the complement graph H, where
distinct x, y are H-adjacent iff x + y lies outside S.  Row x of H is the set
``S^c - x``, read straight out of a doubled copy of the S^c bit mask at bit
offset x, so adjacency is never materialised.

The search is a BBMC-style bitset branch and bound: candidate sets are
greedily coloured (colour classes are independent sets of H), vertices are
branched on in decreasing colour order, and a branch is cut as soon as
``depth + colour <= best``.  All search state lives in caller-owned arrays so
the kernel can stop after a node quota and be resumed.
"""

import numpy as np
from numba import njit

ST_DEPTH = 0
ST_BEST = 1
ST_NODES = 2
ST_STATUS = 3

RUNNING = 0
DONE = 1
NEED_BUFFER = 2
NEED_DEPTH = 3

_DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)
_DEBRUIJN_TABLE = np.array(
    [
        0, 1, 48, 2, 57, 49, 28, 3, 61, 58, 50, 42, 38, 29, 17, 4,
        62, 55, 59, 36, 53, 51, 43, 22, 45, 39, 33, 30, 24, 18, 12, 5,
        63, 47, 56, 27, 60, 41, 37, 16, 54, 35, 52, 21, 44, 32, 23, 11,
        46, 26, 40, 15, 34, 20, 31, 10, 25, 14, 19, 9, 13, 8, 7, 6,
    ],
    dtype=np.int64,
)


@njit(cache=True, inline="always")
def _ctz(x, table):
    low = x & (~x + np.uint64(1))
    return table[(low * _DEBRUIJN) >> np.uint64(58)]


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True, inline="always")
def _row_word(dmask, x, w):
    q = (x >> 6) + w
    r = x & 63
    if r == 0:
        return dmask[q]
    return (dmask[q] >> np.uint64(r)) | (dmask[q + 1] << np.uint64(64 - r))


@njit(cache=True)
def doubled_mask(words, n):
    """Bits ``j`` in ``[0, 2n)`` set iff bit ``j mod n`` is set in ``words``."""
    nw = words.shape[0]
    out = np.zeros(2 * nw + 2, dtype=np.uint64)
    for w in range(nw):
        out[w] = words[w]
    # append a second copy starting at bit n
    q = n >> 6
    r = n & 63
    for w in range(nw):
        v = words[w]
        if r == 0:
            out[q + w] |= v
        else:
            out[q + w] |= v << np.uint64(r)
            out[q + w + 1] |= v >> np.uint64(64 - r)
    return out


@njit(cache=True)
def _color(cand, nw, dmask, kmin, vbuf, cbuf, off, U, Q, table):
    """Greedy sequential colouring of ``cand``; stores vertices of colour >= kmin.

    Entries are written to ``vbuf/cbuf[off:]`` in nondecreasing colour order.
    """
    cnt = 0
    uw = nw
    for w in range(nw):
        U[w] = cand[w]
        if uw == nw and U[w] != 0:
            uw = w
    k = 0
    while uw < nw:
        k += 1
        for w in range(uw, nw):
            Q[w] = U[w]
        qw = uw
        while True:
            while qw < nw and Q[qw] == 0:
                qw += 1
            if qw == nw:
                break
            b = _ctz(Q[qw], table)
            v = qw * 64 + b
            bit = np.uint64(1) << np.uint64(b)
            U[qw] &= ~bit
            Q[qw] &= ~bit
            for w in range(qw, nw):
                Q[w] &= ~_row_word(dmask, v, w)
            if k >= kmin:
                vbuf[off + cnt] = v
                cbuf[off + cnt] = k
                cnt += 1
        while uw < nw and U[uw] == 0:
            uw += 1
    return cnt


@njit(cache=True, nogil=True)
def mis_init(n, dmask, P, vbuf, cbuf, start, pos, state, table):
    """Set up the root of the search; ``state[ST_BEST]`` must hold the incumbent size."""
    nw = P.shape[1]
    for w in range(nw):
        P[0, w] = np.uint64(0xFFFFFFFFFFFFFFFF)
    tail = n - 64 * (nw - 1)
    if tail < 64:
        P[0, nw - 1] = (np.uint64(1) << np.uint64(tail)) - np.uint64(1)
    U = np.empty(nw, dtype=np.uint64)
    Q = np.empty(nw, dtype=np.uint64)
    if vbuf.shape[0] < n:
        state[ST_STATUS] = NEED_BUFFER
        return
    best = state[ST_BEST]
    cnt = _color(P[0], nw, dmask, best + 1, vbuf, cbuf, 0, U, Q, table)
    start[0] = 0
    start[1] = cnt
    pos[0] = cnt - 1
    state[ST_DEPTH] = 0
    state[ST_STATUS] = RUNNING


@njit(cache=True, nogil=True)
def mis_run(n, dmask, P, vbuf, cbuf, start, pos, clique, best_set, state, node_quota, table):
    """Advance the search by at most ``node_quota`` nodes.

    Level ``d`` owns ``P[d]`` (candidates), branch entries
    ``[start[d], start[d+1])`` and cursor ``pos[d]``; ``clique[d]`` is the
    vertex chosen at level ``d``.
    """
    nw = P.shape[1]
    U = np.empty(nw, dtype=np.uint64)
    Q = np.empty(nw, dtype=np.uint64)
    maxdepth = P.shape[0] - 1
    bufcap = vbuf.shape[0]
    depth = state[ST_DEPTH]
    best = state[ST_BEST]
    nodes = state[ST_NODES]
    limit = nodes + node_quota
    status = RUNNING
    while True:
        if nodes >= limit:
            break
        d = depth
        if pos[d] < start[d]:
            if d == 0:
                status = DONE
                break
            depth -= 1
            continue
        i = pos[d]
        v = vbuf[i]
        if d + cbuf[i] <= best:
            pos[d] = start[d] - 1
            continue
        if d + 1 >= maxdepth:
            status = NEED_DEPTH
            break
        cnt_new = 0
        vw = v >> 6
        vbit = np.uint64(1) << np.uint64(v & 63)
        P[d, vw] &= ~vbit
        for w in range(nw):
            t = P[d, w] & _row_word(dmask, v, w)
            P[d + 1, w] = t
            cnt_new += _popcount(t)
        if start[d + 1] + cnt_new > bufcap:
            P[d, vw] |= vbit
            status = NEED_BUFFER
            break
        pos[d] -= 1
        clique[d] = v
        nodes += 1
        if cnt_new == 0:
            if d + 1 > best:
                best = d + 1
                for j in range(d + 1):
                    best_set[j] = clique[j]
            continue
        kmin = best - (d + 1) + 1
        cnt = _color(P[d + 1], nw, dmask, kmin, vbuf, cbuf, start[d + 1], U, Q, table)
        start[d + 2] = start[d + 1] + cnt
        pos[d + 1] = start[d + 1] + cnt - 1
        depth = d + 1
    state[ST_DEPTH] = depth
    state[ST_BEST] = best
    state[ST_NODES] = nodes
    state[ST_STATUS] = status


@njit(cache=True, nogil=True)
def greedy_clique(n, dmask, nw, restarts, seed, out, table):
    """Randomised greedy clique in H; returns its size, members in ``out``.

    Restart 0 always takes the candidate with most H-neighbours among the
    remaining candidates (lowest index on ties); later restarts pick their
    first vertex uniformly at random and then proceed the same way.
    """
    cand = np.empty(nw, dtype=np.uint64)
    cur = np.empty(n, dtype=np.int64)
    best = 0
    s = np.uint64(seed) | np.uint64(1)
    for rep in range(restarts):
        for w in range(nw):
            cand[w] = np.uint64(0xFFFFFFFFFFFFFFFF)
        tail = n - 64 * (nw - 1)
        if tail < 64:
            cand[nw - 1] = (np.uint64(1) << np.uint64(tail)) - np.uint64(1)
        size = 0
        first = True
        while True:
            any_left = False
            for w in range(nw):
                if cand[w] != 0:
                    any_left = True
                    break
            if not any_left:
                break
            pick = -1
            if first and rep > 0:
                s ^= s << np.uint64(13)
                s ^= s >> np.uint64(7)
                s ^= s << np.uint64(17)
                target = np.int64(s % np.uint64(n))
                # first candidate at or after target, cyclically
                for off in range(n):
                    x = (target + off) % n
                    if (cand[x >> 6] >> np.uint64(x & 63)) & np.uint64(1):
                        pick = x
                        break
            else:
                best_deg = -1
                for w in range(nw):
                    word = cand[w]
                    while word != 0:
                        b = _ctz(word, table)
                        word &= word - np.uint64(1)
                        x = w * 64 + b
                        deg = 0
                        for w2 in range(nw):
                            deg += _popcount(cand[w2] & _row_word(dmask, x, w2))
                        if deg > best_deg:
                            best_deg = deg
                            pick = x
            first = False
            cur[size] = pick
            size += 1
            cand[pick >> 6] &= ~(np.uint64(1) << np.uint64(pick & 63))
            for w in range(nw):
                cand[w] &= _row_word(dmask, pick, w)
        if size > best:
            best = size
            for j in range(size):
                out[j] = cur[j]
    return best
