"""Deterministic Miller-Rabin for 64-bit integers."""

from __future__ import annotations

from typing import Optional

# the first twelve primes settle every n < 3.18e23, far beyond 64 bits
_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def compositeness_witness(n: int) -> Optional[int]:
    """A base proving ``n`` composite, or None when ``n`` is prime.

    For ``n < 2`` the value ``n`` itself is returned; for even ``n > 2``
    the witness is 2.
    """
    if n < 2:
        return n
    for q in _BASES:
        if n == q:
            return None
        if n % q == 0:
            return q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return a
    return None


def is_prime(n: int) -> bool:
    return compositeness_witness(n) is None
