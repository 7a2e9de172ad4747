"""Subsets of the cyclic group Z_n and their sumsets.

A :class:`ZnSet` stores membership as a Python integer used as a bit vector
(bit ``x`` set iff ``x`` is a member).  Rotations and unions are then single
big-integer operations, so a sumset costs ``O(|A| * n / 64)`` word operations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .errors import ParameterError
from .rng import uniform53


@dataclass(frozen=True)
class ZnSet:
    """An immutable subset of Z_n."""

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"modulus must be positive, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ParameterError("mask has bits outside [0, n)")

    @classmethod
    def from_iterable(cls, n: int, members: Iterable[int]) -> "ZnSet":
        mask = 0
        for m in members:
            m = int(m)
            if not 0 <= m < n:
                raise ParameterError(f"residue {m} outside [0, {n})")
            mask |= 1 << m
        return cls(n, mask)

    @classmethod
    def from_bools(cls, flags: np.ndarray) -> "ZnSet":
        flags = np.asarray(flags, dtype=bool)
        packed = np.packbits(flags, bitorder="little")
        return cls(len(flags), int.from_bytes(packed.tobytes(), "little"))

    @classmethod
    def full(cls, n: int) -> "ZnSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> "ZnSet":
        return cls(n, 0)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.n and bool(self.mask >> x & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def members(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        shown = self.members()
        if len(shown) > 12:
            body = ", ".join(map(str, shown[:12])) + ", ..."
        else:
            body = ", ".join(map(str, shown))
        return f"ZnSet(n={self.n}, {{{body}}})"

    def _check(self, other: "ZnSet") -> None:
        if self.n != other.n:
            raise ParameterError(f"modulus mismatch: {self.n} vs {other.n}")

    def __or__(self, other: "ZnSet") -> "ZnSet":
        self._check(other)
        return ZnSet(self.n, self.mask | other.mask)

    def __and__(self, other: "ZnSet") -> "ZnSet":
        self._check(other)
        return ZnSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "ZnSet") -> "ZnSet":
        self._check(other)
        return ZnSet(self.n, self.mask & ~other.mask)

    def __le__(self, other: "ZnSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def complement(self) -> "ZnSet":
        return ZnSet(self.n, ((1 << self.n) - 1) ^ self.mask)

    def add(self, x: int) -> "ZnSet":
        return ZnSet(self.n, self.mask | 1 << (x % self.n))

    def discard(self, x: int) -> "ZnSet":
        return ZnSet(self.n, self.mask & ~(1 << (x % self.n)))

    def shift(self, c: int) -> "ZnSet":
        """The translate ``c + self``."""
        return ZnSet(self.n, rotate(self.mask, c, self.n))

    def scale(self, c: int) -> "ZnSet":
        """The dilate ``{c * x}``; not injective unless gcd(c, n) = 1."""
        return ZnSet.from_iterable(self.n, ((c * x) % self.n for x in self))

    def to_bools(self) -> np.ndarray:
        nbytes = (self.n + 7) // 8
        raw = np.frombuffer(self.mask.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.n].astype(bool)

    def to_words(self, extra: int = 0) -> np.ndarray:
        """Little-endian uint64 words of the mask, padded with ``extra`` zero words."""
        nwords = (self.n + 63) // 64 + extra
        return np.frombuffer(self.mask.to_bytes(8 * nwords, "little"), dtype="<u8").astype(np.uint64)


def rotate(mask: int, c: int, n: int) -> int:
    """Bit mask of ``{x + c mod n : x in mask}``."""
    c %= n
    if c == 0:
        return mask
    full = (1 << n) - 1
    return ((mask << c) | (mask >> (n - c))) & full


def sample_p_random(n: int, p: float, seed: int) -> ZnSet:
    """Include each residue of Z_n independently with probability ``p``.

    Residue ``x`` is kept iff the ``x``-th 53-bit output of Philox(seed) is
    below ``p * 2**53``, so the result depends only on ``(n, p, seed)``.
    """
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    if not 0.0 < p < 1.0:
        raise ParameterError(f"p must lie in (0, 1), got {p}")
    u = uniform53(seed, n)
    return ZnSet.from_bools(u < p * 2.0**53)


def sumset(A: ZnSet, B: ZnSet) -> ZnSet:
    A._check(B)
    if len(A) > len(B):
        A, B = B, A
    out = 0
    for a in A:
        out |= rotate(B.mask, a, A.n)
    return ZnSet(A.n, out)


def restricted_sumset(A: ZnSet) -> ZnSet:
    """``{a + a' : a, a' in A, a != a'}``."""
    out = 0
    for a in A:
        out |= rotate(A.mask & ~(1 << a), a, A.n)
    return ZnSet(A.n, out)


def doubling_sigma(A: ZnSet) -> Fraction:
    """Exact doubling constant ``|A + A| / |A|``."""
    if len(A) == 0:
        raise ParameterError("doubling constant of the empty set is undefined")
    return Fraction(len(sumset(A, A)), len(A))


class DoublingLabel(enum.Enum):
    X1 = "X1"
    X2 = "X2"
    X3 = "X3"


@dataclass(frozen=True)
class DoublingClass:
    label: DoublingLabel
    sigma: Fraction
    k: float


def classify_sigma(sigma: Fraction, k: float, delta: float) -> DoublingLabel:
    if k <= 0 or delta <= 0:
        raise ParameterError("k and delta must be positive")
    if sigma < k**0.25:
        return DoublingLabel.X1
    if sigma < delta * k / 10:
        return DoublingLabel.X2
    return DoublingLabel.X3


def classify_doubling(A: ZnSet, k: float, delta: float) -> DoublingClass:
    """Small (X1), medium (X2) or linear (X3) doubling relative to ``k``.

    X1 iff sigma < k^(1/4); X2 iff k^(1/4) <= sigma < delta*k/10; X3 otherwise.
    Fractions compare exactly against floats, so boundary cases are decided
    without rounding.
    """
    sigma = doubling_sigma(A)
    return DoublingClass(classify_sigma(sigma, k, delta), sigma, float(k))

