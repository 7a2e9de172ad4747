"""Shifted centred generalised arithmetic progressions in Z_n.

A d-GAP is ``{v0 + sum_i n_i v_i : |n_i| <= N_i}``; its size is
``prod(2 N_i + 1)``, an upper bound on its cardinality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError, RefusalError
from .zn import ZnSet, rotate

ENUMERATION_CAP = 10**7


@dataclass(frozen=True)
class Gap:
    n: int
    v0: int
    generators: tuple[int, ...]
    radii: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("modulus must be positive")
        if len(self.generators) != len(self.radii):
            raise ParameterError("need one radius per generator")
        if not self.generators:
            raise ParameterError("a GAP needs at least one generator")
        if any(N < 1 for N in self.radii):
            raise ParameterError("radii must be positive integers")
        object.__setattr__(self, "v0", self.v0 % self.n)
        object.__setattr__(self, "generators", tuple(v % self.n for v in self.generators))
        object.__setattr__(self, "radii", tuple(int(N) for N in self.radii))

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return math.prod(2 * N + 1 for N in self.radii)

    @property
    def centred(self) -> bool:
        return self.v0 == 0

    def to_text(self) -> str:
        """``n;v0;v1,...,vd;N1,...,Nd``"""
        gens = ",".join(map(str, self.generators))
        radii = ",".join(map(str, self.radii))
        return f"{self.n};{self.v0};{gens};{radii}"

    @classmethod
    def from_text(cls, text: str) -> "Gap":
        parts = text.strip().split(";")
        if len(parts) != 4:
            raise ParameterError(f"expected 'n;v0;v1,...,vd;N1,...,Nd', got {text!r}")
        try:
            n = int(parts[0])
            v0 = int(parts[1])
            gens = tuple(int(x) for x in parts[2].split(","))
            radii = tuple(int(x) for x in parts[3].split(","))
        except ValueError as exc:
            raise ParameterError(f"malformed GAP {text!r}: {exc}") from None
        return cls(n, v0, gens, radii)


def gap_elements(P: Gap, cap: int = ENUMERATION_CAP) -> ZnSet:
    """Element set of ``P``, built one generator at a time as a sumset."""
    if P.size > cap:
        raise RefusalError(f"size(P) = {P.size} exceeds the enumeration cap {cap}")
    n = P.n
    mask = 1 << P.v0
    for v, N in zip(P.generators, P.radii):
        acc = 0
        for t in range(-N, N + 1):
            acc |= rotate(mask, t * v, n)
        mask = acc
    return ZnSet(n, mask)


def gap_contains(P: Gap, A: ZnSet, cap: int = ENUMERATION_CAP) -> bool:
    if A.n != P.n:
        raise ParameterError(f"modulus mismatch: {A.n} vs {P.n}")
    return A <= gap_elements(P, cap)


def next_pow2(N: int) -> int:
    return 1 << (N - 1).bit_length()


def normalize_pow2(P: Gap) -> Gap:
    """Round every radius up to a power of two."""
    return Gap(P.n, P.v0, P.generators, tuple(next_pow2(N) for N in P.radii))


def radius_exponent_budget(log_size_budget: float) -> int:
    """Number of doublings available within ``exp(log_size_budget)``: ``floor(log2 budget)``."""
    if log_size_budget < 0:
        raise ParameterError("log size budget must be nonnegative")
    return math.floor(log_size_budget / math.log(2) + 1e-12)


def log_count_gaps(n: int, d: int, log_size_budget: float) -> float:
    """Log of ``n^(d+1) * C(B, d-1)`` with ``B = floor(log2(size budget))``.

    ``n^(d+1)`` counts the base point and generators; the binomial counts the
    ways to distribute the doublings of power-of-two radii over the
    generators.  Returns ``-inf`` when ``d - 1 > B``.
    """
    if d < 1:
        raise ParameterError("dimension must be at least 1")
    if n < 1:
        raise ParameterError("modulus must be positive")
    B = radius_exponent_budget(log_size_budget)
    if d - 1 > B:
        return float("-inf")
    return (d + 1) * math.log(n) + math.log(math.comb(B, d - 1))
