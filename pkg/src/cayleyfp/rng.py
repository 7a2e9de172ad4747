"""Seed handling.

Sampling uses numpy's Philox4x64 counter-based generator keyed directly by the
64-bit seed, so a given seed produces the same stream on every platform.
Per-trial seeds are derived with the SplitMix64 finalizer:

    z = (master + (index + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def split_seed(master_seed: int, index: int) -> int:
    """Seed for stream ``index`` derived from ``master_seed``."""
    if index < 0:
        raise ValueError("stream index must be nonnegative")
    return mix64((master_seed & MASK64) + (index + 1) * GOLDEN_GAMMA)


def uniform53(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of Philox keyed by ``seed``, as 53-bit integers."""
    bitgen = np.random.Philox(key=seed & MASK64)
    return bitgen.random_raw(count) >> np.uint64(11)
