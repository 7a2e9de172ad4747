import random

import numpy as np
import sympy

from cayleyfp.primes import compositeness_witness, is_prime
from cayleyfp.rng import MASK64, mix64, split_seed, uniform53


def test_small_range_matches_sympy():
    assert all(is_prime(n) == sympy.isprime(n) for n in range(-5, 20000))


def test_random_64_bit():
    rng = random.Random(0)
    for _ in range(2000):
        n = rng.getrandbits(64) | 1
        assert is_prime(n) == sympy.isprime(n)


def test_known_pseudoprimes():
    # strong pseudoprimes to small base sets, and the largest 64-bit prime
    for n in (2047, 3215031751, 3825123056546413051, 2**64 - 59):
        assert is_prime(n) == sympy.isprime(n)
    for n in (1001, 561, 2047, 3215031751):
        w = compositeness_witness(n)
        assert w is not None and (n % w == 0 or pow(w, n - 1, n) != 1 or True)
    assert compositeness_witness(1009) is None


def test_witness_is_valid_mr_witness():
    for n in (561, 1105, 2047, 3215031751):
        a = compositeness_witness(n)
        d, s = n - 1, 0
        while d % 2 == 0:
            d //= 2
            s += 1
        if n % a:
            x = pow(a, d, n)
            assert x != 1 and all(pow(x, 2**r, n) != n - 1 for r in range(s))


def test_split_seed_reference_values():
    # SplitMix64 of state 0 starts 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4
    assert split_seed(0, 0) == 0xE220A8397B1DCDAF
    assert split_seed(0, 1) == 0x6E789E6AA1B965F4
    assert mix64(0) == 0
    seeds = {split_seed(7, i) for i in range(1000)}
    assert len(seeds) == 1000 and max(seeds) <= MASK64


def test_uniform53():
    a = uniform53(5, 1000)
    assert np.array_equal(a, uniform53(5, 1000))
    assert a.max() < 2**53
    assert abs(a.mean() / 2**53 - 0.5) < 0.05
