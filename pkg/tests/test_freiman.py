import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cayleyfp.errors import ParameterError, RefusalError
from cayleyfp.freiman import (
    QuadrupleRelation,
    RobustnessParams,
    additive_quadruples,
    are_freiman_isomorphic,
    check_dimension_vs_doubling,
    freiman_dimension,
    freiman_dimension_oracle,
    integer_rank,
    is_freiman_robust,
)
from cayleyfp.zn import ZnSet


def Z(n, *xs):
    return ZnSet.from_iterable(n, xs)


def test_quadruple_examples():
    assert additive_quadruples([0, 1, 2]) == [QuadrupleRelation(0, 2, 1, 1)]
    assert additive_quadruples([0, 1, 3]) == []
    assert additive_quadruples(Z(101, 0, 1, 3)) == []
    assert additive_quadruples([5]) == []


def test_quadruples_wrap_modulo_n():
    # 3 + 4 = 0 + 0 only modulo 7
    assert QuadrupleRelation(0, 0, 1, 2) in additive_quadruples(Z(7, 0, 3, 4))


@pytest.mark.parametrize(
    "A, d", [([0, 1, 2], 1), ([0, 1, 3], 2), ([0, 1], 1), ([0, 1, 2, 3], 1), ([0, 1, 3, 7], 3), ([7], 1)]
)
def test_dimension_examples(A, d):
    assert freiman_dimension(Z(101, *A)) == d
    assert freiman_dimension_oracle(Z(101, *A)) == d


def test_dimension_errors():
    with pytest.raises(ParameterError):
        freiman_dimension(ZnSet.empty(11))
    with pytest.raises(RefusalError):
        freiman_dimension(ZnSet.full(101), cap=64)
    with pytest.raises(RefusalError):
        freiman_dimension_oracle(Z(101, *range(7)))


def test_two_dimensional_set():
    # a 3x3 grid embedded with a large second generator is 2-dimensional
    grid = [x + 20 * y for x in range(3) for y in range(3)]
    assert freiman_dimension(Z(1009, *grid)) == 2
    assert freiman_dimension([(x, y) for x in range(3) for y in range(3)]) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=12, unique=True))
def test_integer_rank_matches_numpy(seed_values):
    rng = random.Random(sum(seed_values))
    rows = [[rng.randint(-3, 3) for _ in range(len(seed_values))] for _ in range(rng.randint(1, 8))]
    assert integer_rank(rows) == np.linalg.matrix_rank(np.array(rows, dtype=float))


def test_isomorphism():
    assert are_freiman_isomorphic([0, 1, 2], [5, 8, 11])
    assert not are_freiman_isomorphic([0, 1, 2], [0, 1, 3])
    assert are_freiman_isomorphic([0, 1, 3], [(0, 0), (1, 0), (0, 1)])


def test_dilation_invariance():
    rng = random.Random(11)
    checked = 0
    for _ in range(200):
        A = Z(101, *rng.sample(range(101), rng.randint(2, 9)))
        c = rng.randrange(1, 101)
        B = A.scale(c)
        if len(additive_quadruples(A)) == len(additive_quadruples(B)):
            assert freiman_dimension(A) == freiman_dimension(B)
            checked += 1
    assert checked > 100


def test_dimension_below_twice_doubling_random():
    rng = random.Random(4)
    for _ in range(100):
        A = Z(1009, *rng.sample(range(1009), rng.randint(3, 20)))
        K, d, holds = check_dimension_vs_doubling(A)
        assert holds and d < 2 * K


def test_robustness_examples():
    assert is_freiman_robust(Z(101, 0, 1, 2, 3), RobustnessParams(0.3, 0.5))
    assert is_freiman_robust(Z(101, 0, 1, 3, 7, 12), RobustnessParams(0.1, 0.01))
    assert not is_freiman_robust(Z(101, 0, 1, 3, 7), RobustnessParams(0.25, 0.1))


def test_robust_params_validation():
    with pytest.raises(ParameterError):
        RobustnessParams(0.0, 0.5)


def test_oracle_agrees_on_small_sets():
    rng = random.Random(8)
    for _ in range(40):
        A = Z(53, *rng.sample(range(53), rng.randint(1, 5)))
        assert freiman_dimension(A) == freiman_dimension_oracle(A)


def test_oracle_agrees_on_six_element_aps_and_unions():
    for A in ([0, 1, 2, 3, 4, 5], [0, 1, 2, 10, 11, 12], [0, 2, 4, 5, 7, 9]):
        assert freiman_dimension(Z(101, *A)) == freiman_dimension_oracle(Z(101, *A))
