import math

import pytest

from cayleyfp.errors import ParameterError, RefusalError
from cayleyfp.gap import Gap, gap_contains, gap_elements, log_count_gaps, normalize_pow2
from cayleyfp.zn import ZnSet


def Z(n, *xs):
    return ZnSet.from_iterable(n, xs)


P1 = Gap(100, 0, (2,), (3,))


def test_elements_examples():
    assert gap_elements(P1).members() == [0, 2, 4, 6, 94, 96, 98]
    assert gap_elements(Gap(100, 17, (0,), (5,))) == Z(100, 17)
    assert gap_elements(Gap(5, 0, (1,), (2,))) == ZnSet.full(5)


def test_two_dimensional_elements():
    P = Gap(1009, 3, (1, 100), (1, 2))
    expected = {(3 + a + 100 * b) % 1009 for a in range(-1, 2) for b in range(-2, 3)}
    assert set(gap_elements(P)) == expected
    assert P.size == 15 and P.dimension == 2 and not P.centred


def test_contains_examples():
    assert gap_contains(P1, Z(100, 0, 2, 4))
    assert not gap_contains(P1, Z(100, 1))
    assert gap_contains(P1, ZnSet.empty(100))


def test_normalize_examples():
    assert normalize_pow2(Gap(100, 0, (1, 2), (3, 5))).radii == (4, 8)
    assert normalize_pow2(Gap(100, 0, (1, 2, 3), (1, 2, 4))).radii == (1, 2, 4)
    Q = normalize_pow2(P1)
    assert gap_elements(P1) <= gap_elements(Q)
    assert len(gap_elements(Q)) == 9


def test_log_count_examples():
    n = 1009
    assert log_count_gaps(n, 1, 5.0) == pytest.approx(2 * math.log(n))
    assert log_count_gaps(n, 2, 10 * math.log(2)) == pytest.approx(3 * math.log(n) + math.log(10))
    assert log_count_gaps(n, 5, math.log(4)) == float("-inf")


def test_text_roundtrip_and_errors():
    P = Gap(1009, -1, (1, -100), (1, 2))
    assert P.v0 == 1008 and P.generators == (1, 909)
    assert Gap.from_text(P.to_text()) == P
    with pytest.raises(ParameterError):
        Gap.from_text("100;0;2")
    with pytest.raises(ParameterError):
        Gap(100, 0, (1,), (0,))
    with pytest.raises(RefusalError):
        gap_elements(Gap(10**9, 0, (1, 2), (10**4, 10**4)))
