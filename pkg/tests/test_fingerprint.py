import json
import math
import random

import pytest

from cayleyfp.errors import ParameterError, RefusalError
from cayleyfp.fingerprint import (
    find_fingerprint,
    fingerprint_pipeline,
    greedy_translate_selection,
    phase_one,
    phase_two,
    robust_parameters,
    robust_subset,
)
from cayleyfp.freiman import RobustnessParams, freiman_dimension, is_freiman_robust
from cayleyfp.zn import ZnSet, restricted_sumset, sumset


def Z(n, *xs):
    return ZnSet.from_iterable(n, xs)


def test_selection_examples():
    T, trace = greedy_translate_selection(Z(7, 0, 1), Z(7, 0, 1, 2), 1)
    assert len(sumset(T, Z(7, 0, 1, 2))) == 3
    assert trace.gains == (3, 1)

    T, _ = greedy_translate_selection(Z(7, 0, 1), Z(7, 0, 1, 2), 2)
    assert T == Z(7, 0, 1)

    T, _ = greedy_translate_selection(Z(100, 0, 3), Z(100, 0, 1), 1)
    assert T == Z(100, 0)
    with pytest.raises(ParameterError):
        greedy_translate_selection(Z(7, 0, 1), Z(7, 0), 3)


def test_selection_guarantee_random():
    rng = random.Random(2)
    for _ in range(300):
        n = rng.choice([31, 101, 257])
        Tp = Z(n, *rng.sample(range(n), rng.randint(1, 8)))
        X = Z(n, *rng.sample(range(n), rng.randint(1, 30)))
        t = rng.randint(1, len(Tp))
        T, trace = greedy_translate_selection(Tp, X, t)
        assert len(sumset(T, X)) * len(Tp) >= t * len(sumset(Tp, X))
        assert list(trace.gains) == sorted(trace.gains, reverse=True)
        assert sum(trace.gains) == len(sumset(Tp, X))


def test_find_fingerprint_examples():
    res = find_fingerprint(Z(101, 0, 1, 3), 2, "exhaustive", a=0.1)
    assert res.T == Z(101, 0, 1) and res.achieved == 5
    assert res.target == pytest.approx(4.05)
    assert res.achieved >= res.target

    assert find_fingerprint(Z(101, 0), 1).achieved == 1

    res = find_fingerprint(Z(101, *range(10)), 2, "greedy", a=0.1)
    assert res.achieved >= 11 and res.target == pytest.approx(9)


def test_exhaustive_is_optimal_and_capped():
    rng = random.Random(9)
    for _ in range(30):
        X = Z(61, *rng.sample(range(61), 7))
        best = find_fingerprint(X, 3, "exhaustive").achieved
        assert best >= find_fingerprint(X, 3, "greedy").achieved
    with pytest.raises(RefusalError):
        find_fingerprint(Z(1009, *range(40)), 20, "exhaustive")


def test_robust_subset_examples():
    r = robust_subset(Z(1009, 0, 1, 2, 3), 0.3)
    assert r.X == Z(1009, 0, 1, 2, 3) and r.rounds == 0

    sidon = Z(1009, 0, 1, 3, 7, 12)
    r = robust_subset(sidon, 0.5)
    assert r.epsilon < 1 / 5 and r.X == sidon and r.rounds == 0


def test_robust_subset_with_dimension_drops():
    # an AP plus two stray points: dropping the strays collapses the dimension
    A = Z(1009, 0, 1, 2, 3, 4, 5, 100, 300)
    r = robust_subset(A, 0.6)
    assert r.rounds >= 1
    assert r.rounds <= math.ceil(r.L)
    assert is_freiman_robust(r.X, RobustnessParams(r.epsilon, 0.6))


def test_phase_one_examples():
    rounds = phase_one(Z(1009, *range(16)), 0.2, 2)
    assert len(rounds) == 4
    parts = [r.T for r in rounds]
    for i in range(4):
        for j in range(i):
            assert not (parts[i] & parts[j]).mask

    rounds = phase_one(Z(1009, 5), 0.2, 1)
    assert len(rounds) == 1 and rounds[0].T == Z(1009, 5)

    sidon = Z(1009, 0, 1, 3, 7, 12, 20)
    assert freiman_dimension(sidon) == 5
    rounds = phase_one(sidon, 0.1, 1)
    assert len(rounds) == 1 and rounds[0].T == sidon


def test_phase_two_examples():
    two = phase_two(Z(101, 0, 1), Z(101, 0, 1, 2, 3), 1, 0.01)
    assert two.target == pytest.approx(0.95 * 2 * 4 / 2)
    assert two.y_sizes[0] == 1 and two.y_sizes[-1] >= 4
    assert two.target_met and not two.stalled

    # target met at the start: nothing is added
    two = phase_two(Z(101, *range(6)), Z(101, *range(6)), 1, 0.19)
    assert len(two.added) == 0 and two.target_met

    # X = F_T: every gain is zero, so the loop stalls at once
    two = phase_two(Z(101, 0, 1, 3), Z(101, 0, 1, 3), 2, 0.0)
    assert two.stalled and len(two.added) == 0


def test_pipeline_examples():
    rep = fingerprint_pipeline(Z(1009, *range(16)), 0.2)
    assert rep.d == 1 and rep.F <= rep.X <= rep.A
    assert rep.structure_violations() == []
    assert rep.achieved == len(restricted_sumset(rep.F))

    rep = fingerprint_pipeline(Z(1009, 0, 1, 3, 7, 12), 0.3)
    assert rep.d == 4
    assert rep.target == pytest.approx(8.75)
    assert rep.achieved <= 10

    rep = fingerprint_pipeline(Z(1009, 42), 0.1)
    assert rep.F == rep.X == rep.A and rep.achieved == 0


def test_report_serialises():
    rep = fingerprint_pipeline(Z(1009, 0, 2, 5, 11, 17, 40), 0.1)
    data = json.loads(json.dumps(rep.to_dict()))
    assert data["F"] == rep.F.members()
    assert set(data["flags"]) >= {"doubling_hypothesis", "epsilon_regime"}


def test_robust_parameters():
    K, L, eps = robust_parameters(Z(101, 0, 1, 2), 0.5)
    assert L == pytest.approx(math.log(10 / 3) / math.log(2))
    assert eps == pytest.approx(0.5 / L)
    with pytest.raises(ParameterError):
        robust_parameters(Z(101, 0), 1.0)
