from fractions import Fraction

import pytest
from hypothesis import given, settings

from poisson_trinomial import matchup, oracle
from poisson_trinomial.errors import SizeExceeded, ValidationError

from conftest import rational_pairs

SYM = [("1/2", "1/4")] * 2


def test_enumerate_single_trial():
    assert oracle.enumerate_pmf(oracle.rational_model([("1/2", "1/4")])).probs == (
        Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))


def test_enumerate_symmetric_pair():
    assert oracle.enumerate_pmf(oracle.rational_model(SYM)).probs == tuple(
        Fraction(c, 16) for c in (1, 4, 6, 4, 1))


def test_enumerate_n12_normalized():
    model = oracle.rational_model([("1/3", "1/3")] * 12)
    probs = oracle.enumerate_pmf(model).probs
    assert len(probs) == 25 and sum(probs) == 1


def test_enumerate_brute_force_by_hand():
    # cross-check the odometer against a naive triple loop
    model = oracle.rational_model([("1/5", "1/2"), ("1/3", "1/6"), ("0", "2/7")])
    naive = [Fraction(0)] * 7
    for x in range(3):
        for y in range(3):
            for z in range(3):
                p = 1
                for (t, w, l), o in zip(model.trials, (x, y, z)):
                    p *= (l, t, w)[o]
                naive[x + y + z] += p
    assert oracle.enumerate_pmf(model).probs == tuple(naive)


def test_size_cap():
    with pytest.raises(SizeExceeded):
        oracle.enumerate_pmf(oracle.rational_model([(0, 0)] * 13))


def test_rational_model_rejects_bad_triple():
    with pytest.raises(ValidationError):
        oracle.rational_model([("1/2", "2/3")])


def test_conditional_means():
    assert oracle.oracle_conditional_means(oracle.rational_model([("1/5", "1/2")])) == (
        Fraction(3, 5), Fraction(5, 8), Fraction(1, 2))
    assert oracle.oracle_conditional_means(oracle.rational_model([(1, 0)])) == (
        Fraction(1, 2), None, Fraction(1, 2))
    assert oracle.oracle_conditional_means(oracle.rational_model(SYM)) == (1, 1, 1)


def test_tail():
    model = oracle.rational_model(SYM)
    assert oracle.oracle_tail(model, 0) == 1
    assert oracle.oracle_tail(model, 3) == Fraction(5, 16)
    assert oracle.oracle_tail(model, 5) == 0
    with pytest.raises(ValidationError):
        oracle.oracle_tail(model, 6)


@settings(max_examples=100, deadline=None)
@given(rational_pairs(n_max=7))
def test_mean_difference_identities_exact(pairs):
    model = oracle.rational_model(pairs)
    probs = oracle.enumerate_pmf(model).probs
    assert oracle.oracle_tail(model, 0) == 1
    mu, me, mo = oracle.oracle_conditional_means(model)
    a = sum((-1) ** h * p for h, p in enumerate(probs))
    b = sum(Fraction(h, 2) * (-1) ** h * p for h, p in enumerate(probs))
    if me is not None and mo is not None:
        assert me - mu == (b - a * mu) / (1 + a)
        assert mo - mu == -(b - a * mu) / (1 - a)
        assert abs(me - mu) <= Fraction(1, 2) and abs(mo - mu) <= Fraction(1, 2)


def test_ordering_optimum_small():
    inst = matchup.make_instance("1/10", "2/5", [1], [1], "1/2")
    assert oracle.oracle_ordering_optimum(inst) == {(1,)}
    inst = matchup.make_instance("1/10", "2/5", [1, 1], [2, 2], 1)
    assert oracle.oracle_ordering_optimum(inst) == {(1, 2), (2, 1)}


def test_ordering_optimum_identity_high_threshold():
    inst = matchup.make_instance("1/10", "2/5", [3, 2, 1.5, 1, 0], [2.5, 2, 1, 0.5, 0], 5)
    mu = Fraction(5, 2) + Fraction(1, 10) * (Fraction(6) - Fraction(15, 2))
    assert Fraction(5) >= mu + Fraction(5, 2)
    assert matchup.identity(5) in oracle.oracle_ordering_optimum(inst)


def test_ordering_cap():
    inst = matchup.make_instance("1/10", "2/5", [0] * 8, [0] * 8, 0)
    with pytest.raises(SizeExceeded):
        oracle.oracle_ordering_optimum(inst)
