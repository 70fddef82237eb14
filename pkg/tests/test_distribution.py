from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from poisson_trinomial import distribution as dist
from poisson_trinomial import oracle
from poisson_trinomial.errors import ValidationError

from conftest import models


def test_build_model_derives_loss():
    m = dist.build_model([(0.5, 0.25)])
    assert m.n == 1
    assert m.trials[0].loss_prob == 0.25


def test_build_model_certain_win():
    m = dist.build_model([(0, 1)])
    assert m.trials[0].loss_prob == 0.0


@pytest.mark.parametrize("pairs, where", [
    ([(0.3, 0.8)], "trial 0"),
    ([(0.1, 0.1), (-0.2, 0.1)], "trial 1"),
    ([(0.1, 0.1), (0.1, "x")], "trial 1"),
])
def test_build_model_rejects(pairs, where):
    with pytest.raises(ValidationError, match=where):
        dist.build_model(pairs)


def test_build_model_clamps_serialization_noise():
    m = dist.build_model([(0.5, 0.5 + 1e-13), (-1e-13, 0.25)])
    assert m.exact[0] == (Fraction(1, 2), Fraction(1, 2), 0)
    assert m.exact[1][0] == 0


def test_build_model_keeps_decimal_strings_exact():
    m = dist.build_model([("0.2", "1/3")])
    assert m.exact[0] == (Fraction(1, 5), Fraction(1, 3), Fraction(7, 15))


def test_empty_model_rejected():
    with pytest.raises(ValidationError):
        dist.build_model([])


@pytest.mark.parametrize("pairs, expected", [
    ([(0.5, 0.25)], [0.25, 0.5, 0.25]),
    ([(0.5, 0.25)] * 2, np.array([1, 4, 6, 4, 1]) / 16),
    ([(0, 0.5)] * 2, [0.25, 0, 0.5, 0, 0.25]),
])
def test_pmf_examples(pairs, expected):
    np.testing.assert_allclose(dist.pmf(dist.build_model(pairs)).probs, expected, rtol=0, atol=1e-15)


def test_pmf_examples_match_enumeration():
    for pairs in ([("1/2", "1/4")] * 2, [(0, "1/2")] * 2):
        exact = oracle.enumerate_pmf(oracle.rational_model(pairs)).probs
        got = dist.pmf(dist.build_model(pairs)).probs
        assert max(abs(float(e) - g) for e, g in zip(exact, got)) <= 1e-12


@pytest.mark.parametrize("pairs, expected", [
    ([(0.5, 0.25)], 0.5),
    ([(0.2, 0.5)], 0.6),
    ([(0, 0)] * 3, 0.0),
])
def test_mean(pairs, expected):
    assert dist.mean(dist.build_model(pairs)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("pairs, expected", [
    ([(0.3, 0.1), (0.5, 0.2)], 0.0),
    ([(0.2, 0.1)], 0.6),
    ([(0.2, 0.1), (0.9, 0.0)], -0.48),
])
def test_alternating_a(pairs, expected):
    assert dist.alternating_a(dist.build_model(pairs)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("pairs, expected", [
    ([(0.2, 0.5)], 0.4),
    ([(0.5, 0.25)], 0.0),
    ([(0.2, 0.5), (0, 0)], 0.4),
])
def test_alternating_b(pairs, expected):
    assert dist.alternating_b(dist.build_model(pairs)) == pytest.approx(expected, abs=1e-15)


def test_b_minus_a_mu_examples():
    direct, lemma = dist.b_minus_a_mu(dist.build_model([(0.2, 0.5)]))
    assert direct == pytest.approx(0.04, abs=1e-15)
    assert lemma == pytest.approx(0.04, abs=1e-15)
    assert dist.b_minus_a_mu(dist.build_model([(0.5, 0.25)])) == (0.0, 0.0)


def test_moment_report_single_trial():
    r = dist.moment_report(dist.build_model([(0.2, 0.5)]))
    assert (r.mu, r.a, r.b) == pytest.approx((0.6, 0.6, 0.4), abs=1e-15)
    assert r.mu_even == pytest.approx(0.625, abs=1e-15)
    assert r.mu_odd == pytest.approx(0.5, abs=1e-15)
    mu, me, mo = oracle.oracle_conditional_means(oracle.rational_model([("1/5", "1/2")]))
    assert (mu, me, mo) == (Fraction(3, 5), Fraction(5, 8), Fraction(1, 2))


def test_moment_report_symmetric_and_certain_tie():
    r = dist.moment_report(dist.build_model([(0.5, 0.25)]))
    assert (r.mu, r.a, r.b, r.mu_even, r.mu_odd) == (0.5, 0.0, 0.0, 0.5, 0.5)
    r = dist.moment_report(dist.build_model([(1, 0)]))
    assert r.a == -1 and r.mass_even == 0 and r.mu_even is None
    assert r.mu_odd == 0.5


def test_detect_degenerate():
    form = dist.detect_degenerate(dist.build_model([(0, 0.5), (0, 0.3), (1, 0)]))
    assert form.k == 2 and form.shift == 0.5 and form.bernoulli_probs == (0.5, 0.3)
    assert dist.detect_degenerate(dist.build_model([(0.5, 0.1), (0, 0.3)])) is None
    m = dist.build_model([(1, 0), (1, 0)])
    form = dist.detect_degenerate(m)
    assert form.k == 0 and form.shift == 1.0
    np.testing.assert_array_equal(dist.pmf(m).probs, [0, 0, 1, 0, 0])


def test_tiny_tie_is_not_degenerate():
    m = dist.build_model([(1e-9, 0.5)])
    assert dist.detect_degenerate(m) is None
    r = dist.moment_report(m)
    assert r.mu_even is not None and r.mu_odd is not None


@settings(max_examples=150, deadline=None)
@given(models(n_max=8))
def test_pmf_matches_enumeration(model):
    exact = oracle.enumerate_pmf(oracle.rational_model(model)).probs
    got = dist.pmf(model).probs
    assert max(abs(float(e) - g) for e, g in zip(exact, got)) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(models(n_max=12))
def test_moment_invariants(model):
    probs = dist.pmf(model).probs
    h = np.arange(len(probs))
    assert abs(probs.sum() - 1) <= 1e-12
    r = dist.moment_report(model)
    assert abs(r.mu - np.dot(h / 2, probs)) <= 1e-10
    assert abs(r.a - np.dot((-1.0) ** h, probs)) <= 1e-10
    assert abs(r.b - np.dot((-1.0) ** h * h / 2, probs)) <= 1e-10
    direct, lemma = dist.b_minus_a_mu(model)
    assert abs(direct - lemma) <= 1e-12
    assert abs(r.b_minus_a_mu) <= (1 - abs(r.a)) / 2 + 1e-12
    assert (r.mu_even is not None) == (r.mass_even > 0)
    assert (r.mu_odd is not None) == (r.mass_odd > 0)
    if r.mu_even is not None and r.mu_odd is not None:
        assert abs(r.mass_even - (1 + r.a) / 2) <= 1e-12
        assert abs(r.mu_even - r.mu - r.b_minus_a_mu / (1 + r.a)) <= 1e-12
        assert abs(r.mu_odd - r.mu + r.b_minus_a_mu / (1 - r.a)) <= 1e-12
        assert abs(r.mu_even - r.mu) <= 0.5 + 1e-9
        assert abs(r.mu_odd - r.mu) <= 0.5 + 1e-9
        assert abs(r.mu_even - r.mu_odd) <= 1 + 1e-9


@settings(max_examples=200, deadline=None)
@given(models(n_max=10))
def test_degeneracy_dichotomy(model):
    form = dist.detect_degenerate(model)
    probs = dist.pmf(model).probs
    structural = all(t in (0, 1) for t, _, _ in model.exact)
    assert (form is not None) == structural
    if form is not None:
        np.testing.assert_allclose(dist.degenerate_pmf(form, model.n), probs, rtol=0, atol=1e-12)
        assert min(probs[0::2].sum(), probs[1::2].sum()) == 0


def test_model_json_roundtrip():
    m = dist.build_model([("1/3", "1/6"), (0.25, 0.5)])
    again = dist.model_from_json(m.to_json())
    assert again == m


def test_model_json_missing_field():
    with pytest.raises(ValidationError, match="'w'"):
        dist.model_from_json({"trials": [{"t": 0.1}]})
