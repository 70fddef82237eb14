from fractions import Fraction

import pytest
from hypothesis import strategies as st

from poisson_trinomial.distribution import build_model

ACCEPTANCE_LINES = []


@st.composite
def rational_pairs(draw, n_min=1, n_max=8, max_denominator=64, ties=True):
    """(T, W) pairs on a rational grid with T + W <= 1."""
    n = draw(st.integers(n_min, n_max))
    pairs = []
    for _ in range(n):
        d = draw(st.integers(1, max_denominator))
        t = draw(st.integers(0, d)) if ties else 0
        w = draw(st.integers(0, d - t))
        pairs.append((Fraction(t, d), Fraction(w, d)))
    return pairs


@st.composite
def models(draw, **kwargs):
    return build_model(draw(rational_pairs(**kwargs)))


@pytest.fixture
def symmetric_pair():
    return build_model([("1/2", "1/4"), ("1/2", "1/4")])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
