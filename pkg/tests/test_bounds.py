import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from monomarkov.bounds import (
    baselines,
    bernstein_constant,
    bernstein_qazi,
    bound_function,
    classify_winner,
    constant_row,
    constant_table,
    grid_sup,
    growth_profile,
    markov_constant,
    markov_maximizer,
    pointwise_bound,
    split_degree,
)
from monomarkov.orthobasis import WeightId

unit = st.floats(min_value=-1.0, max_value=1.0)
degrees = st.integers(min_value=1, max_value=30)


def test_split_degree():
    assert split_degree(1) == (0, "odd")
    assert split_degree(2) == (0, "even")
    assert split_degree(7) == (3, "odd")
    assert split_degree(10) == (4, "even")
    for bad in (0, -3, 2.5):
        with pytest.raises(ValueError):
            split_degree(bad)


def test_pointwise_examples():
    assert pointwise_bound(1, 0.3).bound == pytest.approx(1.0, abs=1e-14)
    for x0 in (-1.0, -0.2, 0.0, 0.6, 1.0):
        assert pointwise_bound(2, x0).bound == pytest.approx(1 + abs(x0), abs=1e-14)
    r = pointwise_bound(3, 0.0)
    assert r.bound == pytest.approx(1.5, abs=1e-14)
    assert r.winner == "H" and r.winning_weight is WeightId.BRIDGE and r.weight_k == 0
    r = pointwise_bound(4, 1.0)
    assert r.bound == pytest.approx(6.0, abs=1e-13)
    assert r.winner == "S+" and r.winning_weight is WeightId.PLUS


def test_pointwise_rejects_bad_input():
    with pytest.raises(ValueError):
        pointwise_bound(3, 1.5)
    with pytest.raises(ValueError):
        pointwise_bound(0, 0.0)


def test_winner_labels():
    assert classify_winner("even", 2.0, 1.0) == "S+"
    assert classify_winner("even", 1.0, 2.0) == "S-"
    assert classify_winner("odd", 2.0, 1.0) == "F"
    assert classify_winner("odd", 1.0, 2.0) == "H"
    assert classify_winner("odd", 1.0, 1.0 + 1e-16) == "tie"
    assert pointwise_bound(2, 0.0).winner == "tie"
    assert pointwise_bound(2, -0.5).winning_weight is WeightId.MINUS


def test_markov_examples():
    assert markov_constant(1) == pytest.approx(1.0, rel=1e-12)
    assert markov_constant(2) == pytest.approx(2.0, rel=1e-12)
    assert markov_constant(3) == pytest.approx(4.0, rel=1e-12)
    assert markov_constant(4) == pytest.approx(6.0, rel=1e-12)
    assert markov_constant(5) == pytest.approx(9.0, rel=1e-12)


@pytest.mark.parametrize("n", range(1, 41))
def test_markov_closed_form(n):
    expected = n * (n + 2) / 4 if n % 2 == 0 else (n + 1) ** 2 / 4
    assert bernstein_qazi(n) == expected
    assert abs(markov_constant(n) - expected) <= 1e-9 * expected


@pytest.mark.parametrize("n", [2, 6, 12, 20])
def test_even_markov_argmax_at_endpoint(n):
    x, _ = markov_maximizer(n)
    assert abs(x) == 1.0


def test_baselines():
    assert baselines(7) == {"classical_markov": 49.0, "bernstein_qazi": 16.0}
    assert baselines(6) == {"classical_markov": 36.0, "bernstein_qazi": 12.0}
    assert baselines(1) == {"classical_markov": 1.0, "bernstein_qazi": 1.0}


def test_bernstein_examples():
    assert bernstein_constant(1) == pytest.approx(1.0, abs=1e-12)
    assert bernstein_constant(2) == pytest.approx(3 * math.sqrt(3) / 4, abs=1e-12)
    assert bernstein_constant(3) == pytest.approx(16 / 9, abs=1e-10)
    (n, ratio), = growth_profile([2])
    assert n == 2 and ratio == pytest.approx(0.64952, abs=1e-5)


@pytest.mark.parametrize("n", [2, 3, 7, 10, 15])
def test_bernstein_against_scipy_bounded(n):
    f = bound_function(n)
    best = 0.0
    edges = np.linspace(-1, 1, 81)
    for a, b in zip(edges[:-1], edges[1:]):
        res = minimize_scalar(
            lambda x: -math.sqrt(1 - x * x) * float(f(x)),
            bounds=(a, b), method="bounded", options={"xatol": 1e-12},
        )
        best = max(best, -res.fun)
    assert bernstein_constant(n) == pytest.approx(best, rel=1e-8)


def test_growth_doubling():
    for n in (25, 50):
        assert 1.9 <= bernstein_constant(2 * n) / bernstein_constant(n) <= 2.1


def test_grid_sup_finds_interior_peak():
    x, v = grid_sup(lambda t: 1.0 - (t - 0.123456789) ** 2)
    assert x == pytest.approx(0.123456789, abs=1e-6)
    assert v == pytest.approx(1.0, abs=1e-12)


def test_constant_table_rows():
    rows = constant_table(5)
    assert [r.n for r in rows] == [1, 2, 3, 4, 5]
    r = constant_row(4)
    assert r.markov_mono == pytest.approx(6.0, rel=1e-9)
    assert r.classical_markov == 16.0
    assert r.ratio_bernstein_over_n == pytest.approx(r.bernstein_mono / 4)


@settings(max_examples=200, deadline=None)
@given(degrees, unit)
def test_reflection_symmetry(n, x0):
    a, b = pointwise_bound(n, x0), pointwise_bound(n, -x0)
    assert a.bound == pytest.approx(b.bound, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=40), unit)
def test_monotone_in_degree(n, x0):
    assert pointwise_bound(n + 2, x0).bound >= pointwise_bound(n, x0).bound * (1 - 1e-12)


@settings(max_examples=100, deadline=None)
@given(degrees, unit)
def test_bound_never_exceeds_uniform_constant(n, x0):
    assert pointwise_bound(n, x0).bound <= bernstein_qazi(n) * (1 + 1e-9)


@pytest.mark.parametrize("n", range(2, 21))
def test_bernstein_below_markov(n):
    assert bernstein_constant(n) < markov_constant(n)
