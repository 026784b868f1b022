from fractions import Fraction

import pytest
from hypothesis import given

import oracle
from conftest import measures, rationals
from measurekit import (Centre, dirac, distribution_function, eval_bv, measure_from_bv,
                        piecewise_linear_measure, sample_csv, sup_abs_bv, updown_parts, variation,
                        variation_function)
from measurekit.core import NEG_INF, POS_INF

F = Fraction
CENTRES = ["-inf", "0", "1/3", "+inf"]


def test_centre_parse():
    assert Centre.parse("-inf").kind == "-inf"
    assert Centre.parse("+inf").kind == "+inf"
    assert Centre.parse("2/3").alpha == F(2, 3)
    with pytest.raises(ValueError, match="invalid centre"):
        Centre.parse("middle")


def test_distribution_function_of_dirac():
    F0 = distribution_function(dirac(0), 0)
    assert F0(-1) == -1 and F0(0) == 0 and F0(1) == 0
    assert distribution_function(dirac(0), "-inf")(0) == 1
    assert distribution_function(dirac(0), "+inf")(-1) == -1


def test_left_limit_and_infinite_evaluation():
    Fm = distribution_function(dirac(1), "-inf")
    assert Fm.left_limit(1) == 0 and Fm(1) == 1
    assert eval_bv(Fm, NEG_INF) == 0 and eval_bv(Fm, POS_INF) == 1


@given(measures(), rationals, rationals)
def test_centring_matches_definition(mu, alpha, x):
    Fa = distribution_function(mu, Centre.at(alpha))
    assert Fa(alpha) == 0
    assert Fa(x) == oracle.distfun(mu, alpha, x)


@given(measures(), rationals, rationals)
def test_centres_differ_by_constant(mu, a, x):
    diff = distribution_function(mu, a)(x) - distribution_function(mu, "-inf")(x)
    assert diff == -mu.cdf(a)
    assert distribution_function(mu, "+inf")(x) == mu.cdf(x) - mu.total_mass()


@given(measures())
def test_round_trip_and_variation(mu):
    for c in CENTRES:
        Fc = distribution_function(mu, c)
        assert measure_from_bv(Fc) == mu
        assert variation_function(Fc).mu == variation(mu)


@given(measures())
def test_updown_parts(mu):
    up, down = updown_parts(distribution_function(mu, 0))
    assert up.mu - down.mu == mu
    assert up.mu + down.mu == variation(mu)


def test_piecewise_linear_measure_slopes():
    mu = piecewise_linear_measure([(0, 0), (1, 2), (3, 0)])
    assert mu.density == ((0, 1, 2), (1, 3, -1))


def test_sup_abs_bv():
    mu = piecewise_linear_measure([(0, 0), (1, 2), (3, 0)])
    assert sup_abs_bv(distribution_function(mu, 0)) == 2
    assert sup_abs_bv(distribution_function(dirac(0) - dirac(1), "-inf")) == 1


def test_sample_csv():
    mu = piecewise_linear_measure([(0, 0), (1, 2), (2, 0)])
    text = sample_csv(distribution_function(mu, 0), 0, 2, F(1, 2), exact=True)
    assert text.splitlines() == ["x,F,F_exact", "0,0,0", "0.5,1,1", "1,2,2", "1.5,1,1", "2,0,0"]
    with pytest.raises(ValueError):
        list(sample_csv(distribution_function(mu, 0), 0, 1, 0))
