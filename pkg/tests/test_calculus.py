from fractions import Fraction

from hypothesis import given, settings

import oracle
from conftest import cc_functions, intervals_sets, measures
from measurekit import (Measure, RealSet, TestFunction, constant, dirac, hat, integrate, jordan,
                        measure_of_set, restrict, sign_ramp, sup_abs, tv_norm, variation)

F = Fraction


def test_integrate_dirac_hat():
    assert integrate(dirac(0), hat(0, 1)) == 1
    assert integrate(Measure(), sign_ramp(0, 1)) == 0


def test_integrate_density_against_constant_tails():
    mu = Measure((), ((-5, -3, 1), (3, 4, 2)))
    assert integrate(mu, sign_ramp(0, 1)) == -2 + 2
    assert integrate(mu, constant(3)) == 3 * mu.total_mass()


def test_integrate_cubic_piece():
    f = TestFunction((0, 1), ((0, 0, 0, 1),), 0, 1, "Cb")  # x^3 on [0, 1)
    mu = Measure((), ((0, 1, 4),))
    assert integrate(mu, f) == 1


@settings(max_examples=150)
@given(measures(max_pieces=8), cc_functions())
def test_integrate_matches_oracle(mu, f):
    assert integrate(mu, f) == oracle.integrate(mu, f)


@given(measures(), measures(), cc_functions())
def test_integrate_is_linear_in_measure(m1, m2, f):
    assert integrate(m1 + m2, f) == integrate(m1, f) + integrate(m2, f)


def test_jordan_of_sawtooth():
    mu = Measure((), ((0, 1, 2), (1, 2, -2)))
    pos, neg = jordan(mu)
    assert pos.density == ((0, 1, 2),)
    assert neg.density == ((1, 2, 2),)
    assert tv_norm(mu) == 4


@given(measures())
def test_jordan_identities(mu):
    pos, neg = jordan(mu)
    assert pos - neg == mu
    assert pos + neg == variation(mu)
    assert tv_norm(mu) == tv_norm(pos) + tv_norm(neg)
    assert pos.is_positive() or pos.is_zero()


def test_measure_of_set_respects_endpoint_flags():
    mu = dirac(0) + dirac(1)
    assert measure_of_set(mu, RealSet.closed(0, 1)) == 2
    assert measure_of_set(mu, RealSet.open(0, 1)) == 0
    assert measure_of_set(mu, RealSet.left_open(0, 1)) == 1
    assert measure_of_set(Measure((), ((0, 4, 1),)), RealSet.ball(1, F(1, 2))) == 1


@given(measures(), intervals_sets())
def test_measure_of_set_additive_with_complement(mu, A):
    assert measure_of_set(mu, A) + measure_of_set(mu, ~A) == mu.total_mass()


@given(measures(), intervals_sets())
def test_restrict_agrees_with_measure_of_set(mu, A):
    assert restrict(mu, A).total_mass() == measure_of_set(mu, A)


def test_sup_abs_exact_and_bounded():
    assert sup_abs(hat(0, 1, 3)) == 3
    cubic = TestFunction((-2, 2), ((0, -3, 0, 1),), -2, 2, "Cb")  # x^3 - 3x, max 2 at -1
    assert sup_abs(cubic) == 2
    # extremum at x = 1/sqrt(3): value 2/(3 sqrt 3) ~ 0.3849, an irrational number
    g = TestFunction((0, 1), ((0, 1, 0, -1),), 0, 0, "Cc")
    bound = sup_abs(g)
    assert F(3849, 10000) < bound < F(3850, 10000)
