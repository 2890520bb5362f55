"""Property tests for the algebraic and modular invariants."""

from fractions import Fraction as F
from math import gcd

import mpmath
from hypothesis import assume, given
from hypothesis import strategies as st
from mpmath import mpf

from srpmaass import exact_series as xs
from srpmaass import maass as ms
from srpmaass import partitions as po
from srpmaass.exact_series import PowerSeries
from srpmaass.special import HalfPlanePoint, PrecisionContext, eval_series_at

CTX = PrecisionContext(prec=128)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def series(order=8, unit=False):
    head = rationals.filter(lambda c: c != 0) if unit else rationals
    return st.tuples(head, st.lists(rationals, min_size=order, max_size=order)).map(
        lambda hc: PowerSeries.from_coeffs([hc[0], *hc[1]])
    )


points = st.builds(
    HalfPlanePoint,
    st.fractions(min_value=0, max_value=1, max_denominator=97),
    st.fractions(min_value=F(2, 5), max_value=2, max_denominator=97),
)

A2_INV = ms.Gamma0Element(1, 0, -2, 1, level=2)
level2_words = st.lists(st.sampled_from([ms.T, ms.T_INV, ms.A2, A2_INV]), min_size=1, max_size=3)
level1_words = st.lists(st.sampled_from([ms.T, ms.T_INV, ms.S]), min_size=1, max_size=3)


def compose(word):
    g = word[0]
    for h in word[1:]:
        g = g @ h
    return g


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == PowerSeries.constant(0, a.order)


@given(series(unit=True))
def test_inverse(a):
    assert a * a.inverse() == PowerSeries.constant(1, a.order)


@given(series(), st.integers(1, 4))
def test_theta_dilate_commute(a, m):
    assert a.dilate(m).theta() == a.theta().dilate(m) * m


@given(series(order=12))
def test_serialization_roundtrip(a):
    assert PowerSeries.from_json(a.to_json()) == a
    assert PowerSeries.from_csv(a.to_csv()) == a


@given(st.integers(-4, 4), st.integers(1, 60), st.integers(1, 60))
def test_sigma_multiplicative(j, m, n):
    assume(gcd(m, n) == 1)
    assert xs.sigma(j, m * n) == xs.sigma(j, m) * xs.sigma(j, n)


@given(st.integers(1, 5), st.integers(1, 200))
def test_sigma_negative_index(j, n):
    assert xs.sigma(-j, n) == F(xs.sigma(j, n)) / n**j


@given(st.sampled_from([3, 5, 7, 11, 13, 17]), st.integers(-100, 100), st.integers(-100, 100))
def test_legendre_completely_multiplicative(p, a, b):
    assert xs.legendre_symbol(a * b, p) == xs.legendre_symbol(a, p) * xs.legendre_symbol(b, p)
    assert xs.legendre_symbol(a, p) == po._quadratic_character(p)[a % p]


@given(st.integers(0, 30))
def test_partitions_well_formed(n):
    seen = set()
    for lam in po.enumerate_distinct(n):
        assert lam.size == n
        assert list(lam.parts) == sorted(set(lam.parts), reverse=True)
        seen.add(lam.parts)
    assert len(seen) == xs.pochhammer_neg_q(n)[n]


@given(st.integers(1, 4), st.integers(0, 16))
def test_moments_match_oracle(k, n):
    assert xs.moment_series(k, 16)[n] == po.s_oracle(k, n)


@given(st.sampled_from([3, 5, 7]), st.integers(0, 18))
def test_twisted_matches_oracle(p, n):
    assert xs.twisted_series(p, 18)[n] == po.s_twisted_oracle(p, n)


@given(points)
def test_series_reflection(tau):
    g = xs.g_series(2, 200)
    with CTX.working():
        a = eval_series_at(g, tau, 1, CTX)
        b = eval_series_at(g, tau.conj_reflect(), 1, CTX)
        assert abs(b - mpmath.conj(a)) < CTX.tolerance() * 16


@given(points, level2_words)
def test_g1_hat_gamma0_2_invariant(tau, word):
    moved, _ = ms.mobius_act(compose(word), tau)
    assume(moved.v > F(1, 20))
    with CTX.working():
        assert abs(ms.g1_hat(moved, CTX) - ms.g1_hat(tau, CTX)) < mpf(10) ** (-CTX.prec / 5)


@given(points, level2_words, st.sampled_from([2, 3]))
def test_gk_hat_gamma0_2_invariant(tau, word, k):
    moved, _ = ms.mobius_act(compose(word), tau)
    assume(moved.v > F(1, 10))
    with CTX.working():
        assert abs(ms.gk_hat(k, moved, CTX) - ms.gk_hat(k, tau, CTX)) < mpf(10) ** (-CTX.prec / 5)


@given(points, level1_words)
def test_kronecker_sl2_invariant(tau, word):
    moved, _ = ms.mobius_act(compose(word), tau)
    assume(moved.v > F(1, 20))
    with CTX.working():
        assert abs(ms.kronecker_limit(moved, CTX) - ms.kronecker_limit(tau, CTX)) < mpf(10) ** (-CTX.prec / 5)


@given(points)
def test_two_g1_paths_agree(tau):
    with CTX.working():
        assert abs(ms.g1_hat(tau, CTX) - ms.g1_hat_via_kronecker(tau, CTX)) < mpf(10) ** (-CTX.prec / 5)
