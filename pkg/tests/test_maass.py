from fractions import Fraction as F
from math import factorial

import mpmath
import pytest
from mpmath import mp, mpf

from srpmaass import exact_series as xs
from srpmaass import maass as ms
from srpmaass.special import HalfPlanePoint, InsufficientTruncation, PrecisionContext, zeta_int

P = HalfPlanePoint.parse


def near(a, b, ctx, tol=None):
    with ctx.working():
        return abs(a - b) < (tol if tol is not None else ctx.tolerance() * 2**16)


class TestGroupAction:
    def test_identity_translation_inversion(self):
        I = ms.Gamma0Element(1, 0, 0, 1)
        assert ms.mobius_act(I, P("0.3+0.8i"))[0] == P("0.3+0.8i")
        moved, _ = ms.mobius_act(ms.T, P("0.9+0.5i"))
        assert moved == HalfPlanePoint(F(19, 10), F(1, 2))
        assert ms.mobius_act(ms.S, P("1i"))[0] == P("1i")

    def test_validation(self):
        with pytest.raises(ValueError):
            ms.Gamma0Element(1, 1, 1, 1)
        with pytest.raises(ValueError):
            ms.Gamma0Element(1, 0, 1, 1, level=2)

    def test_composition_is_action(self):
        g, h = ms.T @ ms.A2, ms.A2 @ ms.T_INV
        tau = P("0.41+0.83i")
        assert ms.mobius_act(g @ h, tau)[0] == ms.mobius_act(g, ms.mobius_act(h, tau)[0])[0]


class TestEisenstein:
    def test_phi_values(self, ctx):
        with ctx.working():
            assert near(ms.phi_constant(2, ctx), 45 * zeta_int(3, ctx) / mp.pi**3, ctx)
            for n in (1, 2, 6):
                want = 90 / mp.pi**2 * mpf(n) ** 1.5 * xs.sigma(-3, n).numerator / xs.sigma(-3, n).denominator
                assert near(ms.phi_coefficient(n, 2, ctx), want, ctx)

    def test_full_modular_invariance(self, ctx):
        tau = P("0.3+0.9i")
        base = ms.eisenstein_value(tau, 2, ctx)
        for g in (ms.T, ms.S):
            assert near(ms.eisenstein_value(ms.mobius_act(g, tau)[0], 2, ctx), base, ctx)

    def test_non_integer_s_uses_quadrature(self, ctx):
        tau = P("0.2+1.1i")
        base = ms.eisenstein_value(tau, mpf("1.5"), ctx)
        assert near(ms.eisenstein_value(ms.mobius_act(ms.S, tau)[0], mpf("1.5"), ctx), base, ctx)

    def test_domain_and_cutoff(self, ctx):
        with pytest.raises(ValueError):
            ms.eisenstein_maass(P("1i"), 1, ctx)
        with pytest.raises(InsufficientTruncation):
            ms.eisenstein_maass(P("0.1+0.5i"), 2, ctx.with_(cutoff=2))
        ev = ms.eisenstein_maass(P("0.1+0.5i"), 2, ctx)
        assert ev.sufficient and ev.tail_bound < 2.0 ** -ctx.prec


class TestCompletedG:
    def test_g1_real_and_periodic(self, ctx):
        tau = P("0.2+0.7i")
        assert near(ms.g1_hat(tau.shifted(du=1), ctx), ms.g1_hat(tau, ctx), ctx)
        assert isinstance(ms.g1_hat(tau, ctx), mpf)

    def test_g1_kronecker_paths(self, ctx):
        for s in ("0.37+1.1i", "1i"):
            assert near(ms.g1_hat(P(s), ctx), ms.g1_hat_via_kronecker(P(s), ctx), ctx)
        tau = P("0.2+0.9i")
        moved = ms.mobius_act(ms.A2, tau)[0]
        assert near(ms.g1_hat_via_kronecker(moved, ctx), ms.g1_hat_via_kronecker(tau, ctx), ctx)

    def test_gk_prefactor(self):
        assert ms.gk_hat_prefactor(2) == F(1, 90)

    @pytest.mark.parametrize("s", ["0.41+0.83i", "0.6i", "0.15+0.4i"])
    def test_g2_explicit(self, ctx, s):
        assert near(ms.gk_hat(2, P(s), ctx), ms.g2_hat_explicit(P(s), ctx), ctx)

    def test_holomorphic_residue_k2(self, ctx):
        # gk_hat minus the q and conj(q) copies of g_2 leaves only explicit v-terms
        tau = P("0.3+0.8i")
        g2 = ms.g_value(2, tau, ctx)
        rest = ms.gk_hat(2, tau, ctx)
        with ctx.working():
            residue = rest - 2 * g2.real
            explicit = ms.g2_hat_explicit(tau, ctx) - 2 * g2.real
            assert abs(residue - explicit) < ctx.tolerance() * 2**16
            assert abs(residue) > 1e-3

    def test_gk_real(self, ctx):
        for k in (2, 3, 4):
            assert isinstance(ms.gk_hat(k, P("0.1+0.6i"), ctx), mpf)


class TestE2:
    def test_real_on_axis(self, ctx):
        with ctx.working():
            assert abs(ms.e2_hat(P("1.3i"), ctx).imag) < ctx.tolerance()

    def test_weight_two(self, ctx):
        tau = P("1.3i")
        moved, fac = ms.mobius_act(ms.S, tau)
        with ctx.working():
            assert abs(ms.e2_hat(moved, ctx) - ms.factor_mpc(fac) ** 2 * ms.e2_hat(tau, ctx)) < ctx.tolerance()

    def test_large_v(self, ctx):
        with ctx.working():
            want = 1 - 3 / (20 * mp.pi)
            assert abs(ms.e2_hat(P("20i"), ctx) - want) < mpf(10) ** -50


class TestEichler:
    def test_period_and_level_two(self, ctx):
        k = 2
        tau = P("0.3+0.8i")
        f = lambda t: ms.eichler_completed(k, 2, t, ctx)  # noqa: E731
        assert near(f(tau.shifted(du=1)), f(tau), ctx)
        moved, fac = ms.mobius_act(ms.A2, tau)
        with ctx.working():
            assert abs(ms.factor_mpc(fac) ** (2 * k - 2) * f(moved) - f(tau)) < ctx.tolerance() * 2**16

    def test_sesqui(self, ctx):
        tau = P("0.27+0.91i")
        with ctx.working():
            lhs = ms.eichler_sesqui(1, tau, ctx) - 2 * ms.eichler_sesqui(2, tau, ctx)
            assert abs(lhs - ms.g1_hat(tau, ctx)) < ctx.tolerance() * 2**16
        assert near(ms.eichler_sesqui(1, tau.shifted(du=1), ctx), ms.eichler_sesqui(1, tau, ctx), ctx)
        t = P("1.1i")
        assert near(ms.eichler_sesqui(1, ms.mobius_act(ms.S, t)[0], ctx), ms.eichler_sesqui(1, t, ctx), ctx)


class TestRaising:
    @pytest.mark.parametrize("k", [2, 3])
    @pytest.mark.parametrize("s", ["0.3+0.8i", "0.1+1.5i"])
    def test_direct_equals_closed(self, ctx, k, s):
        with ctx.working():
            d = ms.raising_eichler_direct(k, P(s), ctx)
            c = ms.raising_eichler_closed(k, P(s), ctx)
            assert abs(d - c) / abs(c) < ctx.tolerance() * 2**16

    def test_closed_equals_eisenstein_multiple(self, ctx):
        tau = P("0.5+0.7i")
        with ctx.working():
            c = ms.raising_eichler_closed(2, tau, ctx)
            e = ms.raising_eisenstein_multiple(2, tau, ctx)
            assert abs(c - e) / abs(e) < ctx.tolerance() * 2**16

    def test_v_power_coefficients_k2(self, ctx):
        # normalizer times (k-1)! is the v^k coefficient; the v^{1-k} one is (-1)^{k+1} zeta(3) 2!/1!
        k = 2
        assert ms.eichler_normalizer(k) * factorial(k - 1) == xs.bernoulli(4) * 4**3 / (2 * factorial(4))
        with ctx.working():
            big = P("40i")  # exponentially small Fourier part
            v = mpf(40)
            c = ms.raising_eichler_closed(k, big, ctx).real
            vk = ms.eichler_normalizer(k).numerator / mpf(ms.eichler_normalizer(k).denominator) * mp.pi**3 * v**2
            rest = (c - vk) * v
            assert abs(rest - (-1) ** (k + 1) * zeta_int(3, ctx) * 2) < mpf(10) ** -50

    @pytest.mark.parametrize("k", range(2, 7))
    def test_raising_of_one(self, ctx, k):
        with ctx.working():
            v = mpf("0.7")
            want = (-1) ** (k + 1) * mpf(factorial(2 * k - 2)) / factorial(k - 1) * v ** (1 - k)
            assert abs(ms.raising_of_one(k, v) - want) < ctx.tolerance() * abs(want)

    def test_rising_factorial_identity(self):
        for k in range(2, 7):
            for r in range(k):
                lhs = ms.rising_factorial(2 - 2 * k + r, k - 1 - r)
                assert lhs * factorial(k - 1) == (-1) ** (k + r + 1) * factorial(2 * k - r - 2)


class TestHolomorphicPart:
    def test_extract_value(self):
        assert ms.holomorphic_part_extract(2, 5)[3] == 3 * F(28, 27) == F(28, 9)

    @pytest.mark.parametrize("k", [2, 3])
    def test_difference_is_g_series(self, k):
        assert ms.holomorphic_difference(k, 30) == xs.g_series(k, 30)

    def test_k2_matches_n_sigma(self):
        h = ms.holomorphic_part_extract(2, 20)
        assert all(h[n] == n * xs.sigma(-3, n) for n in range(1, 21))

    def test_bessel_leading_term(self, ctx):
        for k in (2, 3):
            h = ms.holomorphic_part_extract(k, 8)
            for n in range(1, 9):
                with ctx.working():
                    want = mpf(h[n].numerator) / h[n].denominator
                    assert abs(ms.bessel_leading_coefficient(k, n, ctx) - want) < ctx.tolerance() * want


class TestKroneckerEta:
    def test_kronecker_invariance(self, ctx):
        tau = P("1.2i")
        base = ms.kronecker_limit(tau, ctx)
        assert near(ms.kronecker_limit(ms.mobius_act(ms.S, tau)[0], ctx), base, ctx)
        assert near(ms.kronecker_limit(tau.shifted(du=1), ctx), base, ctx)

    def test_eta_identity_on_axis(self, ctx):
        cmp = ms.g1_eta_identity(P("1.5i"), ctx)
        with ctx.working():
            assert cmp.winding == 0
            assert abs(cmp.eta_side.imag) < ctx.tolerance() and abs(cmp.series_side.imag) < ctx.tolerance()
            assert cmp.residual < ctx.tolerance() * 2**16

    def test_eta_identity_off_axis(self, ctx):
        cmp = ms.g1_eta_identity(P("0.3+0.9i"), ctx)
        assert cmp.winding == 0 and cmp.residual < ctx.tolerance() * 2**16

    def test_eta_identity_vanishes_high_up(self, ctx):
        cmp = ms.g1_eta_identity(P("0.2+12i"), ctx)
        with ctx.working():
            assert abs(cmp.eta_side) < mpf(10) ** -30

    def test_direct_limit_at_i(self, ctx):
        value, raw = ms.kronecker_extrapolated(P("1i"), (F(1, 100), F(1, 1000)), ctx)
        ref = ms.kronecker_limit(P("1i"), ctx)
        with ctx.working():
            assert abs(value - ref) < 10 * mpf("0.001") * abs(ref)
            # extrapolation improves on the raw eps = 1e-3 value
            assert abs(value - ref) < abs(raw[1] - ref)
