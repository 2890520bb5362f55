from fractions import Fraction as F

import mpmath
import pytest
from mpmath import mpc, mpf

from srpmaass import maass as ms
from srpmaass.numdiff import StencilConfig, StencilError, laplacian_apply, wirtinger_bar, xi_apply
from srpmaass.special import HalfPlanePoint, q_at

P = HalfPlanePoint.parse
CFG = StencilConfig(F(1, 2**12), 4, 1)


def tau_of(t):
    return t.to_mpc()


def v_of(t):
    return mpf(t.v.numerator) / t.v.denominator


def test_wirtinger_coordinates(ctx):
    with ctx.working():
        tau = P("0.3+0.8i")
        assert abs(wirtinger_bar(tau_of, tau, CFG)) < 1e-40
        assert abs(wirtinger_bar(lambda t: mpmath.conj(tau_of(t)), tau, CFG) - 1) < 1e-40
        assert abs(wirtinger_bar(v_of, tau, CFG) - mpc(0, 0.5)) < 1e-40


def test_xi_kills_holomorphic_and_maps_v(ctx):
    with ctx.working():
        tau = P("0.3+0.8i")
        assert abs(xi_apply(0, lambda t: q_at(t), tau, StencilConfig.from_context(ctx))) < 1e-30
        assert abs(xi_apply(0, v_of, tau, CFG) - 1) < 1e-40


def test_laplacian_basics(ctx):
    with ctx.working():
        tau = P("1i")
        assert abs(laplacian_apply(0, lambda t: v_of(t) ** 2, tau, CFG) + 2) < 1e-35
        assert abs(laplacian_apply(0, lambda t: mpf(7), tau, CFG)) < 1e-40


def test_shadow_of_g1(ctx):
    tau = P("0.3+0.8i")
    with ctx.working():
        fd = xi_apply(0, lambda t: ms.g1_hat(t, ctx), tau, StencilConfig.from_context(ctx))
        closed = ms.shadow_g1_closed(tau, ctx)
        assert abs(fd - closed) / abs(closed) < 1e-8


def test_shadow_real_on_axis(ctx):
    with ctx.working():
        assert abs(ms.shadow_g1_closed(P("2i"), ctx).imag) < ctx.tolerance()


def test_eisenstein_eigenvalue(ctx):
    tau = P("0.3+0.9i")
    with ctx.working():
        f = lambda t: ms.eisenstein_value(t, 2, ctx)  # noqa: E731
        assert abs(laplacian_apply(0, f, tau, StencilConfig.from_context(ctx)) + 2 * f(tau)) / abs(f(tau)) < 1e-6


@pytest.mark.parametrize("order", [2, 4])
def test_convergence_rate(ctx, order):
    tau = P("1i")
    with ctx.working():
        f = lambda t: v_of(t) ** 3 + mpmath.cos(2 * mpmath.pi * tau_of(t).real) * mpmath.exp(-v_of(t))  # noqa: E731
        exact = laplacian_apply(0, f, tau, StencilConfig(F(1, 2**20), 4, 2))
        errs = [abs(laplacian_apply(0, f, tau, StencilConfig(h, order, 0)) - exact) for h in (F(1, 16), F(1, 32))]
        rate = errs[0] / errs[1]
        assert 2**order / 2 < rate < 2**order * 2


def test_stencil_validation():
    with pytest.raises(StencilError):
        StencilConfig(F(0), 4, 1)
    with pytest.raises(StencilError):
        StencilConfig(F(1, 8), 3, 1)
    with pytest.raises(StencilError):
        # half-width 2 * 0.3 v exceeds v / 2
        wirtinger_bar(tau_of, P("1i"), StencilConfig(F(3, 10), 4, 0))
