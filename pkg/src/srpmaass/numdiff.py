"""Finite-difference versions of the shadow operator and weight-k Laplacian.

Functions are black boxes ``f(tau) -> number`` on HalfPlanePoint.  Offsets are
exact rationals, so the stencil nodes are the same at every precision.  The
stencil arithmetic runs at the caller's mpmath precision; wrap calls in
``ctx.working()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mp, mpc, mpf

from .special import HalfPlanePoint, PrecisionContext, _mpf, to_fraction

Func = Callable[[HalfPlanePoint], object]

# central weights (offset, weight) and the scale they are divided by
_FIRST = {
    2: ([(1, Fraction(1, 2)), (-1, Fraction(-1, 2))], 1),
    4: ([(2, Fraction(-1, 12)), (1, Fraction(2, 3)), (-1, Fraction(-2, 3)), (-2, Fraction(1, 12))], 1),
}
_SECOND = {
    2: ([(1, Fraction(1)), (0, Fraction(-2)), (-1, Fraction(1))], 2),
    4: ([(2, Fraction(-1, 12)), (1, Fraction(4, 3)), (0, Fraction(-5, 2)), (-1, Fraction(4, 3)), (-2, Fraction(-1, 12))], 2),
}


class StencilError(ValueError):
    pass


@dataclass(frozen=True)
class StencilConfig:
    """Step ``h`` is relative to v at the evaluation point."""

    h: Fraction
    order: int = 4
    richardson: int = 1

    def __post_init__(self):
        object.__setattr__(self, "h", to_fraction(self.h))
        if self.h <= 0:
            raise StencilError("stencil step must be positive")
        if self.order not in (2, 4):
            raise StencilError("stencil order must be 2 or 4")
        if self.richardson < 0:
            raise StencilError("richardson levels must be non-negative")

    @property
    def radius(self) -> int:
        return self.order // 2

    @classmethod
    def from_context(cls, ctx: PrecisionContext) -> "StencilConfig":
        h = ctx.step if ctx.step is not None else Fraction(1, 2 ** (ctx.prec // 4))
        return cls(h, ctx.stencil_order, ctx.richardson)


def _check_inside(tau: HalfPlanePoint, habs: Fraction, radius: int):
    if habs * radius >= tau.v / 2:
        raise StencilError(f"stencil of half-width {float(habs * radius):.3g} leaves the half-plane at v={float(tau.v):.3g}")


def _partial(f: Func, tau: HalfPlanePoint, habs: Fraction, order: int, axis: str, second: bool):
    weights, power = (_SECOND if second else _FIRST)[order]
    acc = 0
    for off, w in weights:
        if w == 0:
            continue
        pt = tau.shifted(du=off * habs) if axis == "u" else tau.shifted(dv=off * habs)
        acc += _frac(w) * f(pt)
    return acc / _frac(habs) ** power


def _frac(x: Fraction) -> mpf:
    return mpf(x.numerator) / x.denominator


def _richardson(estimate: Callable[[Fraction], object], h: Fraction, order: int, levels: int):
    """Extrapolate an O(h^order) + O(h^(order+2)) + ... estimate in h."""
    table = [estimate(h / 2**i) for i in range(levels + 1)]
    p = order
    for _ in range(levels):
        factor = mpf(2) ** p
        table = [(factor * table[i + 1] - table[i]) / (factor - 1) for i in range(len(table) - 1)]
        p += 2
    return table[0]


def wirtinger_bar(f: Func, tau: HalfPlanePoint, cfg: StencilConfig):
    """d f / d conj(tau) = (f_u + i f_v) / 2."""
    def est(h):
        habs = h * tau.v
        _check_inside(tau, habs, cfg.radius)
        fu = _partial(f, tau, habs, cfg.order, "u", False)
        fv = _partial(f, tau, habs, cfg.order, "v", False)
        return (fu + mpc(0, 1) * fv) / 2

    _check_inside(tau, cfg.h * tau.v, cfg.radius)
    return _richardson(est, cfg.h, cfg.order, cfg.richardson)


def xi_apply(k: int, f: Func, tau: HalfPlanePoint, cfg: StencilConfig):
    """Shadow operator 2 i v^k conj(d f / d conj(tau))."""
    w = wirtinger_bar(f, tau, cfg)
    return 2 * mpc(0, 1) * _mpf(tau.v) ** k * mpmath.conj(w)


def laplacian_apply(k: int, f: Func, tau: HalfPlanePoint, cfg: StencilConfig):
    """-v^2 (f_uu + f_vv) + i k v (f_u + i f_v)."""
    v = _mpf(tau.v)

    def est(h):
        habs = h * tau.v
        _check_inside(tau, habs, cfg.radius)
        fuu = _partial(f, tau, habs, cfg.order, "u", True)
        fvv = _partial(f, tau, habs, cfg.order, "v", True)
        out = -v**2 * (fuu + fvv)
        if k:
            fu = _partial(f, tau, habs, cfg.order, "u", False)
            fv = _partial(f, tau, habs, cfg.order, "v", False)
            out += mpc(0, k) * v * (fu + mpc(0, 1) * fv)
        return out

    _check_inside(tau, cfg.h * tau.v, cfg.radius)
    return _richardson(est, cfg.h, cfg.order, cfg.richardson)
