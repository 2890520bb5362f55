"""High-precision special functions and evaluation of exact series at complex q.

Arbitrary-precision floats come from mpmath; every routine here runs inside
``ctx.working()``, which sets mpmath's precision to ``prec + guard`` bits for
the duration of the call.  Tail bounds are geometric majorants computed in
ordinary floats on a log scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from numbers import Real

import mpmath
from mpmath import mp, mpc, mpf

from .exact_series import PowerSeries, bernoulli


class InsufficientTruncation(ArithmeticError):
    """A truncated expansion cannot meet the requested precision."""

    def __init__(self, message: str, minimal: int | None = None):
        super().__init__(message)
        self.minimal = minimal


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and truncation parameters.

    ``order``, ``cutoff`` and ``step`` are ``None`` for "choose automatically
    from the tail bounds"; a fixed value is used as given and checked.
    """

    prec: int = 192
    guard: int = 32
    order: int | None = None
    cutoff: int | None = None
    quad_nodes: int = 32
    step: Fraction | None = None
    stencil_order: int = 4
    richardson: int = 1

    def __post_init__(self):
        if self.prec < 64:
            raise ValueError(f"working precision must be at least 64 bits, got {self.prec}")
        if self.guard < 16:
            raise ValueError(f"guard bits must be at least 16, got {self.guard}")
        if self.order is not None and self.order < 0:
            raise ValueError("series order must be non-negative")
        if self.cutoff is not None and self.cutoff < 1:
            raise ValueError("Fourier cutoff must be positive")
        if self.quad_nodes < 4:
            raise ValueError("need at least 4 quadrature nodes")
        if self.stencil_order not in (2, 4):
            raise ValueError("stencil order must be 2 or 4")
        if self.step is not None:
            object.__setattr__(self, "step", to_fraction(self.step))
            if self.step <= 0:
                raise ValueError("stencil step must be positive")

    @property
    def work_prec(self) -> int:
        return self.prec + self.guard

    @property
    def log2_tail(self) -> float:
        """log2 of the truncation target, 2**-(prec + guard)."""
        return -float(self.work_prec)

    def tolerance(self) -> mpf:
        return mpf(2) ** (-self.prec)

    def working(self):
        return mp.workprec(self.work_prec)

    def doubled(self) -> "PrecisionContext":
        return replace(self, prec=2 * self.prec, guard=2 * self.guard)

    def with_(self, **kw) -> "PrecisionContext":
        return replace(self, **kw)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, mpf):
        man, exp = x.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    if isinstance(x, Real):
        return Fraction(float(x))
    raise TypeError(f"cannot convert {x!r} to an exact rational")


@dataclass(frozen=True)
class HalfPlanePoint:
    """tau = u + i v in the upper half-plane, with exact rational coordinates.

    Keeping u and v rational makes group actions, dilations and stencil
    offsets exact, and lets one point be evaluated at any precision.
    """

    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", to_fraction(self.u))
        object.__setattr__(self, "v", to_fraction(self.v))
        if self.v <= 0:
            raise ValueError(f"point must lie in the upper half-plane, got v={self.v}")

    @classmethod
    def parse(cls, text: str) -> "HalfPlanePoint":
        """Parse ``"u+vi"``, ``"vi"`` or ``"u,v"``."""
        t = text.replace(" ", "")
        if "," in t:
            u, v = t.split(",")
            return cls(u, v)
        if not t.endswith(("i", "j")):
            raise ValueError(f"not a half-plane point: {text!r}")
        t = t[:-1]
        cut = max(t.rfind("+"), t.rfind("-"))
        if cut <= 0:
            return cls(0, t or "1")
        return cls(t[:cut], t[cut:] if t[cut:] not in ("+", "-") else t[cut:] + "1")

    def to_mpc(self) -> mpc:
        return mpc(_mpf(self.u), _mpf(self.v))

    def scaled(self, m) -> "HalfPlanePoint":
        m = to_fraction(m)
        return HalfPlanePoint(self.u * m, self.v * m)

    def shifted(self, du=0, dv=0) -> "HalfPlanePoint":
        return HalfPlanePoint(self.u + to_fraction(du), self.v + to_fraction(dv))

    def conj_reflect(self) -> "HalfPlanePoint":
        """-conj(tau) = -u + i v."""
        return HalfPlanePoint(-self.u, self.v)

    def __str__(self):
        return f"{float(self.u):.6g}+{float(self.v):.6g}i"


def _mpf(x: Fraction) -> mpf:
    return mpf(x.numerator) / x.denominator


# ---------------------------------------------------------------------------
# tail bounds

def poly_geometric_log2_tail(a: float, b: float, r: float, m: int) -> float:
    """log2 of an upper bound for ``sum_{n>m} a n**b r**n`` (inf if divergent)."""
    if a <= 0:
        return -math.inf
    if r <= 0:
        return -math.inf
    rho = r * ((m + 2) / (m + 1)) ** max(b, 0.0)
    if rho >= 1:
        return math.inf
    ln = math.log(a) + b * math.log(m + 1) + (m + 1) * math.log(r) - math.log1p(-rho)
    return ln / math.log(2)


def cutoff_for(a: float, b: float, r: float, log2_target: float, start: int = 0,
               limit: int = 10**6) -> int:
    """Smallest m with the tail bound of ``sum_{n>m} a n**b r**n`` under target."""
    if r >= 1:
        raise InsufficientTruncation("series does not converge at this point")
    m = max(start, 0)
    step = 1
    # gallop then bisect; the bound is eventually decreasing in m
    while poly_geometric_log2_tail(a, b, r, m) >= log2_target:
        m += step
        step *= 2
        if m > limit:
            raise InsufficientTruncation(f"no cutoff below {limit} reaches 2^{log2_target:.0f}")
    lo, hi = max(start, m - step // 2), m
    while lo < hi:
        mid = (lo + hi) // 2
        if poly_geometric_log2_tail(a, b, r, mid) < log2_target:
            hi = mid
        else:
            lo = mid + 1
    return hi


# ---------------------------------------------------------------------------
# constants

@lru_cache(maxsize=32)
def _euler_gamma_at(bits: int) -> mpf:
    # Brent-McMillan: gamma = U/V - K_0-correction; error ~ exp(-4n)
    with mp.workprec(bits + 32):
        n = int(math.ceil((bits + 16) * math.log(2) / 4)) + 1
        n2 = mpf(n) ** 2
        a = -mpmath.log(n)
        b = mpf(1)
        u, v = a, b
        k = 1
        kmax = int(3.6 * n) + 10
        while k <= kmax:
            b = b * n2 / (k * k)
            a = (a * n2 / k + b) / k
            u += a
            v += b
            k += 1
        return +(u / v)


def euler_gamma(ctx: PrecisionContext) -> mpf:
    with ctx.working():
        return +_euler_gamma_at(ctx.work_prec)


def _em_terms(s, n_cut: int, derivative: bool):
    """Euler-Maclaurin tail for zeta(s) (or zeta'(s)) starting at n_cut."""
    N = mpf(n_cut)
    logN = mpmath.log(N)
    eps = mpf(2) ** (-mp.prec)
    if not derivative:
        head = sum(mpf(n) ** (-s) for n in range(1, n_cut))
        total = head + N ** (1 - s) / (s - 1) + N ** (-s) / 2
    else:
        head = -sum(mpmath.log(n) * mpf(n) ** (-s) for n in range(2, n_cut))
        total = head - logN * N ** (1 - s) / (s - 1) - N ** (1 - s) / (s - 1) ** 2 - logN * N ** (-s) / 2
    poch = s  # s (s+1) ... (s+2j-2)
    dpoch = mpf(1)  # derivative of poch w.r.t. s
    for j in range(1, 4 * mp.prec):
        b2j = bernoulli(2 * j)
        coeff = mpf(b2j.numerator) / b2j.denominator / mpmath.factorial(2 * j)
        power = N ** (-s - 2 * j + 1)
        if not derivative:
            term = coeff * poch * power
        else:
            term = coeff * power * (dpoch - logN * poch)
        total += term
        if abs(term) < eps * abs(total):
            return total
        # advance to the next pair of rising factors
        for extra in (2 * j - 1, 2 * j):
            dpoch = dpoch * (s + extra) + poch
            poch = poch * (s + extra)
    raise ArithmeticError("Euler-Maclaurin series did not converge")


def _em_cut(bits: int) -> int:
    return max(20, bits // 3)


def zeta_real(s, ctx: PrecisionContext) -> mpf:
    """Riemann zeta at real s > 1 by Euler-Maclaurin summation."""
    with ctx.working():
        s = mpf(s) if not isinstance(s, Fraction) else _mpf(s)
        if s <= 1:
            raise ValueError(f"zeta_real needs s > 1, got {s}")
        with mp.workprec(ctx.work_prec + 16):
            val = _em_terms(s, _em_cut(ctx.work_prec), derivative=False)
        return +val


def zeta_prime(s, ctx: PrecisionContext) -> mpf:
    with ctx.working():
        s = mpf(s) if not isinstance(s, Fraction) else _mpf(s)
        if s <= 1:
            raise ValueError(f"zeta_prime needs s > 1, got {s}")
        with mp.workprec(ctx.work_prec + 16):
            val = _em_terms(s, _em_cut(ctx.work_prec), derivative=True)
        return +val


@lru_cache(maxsize=32)
def _zeta_prime_2_at(bits: int) -> mpf:
    return zeta_prime(2, PrecisionContext(prec=bits - 32, guard=32))


def zeta_prime_2(ctx: PrecisionContext) -> mpf:
    with ctx.working():
        return +_zeta_prime_2_at(ctx.work_prec)


@lru_cache(maxsize=128)
def _zeta_int_at(n: int, bits: int) -> mpf:
    return zeta_real(n, PrecisionContext(prec=bits - 32, guard=32))


def zeta_int(n: int, ctx: PrecisionContext) -> mpf:
    """Cached zeta at an integer argument n >= 2."""
    with ctx.working():
        return +_zeta_int_at(n, ctx.work_prec)


# ---------------------------------------------------------------------------
# Bessel and incomplete gamma

def k_bessel_half(n: int, x) -> mpf:
    """K_{n+1/2}(x) from its terminating closed form, at the current precision."""
    x = mpf(x)
    if x <= 0:
        raise ValueError("K-Bessel needs x > 0")
    if n < 0:
        n = -n - 1  # K_{-nu} = K_nu
    total = mpf(0)
    twox = 2 * x
    for r in range(n + 1):
        total += mpf(math.factorial(n + r)) / (math.factorial(r) * math.factorial(n - r)) / twox**r
    return mpmath.sqrt(mp.pi / twox) * mpmath.exp(-x) * total


def k_bessel_half_log_bound(n: int, x: float) -> float:
    """Natural log of K_{n+1/2}(x) in floats (an upper bound for any order <= n+1/2)."""
    total = sum(
        math.exp(math.lgamma(n + r + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1) - r * math.log(2 * x))
        for r in range(n + 1)
    )
    return 0.5 * math.log(math.pi / (2 * x)) - x + math.log(total)


def k_bessel_general(nu, x, ctx: PrecisionContext) -> mpf:
    """K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by the trapezoidal rule.

    The integrand decays doubly exponentially, so the trapezoidal sum
    converges geometrically in the number of nodes; nodes are doubled until
    two successive sums agree to the context tolerance.
    """
    with ctx.working():
        nu = abs(mpf(nu) if not isinstance(nu, Fraction) else _mpf(nu))
        x = mpf(x) if not isinstance(x, Fraction) else _mpf(x)
        if x <= 0:
            raise ValueError("K-Bessel needs x > 0")
        target = ctx.work_prec * math.log(2) + 10
        # truncate where the integrand falls below 2^-work relative to exp(-x)
        xf, nuf = float(x), float(nu)
        t_max = 1.0
        while xf * (math.cosh(t_max) - 1) - nuf * t_max < target + abs(math.log(xf)):
            t_max *= 1.25
        t_max = mpf(t_max)

        def f(t):
            return mpmath.exp(-x * mpmath.cosh(t)) * mpmath.cosh(nu * t)

        nodes = ctx.quad_nodes
        h = t_max / nodes
        total = f(mpf(0)) / 2 + sum(f(j * h) for j in range(1, nodes + 1))
        prev = total * h
        tol = mpf(2) ** (-ctx.prec)
        for _ in range(24):
            h /= 2
            total += sum(f((2 * j - 1) * h) for j in range(1, nodes + 1))
            nodes *= 2
            cur = total * h
            if abs(cur - prev) <= tol * abs(cur):
                return +cur
            prev = cur
        raise QuadratureError(f"K_{nu}({x}) quadrature did not settle after {nodes} nodes")


def incomplete_gamma_int(m: int, y) -> mpf:
    """Gamma(m, y) = (m-1)! e^{-y} sum_{j<m} y^j/j! for integer m >= 1."""
    if m < 1:
        raise ValueError("m must be >= 1")
    y = mpf(y)
    if y < 0:
        raise ValueError("y must be non-negative")
    return mpmath.factorial(m - 1) * mpmath.exp(-y) * _exp_partial(m, y)


def gamma_star_int(m: int, y) -> mpf:
    """Normalised Gamma(m, y) / Gamma(m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    y = mpf(y)
    if y < 0:
        raise ValueError("y must be non-negative")
    return mpmath.exp(-y) * _exp_partial(m, y)


def _exp_partial(m: int, y: mpf) -> mpf:
    term = mpf(1)
    total = mpf(1)
    for j in range(1, m):
        term = term * y / j
        total += term
    return total


# ---------------------------------------------------------------------------
# eta and series evaluation

def q_at(tau: HalfPlanePoint, scale: int = 1) -> mpc:
    z = tau.to_mpc() * scale
    return mpmath.expjpi(2 * z)


def _eta_product_terms(tau: HalfPlanePoint, ctx: PrecisionContext) -> int:
    r = math.exp(-2 * math.pi * float(tau.v))
    # |q|^{M+1} / (1 - |q|) < 2^-(prec+guard)
    target = -ctx.work_prec * math.log(2)
    m = 1
    while (m + 1) * math.log(r) - math.log1p(-r) >= target:
        m += 1
    return m


def dedekind_eta(tau: HalfPlanePoint, ctx: PrecisionContext) -> mpc:
    """eta(tau) = q^{1/24} prod_{n>=1} (1 - q^n)."""
    if float(tau.v) > 1e8:
        raise InsufficientTruncation(f"eta underflows at v={float(tau.v):.3g}")
    with ctx.working():
        q = q_at(tau)
        prod = mpc(1)
        qn = mpc(1)
        for _ in range(_eta_product_terms(tau, ctx)):
            qn *= q
            prod *= 1 - qn
        return mpmath.expjpi(tau.to_mpc() / 12) * prod


def log_abs_eta(tau: HalfPlanePoint, ctx: PrecisionContext) -> mpf:
    """log |eta(tau)| = -pi v / 12 + sum log|1 - q^n|, without forming eta itself."""
    with ctx.working():
        q = q_at(tau)
        total = mpf(0)
        qn = mpc(1)
        for _ in range(_eta_product_terms(tau, ctx)):
            qn *= q
            total += mpmath.log(abs(1 - qn))
        return -mp.pi * _mpf(tau.v) / 12 + total


def _growth_of(series: PowerSeries) -> tuple[float, float]:
    if series.growth is not None:
        return series.growth
    # heuristic majorant from the known coefficients: A n^2 covering what we see
    a = max((abs(float(c)) / max(n, 1) ** 2 for n, c in enumerate(series.coeffs)), default=0.0)
    return (2 * a + 1e-300, 2.0)


def required_order(growth: tuple[float, float], tau: HalfPlanePoint, scale: int,
                   ctx: PrecisionContext) -> int:
    a, b = growth
    r = math.exp(-2 * math.pi * scale * float(tau.v))
    return cutoff_for(a, b, r, ctx.log2_tail)


def eval_series_at(series: PowerSeries, tau: HalfPlanePoint, scale: int, ctx: PrecisionContext) -> mpc:
    """Horner evaluation of ``sum c_n exp(2 pi i scale n tau)``.

    Raises InsufficientTruncation (with the minimal sufficient order) if the
    discarded tail could exceed 2^-(prec+guard).
    """
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    a, b = _growth_of(series)
    r = math.exp(-2 * math.pi * scale * float(tau.v))
    log2_tail = poly_geometric_log2_tail(a, b, r, series.order)
    if log2_tail >= ctx.log2_tail:
        need = cutoff_for(a, b, r, ctx.log2_tail)
        raise InsufficientTruncation(
            f"order {series.order} is too small at v={float(tau.v):.4g} (scale {scale}); need {need}",
            minimal=need,
        )
    with ctx.working():
        q = q_at(tau, scale)
        acc = mpc(0)
        for c in reversed(series.coeffs):
            acc = acc * q + (mpf(c.numerator) / c.denominator if c else 0)
        return acc
