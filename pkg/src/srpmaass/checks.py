"""Registered verification checks, grouped into suites.

A check returns an Outcome; ``run_check`` turns it into a CheckReport with a
status and runtime.  Float checks pass iff the largest deviation is strictly
below the tolerance; exact checks pass iff no rational mismatch was found.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

import mpmath
from mpmath import mp, mpc, mpf

from . import exact_series as xs
from . import maass as ms
from . import partitions as po
from .numdiff import StencilConfig, StencilError, laplacian_apply, xi_apply
from .special import (
    HalfPlanePoint,
    PrecisionContext,
    _mpf,
    dedekind_eta,
    zeta_int,
)

DEFAULT_POINTS = (
    HalfPlanePoint("0.37", "1.1"),
    HalfPlanePoint("0.2", "0.7"),
    HalfPlanePoint("0.41", "0.83"),
    HalfPlanePoint("0.15", "0.4"),
    HalfPlanePoint("0.5", "2"),
    HalfPlanePoint("0.27", "0.91"),
)

# Gamma_0(2) elements: the two generators and three short words in them
GAMMA0_2_WORDS = (
    ("T", ms.T),
    ("A", ms.A2),
    ("TA", ms.T @ ms.A2),
    ("AT^-1", ms.A2 @ ms.T_INV),
    ("TAT^-1", ms.T @ ms.A2 @ ms.T_INV),
)

SHADOW_TOL = 1e-8
EIGEN_TOL = 1e-6
NESTED_TOL = 1e-10
LIMIT_EPS = (Fraction(1, 100), Fraction(1, 1000))


def identity_tolerance(ctx: PrecisionContext) -> mpf:
    """10^(-0.2 prec): the tolerance for identities between exact expansions."""
    with ctx.working():
        return mpf(10) ** (-mpf(ctx.prec) / 5)


@dataclass
class Outcome:
    deviation: object = None
    tolerance: object = None
    points: list = field(default_factory=list)
    exact: bool = False
    mismatches: int = 0
    detail: dict = field(default_factory=dict)
    skipped: bool = False


@dataclass
class CheckReport:
    check_id: str
    anchor: str
    points: list
    max_deviation: float | None
    tolerance: float | None
    status: str
    runtime: float
    exact: bool = False
    mismatches: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        if self.status == "skipped":
            return f"[SKIP] {self.check_id}: {self.detail.get('reason', '')}"
        tag = "PASS" if self.passed else "FAIL"
        if "error" in self.detail:
            return f"[{tag}] {self.check_id}: {self.detail['error']}"
        if self.exact:
            return f"[{tag}] {self.check_id}: exact, {self.mismatches} mismatches ({self.anchor})"
        rel = "<" if self.passed else ">="
        return (f"[{tag}] {self.check_id}: max dev {self.max_deviation:.3e} "
                f"{rel} tol {self.tolerance:.3e} ({self.anchor})")


@dataclass(frozen=True)
class Check:
    check_id: str
    suite: str
    anchor: str
    func: Callable[..., Outcome]
    slow: bool = False


REGISTRY: dict[str, Check] = {}


def check(check_id: str, anchor: str, slow: bool = False):
    suite = check_id.split(".", 1)[0]

    def deco(fn):
        REGISTRY[check_id] = Check(check_id, suite, anchor, fn, slow)
        return fn

    return deco


@dataclass(frozen=True)
class SuiteManifest:
    name: str
    check_ids: tuple[str, ...]
    context: PrecisionContext = PrecisionContext()
    points: tuple[HalfPlanePoint, ...] = DEFAULT_POINTS

    def __post_init__(self):
        missing = [c for c in self.check_ids if c not in REGISTRY]
        if missing:
            raise KeyError(f"suite {self.name!r} lists unregistered checks: {missing}")


SUITE_NAMES = ("exact", "modularity", "shadow", "eigenvalue", "limit", "example", "twisted", "hygiene", "all")


class UnknownSuite(KeyError):
    pass


def manifest(name: str, ctx: PrecisionContext | None = None, points=None) -> SuiteManifest:
    if name not in SUITE_NAMES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    ids = sorted(c.check_id for c in REGISTRY.values() if name == "all" or c.suite == name)
    return SuiteManifest(name, tuple(ids), ctx or PrecisionContext(), tuple(points or DEFAULT_POINTS))


def _to_float(x) -> float | None:
    if x is None:
        return None
    return float(mpmath.mpf(x)) if not isinstance(x, float) else x


def run_check(check_id: str, ctx: PrecisionContext, points, slow: bool = False) -> CheckReport:
    chk = REGISTRY[check_id]
    t0 = time.perf_counter()
    if chk.slow and not slow:
        return CheckReport(check_id, chk.anchor, [], None, None, "skipped", 0.0,
                           detail={"reason": "slow check; enable with --slow"})
    try:
        out = chk.func(ctx, tuple(points))
    except (ArithmeticError, StencilError) as exc:
        # a pinned order/cutoff/step that cannot meet the target is a failed check
        return CheckReport(check_id, chk.anchor, [str(p) for p in points], None, None, "fail",
                           round(time.perf_counter() - t0, 3),
                           detail={"error": f"{type(exc).__name__}: {exc}"})
    elapsed = time.perf_counter() - t0
    if out.skipped:
        status = "skipped"
    elif out.exact:
        status = "pass" if out.mismatches == 0 else "fail"
    else:
        status = "pass" if out.deviation < out.tolerance else "fail"
    return CheckReport(
        check_id=check_id,
        anchor=chk.anchor,
        points=[str(p) for p in out.points],
        max_deviation=None if out.exact else _to_float(out.deviation),
        tolerance=None if out.exact else _to_float(out.tolerance),
        status=status,
        runtime=round(elapsed, 3),
        exact=out.exact,
        mismatches=out.mismatches,
        detail=out.detail,
    )


def run_suite(name: str, ctx: PrecisionContext | None = None, points=None, slow: bool = False) -> list[CheckReport]:
    """Run every check of a suite; reports come back sorted by check id."""
    m = manifest(name, ctx, points)
    reports = [run_check(cid, m.context, m.points, slow) for cid in m.check_ids]
    return sorted(reports, key=lambda r: r.check_id)


def _max(devs) -> mpf:
    return max(devs) if devs else mpf(0)


def _exact_outcome(pairs, **detail) -> Outcome:
    """pairs: iterable of (label, got, expected)."""
    bad = [label for label, got, want in pairs if got != want]
    return Outcome(exact=True, mismatches=len(bad), detail={"first_mismatches": bad[:5], **detail})


# ---------------------------------------------------------------------------
# exact suite

@check("exact.moment_oracle", "moment series = brute-force s_k(n), k <= 5, n <= 25")
def _moment_oracle(ctx, points):
    pairs = []
    for k in range(1, 6):
        ser = xs.moment_series(k, 25)
        pairs += [((k, n), ser[n], po.s_oracle(k, n)) for n in range(26)]
    return _exact_outcome(pairs, compared=len(pairs))


def g2_series_geometric(order: int) -> xs.PowerSeries:
    """sum_m q^m / (m^2 (1 + q^m)^2), expanded term by term."""
    coeffs = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1):
        for j, n in enumerate(range(m, order + 1, m), start=1):
            coeffs[n] += Fraction((-1) ** (j + 1) * j, m * m)
    return xs.PowerSeries(tuple(coeffs))


@check("exact.generating_identities", "s_1 = (-q;q) g_1 and s_2 = (-q;q)(g_1^2 + g_2) through q^40")
def _generating_identities(ctx, points):
    N = 40
    poch = xs.pochhammer_neg_q(N)
    g1 = xs.g_series_geometric(N)
    g2 = g2_series_geometric(N)
    s1 = poch * g1
    s2 = poch * (g1 * g1 + g2)
    pairs = []
    for n in range(N + 1):
        pairs.append((("s1", n), s1[n], po.s_oracle(1, n)))
        pairs.append((("s2", n), s2[n], po.s_oracle(2, n)))
        pairs.append((("g2", n), g2[n], xs.g_series(2, N)[n]))
    return _exact_outcome(pairs, order=N)


@check("exact.distinct_counts", "coefficients of (-q;q) count distinct partitions, n <= 40")
def _distinct_counts(ctx, points):
    b = xs.pochhammer_neg_q(40)
    return _exact_outcome(
        (n, b[n], sum(1 for _ in po.enumerate_distinct(n))) for n in range(41)
    )


@check("exact.g1_alternating", "g_1 coefficient = sum_{m|n} (-1)^{n/m+1}/m, n <= 50")
def _g1_alternating(ctx, points):
    g = xs.g_series(1, 50)
    geo = xs.g_series_geometric(50)
    return _exact_outcome((n, g[n], geo[n]) for n in range(51))


@check("exact.g2_sigma_form", "g_2 = sum n sigma_{-3}(n) (q^n - 4 q^{2n}) through q^40")
def _g2_sigma_form(ctx, points):
    N = 40
    alt = [Fraction(0)] * (N + 1)
    for n in range(1, N + 1):
        c = n * xs.sigma(-3, n)
        alt[n] += c
        if 2 * n <= N:
            alt[2 * n] -= 4 * c
    g = xs.g_series(2, N)
    return _exact_outcome((n, g[n], alt[n]) for n in range(N + 1))


@check("exact.sigma_multiplicative", "sigma_j(mn) = sigma_j(m) sigma_j(n) for coprime m, n <= 30")
def _sigma_multiplicative(ctx, points):
    from math import gcd

    pairs = []
    for j in (-3, -1, 0, 1, 2):
        for m in range(1, 31):
            for n in range(1, 31):
                if gcd(m, n) == 1:
                    pairs.append(((j, m, n), xs.sigma(j, m * n), xs.sigma(j, m) * xs.sigma(j, n)))
    return _exact_outcome(pairs)


@check("exact.sigma_identity", "n sigma_{-1}(n) = sigma_1(n), n <= 100")
def _sigma_identity(ctx, points):
    return _exact_outcome((n, n * xs.sigma(-1, n), xs.sigma(1, n)) for n in range(1, 101))


@check("exact.eichler_derivative", "D^{2k-1} of the Eichler integral = (B_2k/4k)(1 - E_2k), k = 2, 3, q^20")
def _eichler_derivative(ctx, points):
    pairs = []
    N = 20
    for k in (2, 3):
        lhs = xs.eichler_coeffs(k, N).theta(2 * k - 1)
        bk = xs.bernoulli(2 * k)
        # E_2k = 1 - (4k / B_2k) sum sigma_{2k-1}(n) q^n
        e2k = [Fraction(1)] + [-Fraction(4 * k) / bk * xs.sigma(2 * k - 1, n) for n in range(1, N + 1)]
        rhs = [bk / (4 * k) * ((1 if n == 0 else 0) - e2k[n]) for n in range(N + 1)]
        pairs += [((k, n), lhs[n], rhs[n]) for n in range(N + 1)]
    return _exact_outcome(pairs)


@check("exact.holomorphic_difference", "holomorphic parts of raised completions combine to g_k, k = 2, 3, q^30")
def _holomorphic_difference(ctx, points):
    pairs = []
    for k in (2, 3):
        d = ms.holomorphic_difference(k, 30)
        g = xs.g_series(k, 30)
        pairs += [((k, n), d[n], g[n]) for n in range(31)]
    return _exact_outcome(pairs)


@check("exact.rising_factorial", "(2-2k+r)_{k-1-r} = (-1)^{k+r+1}(2k-r-2)!/(k-1)!, k <= 6")
def _rising_factorial(ctx, points):
    pairs = []
    for k in range(2, 7):
        for r in range(k):
            got = Fraction(ms.rising_factorial(2 - 2 * k + r, k - 1 - r))
            want = Fraction((-1) ** (k + r + 1) * factorial(2 * k - r - 2), factorial(k - 1))
            pairs.append(((k, r), got, want))
    return _exact_outcome(pairs)


@check("exact.bernoulli_zeta", "B_2k = 2(-1)^{k+1}(2k)! zeta(2k)/(2 pi)^{2k}, k <= 8")
def _bernoulli_zeta(ctx, points):
    devs = []
    with ctx.working():
        for k in range(1, 9):
            b = xs.bernoulli(2 * k)
            rhs = 2 * (-1) ** (k + 1) * mpmath.factorial(2 * k) * zeta_int(2 * k, ctx) / (2 * mp.pi) ** (2 * k)
            devs.append(abs(_mpf(b) - rhs) / abs(_mpf(b)))
    return Outcome(_max(devs), identity_tolerance(ctx))


# ---------------------------------------------------------------------------
# modularity suite

def _invariance(ctx, points, fn, words=GAMMA0_2_WORDS):
    devs, where = [], []
    for p in points:
        base = fn(p)
        for name, g in words:
            gp, _ = ms.mobius_act(g, p)
            d = abs(fn(gp) - base)
            devs.append(d)
            where.append((str(p), name))
    with ctx.working():
        worst = _max(devs)
    return worst, where[devs.index(worst)] if devs else None


@check("modularity.g1_hat", "completed g_1 is invariant under Gamma_0(2)")
def _mod_g1(ctx, points):
    dev, worst = _invariance(ctx, points, lambda p: ms.g1_hat(p, ctx))
    return Outcome(dev, identity_tolerance(ctx), list(points),
                   detail={"words": [w for w, _ in GAMMA0_2_WORDS], "worst": worst})


@check("modularity.gk_hat", "completed g_k (k = 2, 3, 4) is invariant under Gamma_0(2)")
def _mod_gk(ctx, points):
    devs = {}
    for k in (2, 3, 4):
        devs[k], _ = _invariance(ctx, points, lambda p: ms.gk_hat(k, p, ctx))
    return Outcome(max(devs.values()), identity_tolerance(ctx), list(points),
                   detail={f"k={k}": float(d) for k, d in devs.items()})


@check("modularity.eisenstein", "E(tau; 2) is invariant under T and S")
def _mod_eis(ctx, points):
    dev, _ = _invariance(ctx, points, lambda p: ms.eisenstein_value(p, 2, ctx), (("T", ms.T), ("S", ms.S)))
    return Outcome(dev, identity_tolerance(ctx), list(points))


def _weight_invariance(ctx, points, fn, weight, words):
    devs = []
    for p in points:
        base = fn(p)
        for _, g in words:
            gp, fac = ms.mobius_act(g, p)
            with ctx.working():
                devs.append(abs(ms.factor_mpc(fac) ** (-weight) * fn(gp) - base))
    with ctx.working():
        return _max(devs)


@check("modularity.eichler_completed", "completed Eichler integral at ell*tau has weight 2-2k on Gamma_0(ell)")
def _mod_eichler(ctx, points):
    devs = {}
    for k in (2, 3):
        devs[(k, 1)] = _weight_invariance(ctx, points, lambda p: ms.eichler_completed(k, 1, p, ctx), 2 - 2 * k,
                                          (("T", ms.T), ("S", ms.S)))
        devs[(k, 2)] = _weight_invariance(ctx, points, lambda p: ms.eichler_completed(k, 2, p, ctx), 2 - 2 * k,
                                          (("T", ms.T), ("A", ms.A2)))
    # relative to the size of the values, which grow like v^{2k-1}
    with ctx.working():
        scale = max(abs(ms.eichler_completed(3, 2, p, ctx)) for p in points)
    worst = max(devs.values())
    return Outcome(worst / max(scale, 1), identity_tolerance(ctx), list(points),
                   detail={f"k={k},ell={l}": float(d) for (k, l), d in devs.items()})


@check("modularity.eichler_sesqui", "sesquiharmonic Eichler integral at ell*tau is invariant on Gamma_0(ell)")
def _mod_sesqui(ctx, points):
    d1 = _weight_invariance(ctx, points, lambda p: ms.eichler_sesqui(1, p, ctx), 0, (("S", ms.S),))
    d2 = _weight_invariance(ctx, points, lambda p: ms.eichler_sesqui(2, p, ctx), 0, (("A", ms.A2),))
    return Outcome(max(d1, d2), identity_tolerance(ctx), list(points),
                   detail={"ell=1": float(d1), "ell=2": float(d2)})


@check("modularity.e2_hat", "completed E_2 transforms with weight 2 under S")
def _mod_e2(ctx, points):
    dev = _weight_invariance(ctx, points, lambda p: ms.e2_hat(p, ctx), 2, (("S", ms.S),))
    return Outcome(dev, identity_tolerance(ctx), list(points))


@check("modularity.eta", "eta(tau + 1) = e^{pi i/12} eta(tau), eta(-1/tau) = sqrt(-i tau) eta(tau)")
def _mod_eta(ctx, points):
    devs = []
    for p in points:
        with ctx.working():
            e = dedekind_eta(p, ctx)
            et = dedekind_eta(p.shifted(du=1), ctx)
            sp, _ = ms.mobius_act(ms.S, p)
            es = dedekind_eta(sp, ctx)
            tau = p.to_mpc()
            devs.append(abs(et - mpmath.expjpi(mpf(1) / 12) * e) / abs(e))
            devs.append(abs(es - mpmath.sqrt(-mpc(0, 1) * tau) * e) / abs(es))
    with ctx.working():
        return Outcome(_max(devs), identity_tolerance(ctx), list(points))


@check("modularity.kronecker", "sqrt(v)|eta|^2 form of the Kronecker limit is SL_2(Z)-invariant")
def _mod_kr(ctx, points):
    dev, _ = _invariance(ctx, points, lambda p: ms.kronecker_limit(p, ctx), (("T", ms.T), ("S", ms.S)))
    return Outcome(dev, identity_tolerance(ctx), list(points))


# ---------------------------------------------------------------------------
# shadow suite

@check("shadow.g1_hat", "finite-difference xi_0 of completed g_1 = pi/6 (E2hat(tau) - 4 E2hat(2 tau))")
def _shadow_g1(ctx, points):
    cfg = StencilConfig.from_context(ctx)
    devs = []
    with ctx.working():
        for p in points:
            fd = xi_apply(0, lambda t: ms.g1_hat(t, ctx), p, cfg)
            closed = ms.shadow_g1_closed(p, ctx)
            devs.append(abs(fd - closed) / abs(closed))
        return Outcome(_max(devs), SHADOW_TOL, list(points),
                       detail={"h": str(cfg.h), "order": cfg.order, "richardson": cfg.richardson})


@check("shadow.sesqui_level_one", "finite-difference xi_0 of the sesquiharmonic Eichler integral matches its closed form")
def _shadow_sesqui(ctx, points):
    cfg = StencilConfig.from_context(ctx)
    devs = []
    with ctx.working():
        for p in points:
            fd = xi_apply(0, lambda t: ms.eichler_sesqui(1, t, ctx), p, cfg)
            closed = ms.shadow_sesqui_closed(p, ctx)
            devs.append(abs(fd - closed) / abs(closed))
        return Outcome(_max(devs), SHADOW_TOL, list(points))


@check("shadow.sesquiharmonic", "weight-2 Laplacian annihilates the shadow of completed g_1")
def _shadow_harmonic(ctx, points):
    cfg = StencilConfig.from_context(ctx)
    devs = []
    with ctx.working():
        for p in points:
            f = lambda t: ms.shadow_g1_closed(t, ctx)  # noqa: E731
            devs.append(abs(laplacian_apply(2, f, p, cfg)) / abs(f(p)))
        return Outcome(_max(devs), EIGEN_TOL, list(points))


@check("shadow.nested", "xi_2 composed with xi_0 equals minus the weight-0 Laplacian on E(tau; 2)")
def _shadow_nested(ctx, points):
    p = points[0]
    inner = StencilConfig(Fraction(1, 2 ** (ctx.prec // 8)), 4, 1)
    outer = StencilConfig(Fraction(1, 2 ** (ctx.prec // 16)), 4, 1)
    with ctx.working():
        f = lambda t: ms.eisenstein_value(t, 2, ctx)  # noqa: E731
        nested = xi_apply(2, lambda t: xi_apply(0, f, t, inner), p, outer)
        lap = laplacian_apply(0, f, p, StencilConfig.from_context(ctx))
        dev = abs(nested + lap) / abs(lap)
        return Outcome(dev, NESTED_TOL, [p])


# ---------------------------------------------------------------------------
# eigenvalue suite

@check("eigenvalue.gk_hat", "finite-difference Laplacian of completed g_k equals k(1-k) times it, k = 2, 3")
def _eig_gk(ctx, points):
    cfg = StencilConfig.from_context(ctx)
    devs = {}
    with ctx.working():
        for k in (2, 3):
            for p in points:
                f = lambda t: ms.gk_hat(k, t, ctx)  # noqa: E731
                val = f(p)
                devs[(k, str(p))] = abs(laplacian_apply(0, f, p, cfg) - k * (1 - k) * val) / abs(val)
        return Outcome(max(devs.values()), EIGEN_TOL, list(points))


@check("eigenvalue.eisenstein", "Laplacian of E(tau; 2) equals -2 E(tau; 2)")
def _eig_eis(ctx, points):
    cfg = StencilConfig.from_context(ctx)
    devs = []
    with ctx.working():
        for p in points:
            f = lambda t: ms.eisenstein_value(t, 2, ctx)  # noqa: E731
            val = f(p)
            devs.append(abs(laplacian_apply(0, f, p, cfg) + 2 * val) / abs(val))
        return Outcome(_max(devs), EIGEN_TOL, list(points))


@check("eigenvalue.raising_dual_path", "raised Eichler integral: direct = closed Bessel form = multiple of E(tau; k)")
def _raising(ctx, points):
    pts = list(points[:4])
    devs = {}
    with ctx.working():
        for k in (2, 3):
            for p in pts:
                d = ms.raising_eichler_direct(k, p, ctx)
                c = ms.raising_eichler_closed(k, p, ctx)
                e = ms.raising_eisenstein_multiple(k, p, ctx)
                devs[(k, str(p))] = max(abs(d - c), abs(c - e), abs(d - e)) / abs(e)
        return Outcome(max(devs.values()), identity_tolerance(ctx), pts)


@check("eigenvalue.holomorphic_leading", "leading Bessel term of the raised completion gives n^{k-1} sigma_{1-2k}(n)")
def _hol_leading(ctx, points):
    devs = []
    with ctx.working():
        for k in (2, 3, 4):
            hol = ms.holomorphic_part_extract(k, 12)
            for n in range(1, 13):
                want = _mpf(hol[n])
                devs.append(abs(ms.bessel_leading_coefficient(k, n, ctx) - want) / want)
        return Outcome(_max(devs), identity_tolerance(ctx))


# ---------------------------------------------------------------------------
# limit suite

@check("limit.kronecker", "completed g_1 = -pi/6 (2 Kr(2 tau) - Kr(tau)) via the eta closed form")
def _limit_kr(ctx, points):
    devs = []
    with ctx.working():
        for p in points:
            devs.append(abs(ms.g1_hat(p, ctx) - ms.g1_hat_via_kronecker(p, ctx)))
        return Outcome(_max(devs), identity_tolerance(ctx), list(points),
                       detail={"derived_identity": True,
                               "note": "pole terms regrouped as 2[E(2tau;s)-pole] - [E(tau;s)-pole]"})


@check("limit.sesqui_difference", "sesquiharmonic Eichler integral: E(tau) - 2 E(2 tau) = completed g_1")
def _limit_sesqui(ctx, points):
    devs = []
    with ctx.working():
        for p in points:
            lhs = ms.eichler_sesqui(1, p, ctx) - 2 * ms.eichler_sesqui(2, p, ctx)
            devs.append(abs(lhs - ms.g1_hat(p, ctx)))
        return Outcome(_max(devs), identity_tolerance(ctx), list(points))


@check("limit.eta_log", "g_1(q) = 2 Log eta(2 tau) - pi i tau/4 - Log eta(tau) modulo 2 pi i")
def _limit_eta(ctx, points):
    devs, windings, unexpected = [], {}, []
    for p in points:
        cmp = ms.g1_eta_identity(p, ctx)
        windings[str(p)] = cmp.winding
        devs.append(cmp.residual)
        # principal branches agree once v >= 1/2
        if p.v >= Fraction(1, 2) and cmp.winding != 0:
            unexpected.append(str(p))
    with ctx.working():
        dev = mpf("inf") if unexpected else _max(devs)
    return Outcome(dev, identity_tolerance(ctx), list(points), detail={"windings": windings})


@check("limit.direct", "E(tau; 1+eps) - 3/(pi eps) extrapolated to eps = 0 matches the Kronecker closed form", slow=True)
def _limit_direct(ctx, points):
    pts = [HalfPlanePoint(0, 1), points[0]]
    rel = []
    detail = {}
    eps_small = min(LIMIT_EPS)
    for p in pts:
        extrap, raw = ms.kronecker_extrapolated(p, LIMIT_EPS, ctx)
        ref = ms.kronecker_limit(p, ctx)
        with ctx.working():
            # pass criterion: |extrapolated - ref| < 10 eps |ref|, i.e. relative < 10 eps
            rel.append(abs(extrap - ref) / abs(ref))
            detail[str(p)] = {"extrapolated": mpmath.nstr(extrap, 20), "closed_form": mpmath.nstr(ref, 20),
                              "raw": [mpmath.nstr(r, 12) for r in raw]}
    return Outcome(max(rel), 10 * float(eps_small), pts, detail=detail)


# ---------------------------------------------------------------------------
# example suite (k = 2)

@check("example.g2_hat_dual", "completed g_2 from E(tau;2) equals the explicit g_2, G_2, zeta(3) expansion")
def _example_g2(ctx, points):
    devs = []
    with ctx.working():
        for p in points:
            devs.append(abs(ms.gk_hat(2, p, ctx) - ms.g2_hat_explicit(p, ctx)))
        return Outcome(_max(devs), identity_tolerance(ctx), list(points))


@check("example.srp3_oracle", "(-q;q) G_2 generates the cubic reciprocal sums, n <= 30")
def _example_srp3(ctx, points):
    ser = xs.srp3_series(30)
    return _exact_outcome((n, ser[n], po.s_star_oracle(3, n)) for n in range(31))


@check("example.phi_values", "phi(2) = 45 zeta(3)/pi^3 and phi(n,2) = (90/pi^2) n^{3/2} sigma_{-3}(n)")
def _example_phi(ctx, points):
    devs = []
    with ctx.working():
        z3 = zeta_int(3, ctx)
        devs.append(abs(ms.phi_constant(2, ctx) - 45 * z3 / mp.pi**3))
        for n in range(1, 21):
            want = 90 / mp.pi**2 * mpf(n) ** 1.5 * _mpf(xs.sigma(-3, n))
            devs.append(abs(ms.phi_coefficient(n, 2, ctx) - want) / want)
        pref = ms.gk_hat_prefactor(2) * 1  # c with c pi^2 = pi^2/90
        if pref != Fraction(1, 90):
            devs.append(mpf("inf"))
        return Outcome(_max(devs), identity_tolerance(ctx), detail={"prefactor": str(pref) + " pi^2"})


# ---------------------------------------------------------------------------
# twisted suite

@check("twisted.oracle", "twisted series = brute-force twisted reciprocal sums, p = 3, 5, n <= 30")
def _twisted_oracle(ctx, points):
    pairs = []
    for p in (3, 5):
        ser = xs.twisted_series(p, 30)
        pairs += [((p, n), ser[n], po.s_twisted_oracle(p, n)) for n in range(31)]
    return _exact_outcome(pairs)


@check("twisted.closed_forms", "both closed forms of the twisted inner coefficient agree, p = 3, 5, 7, n <= 50")
def _twisted_forms(ctx, points):
    pairs = []
    for p in (3, 5, 7):
        a = xs.twisted_inner_coeffs(p, 50, "divisor")
        b = xs.twisted_inner_coeffs(p, 50, "alternating")
        pairs += [((p, n), a[n], b[n]) for n in range(51)]
    return _exact_outcome(pairs)


# ---------------------------------------------------------------------------
# numerical hygiene

def _stability_quantities(ctx: PrecisionContext, p: HalfPlanePoint) -> dict[str, tuple[object, object]]:
    """Representative values of every float criterion, with the tolerance each
    is judged against at this precision (absolute for exact expansions,
    relative for finite differences)."""
    tol = identity_tolerance(ctx)
    cfg = StencilConfig.from_context(ctx)
    with ctx.working():
        out = {
            "g1_hat": (ms.g1_hat(p, ctx), tol),
            "g1_hat_kronecker": (ms.g1_hat_via_kronecker(p, ctx), tol),
            "g2_hat": (ms.gk_hat(2, p, ctx), tol),
            "g3_hat": (ms.gk_hat(3, p, ctx), tol),
            "g4_hat": (ms.gk_hat(4, p, ctx), tol),
            "g2_hat_explicit": (ms.g2_hat_explicit(p, ctx), tol),
            "raising_direct_k2": (ms.raising_eichler_direct(2, p, ctx).real, tol),
            "raising_closed_k3": (ms.raising_eichler_closed(3, p, ctx).real, tol),
            "shadow_fd": (xi_apply(0, lambda t: ms.g1_hat(t, ctx), p, cfg), SHADOW_TOL),
            "laplacian_fd_g2": (laplacian_apply(0, lambda t: ms.gk_hat(2, t, ctx), p, cfg), EIGEN_TOL),
        }
    return out


@check("hygiene.precision_stability", "doubling the precision moves every float result by less than the coarse tolerance")
def _hyg_prec(ctx, points):
    pts = list(points)
    fine = ctx.doubled()
    worst = mpf(0)
    detail = {}
    for p in pts:
        coarse = _stability_quantities(ctx, p)
        refined = _stability_quantities(fine, p)
        with fine.working():
            for name, (val, tol) in coarse.items():
                diff = abs(val - refined[name][0])
                if tol in (SHADOW_TOL, EIGEN_TOL):
                    diff = diff / abs(refined[name][0])
                ratio = diff / mpf(tol)
                detail[f"{p}:{name}"] = float(ratio)
                worst = max(worst, ratio)
    # expressed as a fraction of each quantity's own tolerance
    return Outcome(worst, 1.0, pts, detail=detail)


@check("hygiene.stencil_rate", "halving the step cuts stencil error by ~2^order (within a factor of 2)")
def _hyg_rate(ctx, points):
    p = points[0]
    rates = {}
    with ctx.working():
        g2 = lambda t: ms.gk_hat(2, t, ctx)  # noqa: E731
        g2p = g2(p)
        closed = ms.shadow_g1_closed(p, ctx)
        for order in (2, 4):
            errs_eig, errs_sh = [], []
            for h in (Fraction(1, 16), Fraction(1, 32)):
                cfg = StencilConfig(h, order, 0)
                errs_eig.append(abs(laplacian_apply(0, g2, p, cfg) + 2 * g2p))
                errs_sh.append(abs(xi_apply(0, lambda t: ms.g1_hat(t, ctx), p, cfg) - closed))
            rates[f"laplacian_order{order}"] = (order, errs_eig[0] / errs_eig[1])
            rates[f"shadow_order{order}"] = (order, errs_sh[0] / errs_sh[1])
        # deviation: worst log2 distance between observed and nominal rate, limit 1 (factor 2)
        dev = max(abs(mpmath.log(r, 2) - o) for o, r in rates.values())
        return Outcome(dev, 1.0, [p], detail={k: float(r) for k, (_, r) in rates.items()})
