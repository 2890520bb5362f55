"""Truncated q-expansions over the rationals and the arithmetic behind them.

Every series carries its truncation order explicitly.  Binary operations on
series of different orders truncate to the smaller one, so a coefficient is
never reported past the point where it is actually known.
"""

from __future__ import annotations

import csv
import io
import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class PowerSeries:
    """Sum of ``coeffs[n] * q**n`` for ``n <= order``, plus ``O(q**(order+1))``.

    ``growth`` optionally records a majorant ``(A, B)`` with
    ``|c_n| <= A * n**B`` valid for *all* n, including those past the
    truncation.  Numerical evaluation uses it to bound the discarded tail.
    """

    coeffs: tuple[Fraction, ...]
    growth: tuple[float, float] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a power series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], growth=None) -> "PowerSeries":
        return cls(tuple(Fraction(c) for c in coeffs), growth)

    @classmethod
    def constant(cls, c: Scalar, order: int) -> "PowerSeries":
        # growth (0, 0): an exact polynomial, nothing beyond the truncation
        return cls((Fraction(c),) + (Fraction(0),) * order, (0.0, 0.0))

    @classmethod
    def monomial(cls, n: int, order: int, c: Scalar = 1) -> "PowerSeries":
        coeffs = [Fraction(0)] * (order + 1)
        if n <= order:
            coeffs[n] = Fraction(c)
        return cls(tuple(coeffs), (0.0, 0.0) if n <= order else None)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient {n} is beyond the truncation order {self.order}")
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1], self.growth)

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return PowerSeries(tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))
        if isinstance(other, (int, Fraction)):
            return PowerSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs), self.growth)

    def __sub__(self, other):
        if isinstance(other, (PowerSeries, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return PowerSeries(tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = PowerSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse, by recursive division; needs c_0 != 0."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [Fraction(1) / c0]
        for n in range(1, self.order + 1):
            acc = sum((self.coeffs[m] * out[n - m] for m in range(1, n + 1)), Fraction(0))
            out.append(-acc / c0)
        return PowerSeries(tuple(out))

    def dilate(self, m: int, order: int | None = None) -> "PowerSeries":
        """Substitute q -> q**m."""
        if m < 1:
            raise ValueError("dilation factor must be a positive integer")
        order = self.order * m if order is None else order
        out = [Fraction(0)] * (order + 1)
        for n, c in enumerate(self.coeffs):
            if n * m > order:
                break
            out[n * m] = c
        if order > self.order * m:
            raise ValueError("dilated series would claim coefficients that are not known")
        growth = None
        if self.growth is not None:
            a, b = self.growth
            growth = (a, b)  # n**B is monotone, so |c_{mn}| bound still holds at index mn
        return PowerSeries(tuple(out), growth)

    def theta(self, times: int = 1) -> "PowerSeries":
        """Apply ``q d/dq`` the given number of times."""
        out = tuple(c * n**times for n, c in enumerate(self.coeffs))
        growth = None
        if self.growth is not None:
            growth = (self.growth[0], self.growth[1] + times)
        return PowerSeries(out, growth)

    def with_growth(self, a: float, b: float) -> "PowerSeries":
        return PowerSeries(self.coeffs, (float(a), float(b)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "numerator", "denominator"])
        for n, c in enumerate(self.coeffs):
            writer.writerow([n, c.numerator, c.denominator])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps([f"{c.numerator}/{c.denominator}" for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "PowerSeries":
        return cls(tuple(Fraction(s) for s in json.loads(text)))

    @classmethod
    def from_csv(cls, text: str) -> "PowerSeries":
        rows = list(csv.DictReader(io.StringIO(text)))
        coeffs = [Fraction(0)] * len(rows)
        for row in rows:
            coeffs[int(row["n"])] = Fraction(int(row["numerator"]), int(row["denominator"]))
        return cls(tuple(coeffs))


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    # skip zero coefficients; most of our series are sparse at small n
    nz_a = [(i, c) for i, c in enumerate(ac[: n + 1]) if c]
    out = [Fraction(0)] * (n + 1)
    for i, c in nz_a:
        for j in range(n + 1 - i):
            d = bc[j]
            if d:
                out[i + j] += c * d
    return PowerSeries(tuple(out))


class ArithmeticCache:
    """Memo tables for divisor sums, Bernoulli numbers and distinct-partition
    counts.  Tables only grow; writes are serialized by a lock so one cache
    can be shared between threads."""

    def __init__(self):
        self._lock = threading.Lock()
        self._divisors: dict[int, tuple[int, ...]] = {}
        self._sigma: dict[tuple[int, int], Fraction] = {}
        self._bernoulli: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
        self._distinct: list[int] = [1]

    def divisors(self, n: int) -> tuple[int, ...]:
        if n < 1:
            raise ValueError(f"divisors are only defined here for n >= 1, got {n}")
        d = self._divisors.get(n)
        if d is None:
            small, large = [], []
            i = 1
            while i * i <= n:
                if n % i == 0:
                    small.append(i)
                    if i * i != n:
                        large.append(n // i)
                i += 1
            d = tuple(small + large[::-1])
            with self._lock:
                self._divisors[n] = d
        return d

    def sigma(self, j: int, n: int) -> Fraction:
        if n < 1:
            raise ValueError(f"sigma(j, n) needs n >= 1, got n={n}")
        key = (j, n)
        val = self._sigma.get(key)
        if val is None:
            if j >= 0:
                val = Fraction(sum(d**j for d in self.divisors(n)))
            else:
                # sigma_{-m}(n) = sigma_m(n) / n**m
                m = -j
                val = Fraction(sum(d**m for d in self.divisors(n)), n**m)
            with self._lock:
                self._sigma[key] = val
        return val

    def bernoulli(self, m: int) -> Fraction:
        with self._lock:
            table = self._bernoulli
            while len(table) <= m:
                k = len(table)
                if k % 2 == 1:
                    table.append(Fraction(0))
                    continue
                acc = sum((comb(k + 1, j) * table[j] for j in range(k)), Fraction(0))
                table.append(-acc / (k + 1))
            return table[m]

    def distinct_counts(self, order: int) -> list[int]:
        """b(0..order), the coefficients of prod_{m>=1} (1 + q**m)."""
        with self._lock:
            have = len(self._distinct) - 1
            if have < order:
                # rebuild to the new order; the product is cheap in integers
                b = [0] * (order + 1)
                b[0] = 1
                for m in range(1, order + 1):
                    for n in range(order, m - 1, -1):
                        b[n] += b[n - m]
                self._distinct = b
            return self._distinct[: order + 1]


DEFAULT_CACHE = ArithmeticCache()


def sigma(j: int, n: int, cache: ArithmeticCache = DEFAULT_CACHE) -> Fraction:
    """Exact divisor sum ``sum_{d | n} d**j``; j may be negative."""
    return cache.sigma(j, n)


def bernoulli(m: int, cache: ArithmeticCache = DEFAULT_CACHE) -> Fraction:
    """Exact Bernoulli number B_m for even m >= 2 (convention B_1 = -1/2)."""
    if m < 2 or m % 2:
        raise ValueError(f"bernoulli() takes an even index >= 2, got {m}")
    return cache.bernoulli(m)


def pochhammer_neg_q(order: int, cache: ArithmeticCache = DEFAULT_CACHE) -> PowerSeries:
    """Truncation of ``(-q; q)_inf = prod_{m>=1} (1 + q**m)``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return PowerSeries(tuple(Fraction(b) for b in cache.distinct_counts(order)))


def sigma_series(j: int, order: int) -> PowerSeries:
    """``sum_{n>=1} sigma_j(n) q**n``."""
    coeffs = [Fraction(0)] + [sigma(j, n) for n in range(1, order + 1)]
    if j <= -2:
        growth = (1.65, 0.0)  # sigma_j(n) <= zeta(2) < 1.65
    elif j == -1:
        growth = (1.0, 1.0)   # sigma_{-1}(n) <= H_n <= n
    else:
        growth = (1.0, float(j + 1))
    return PowerSeries(tuple(coeffs), growth)


@lru_cache(maxsize=64)
def eichler_coeffs(k: int, order: int) -> PowerSeries:
    """Eichler integral ``sum sigma_{1-2k}(n) q**n`` of the weight-2k Eisenstein series."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return sigma_series(1 - 2 * k, order)


@lru_cache(maxsize=64)
def eichler_difference(k: int, order: int) -> PowerSeries:
    """The combination ``E(tau) - 2 E(2 tau)`` of Eichler integrals of weight 2-2k.

    For k = 2 this is the series whose product with (-q; q)_inf counts the
    cubic reciprocal power sums.
    """
    base = eichler_coeffs(k, order)
    coeffs = list(base.coeffs)
    for m in range(1, order // 2 + 1):
        coeffs[2 * m] -= 2 * base.coeffs[m]
    a, b = base.growth
    return PowerSeries(tuple(coeffs), (3 * a, b))


@lru_cache(maxsize=64)
def g_series(k: int, order: int) -> PowerSeries:
    """Coefficients ``n**(k-1) * (sigma_{1-2k}(n) - 2 [2|n] sigma_{1-2k}(n/2))``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if order < 0:
        raise ValueError("order must be non-negative")
    j = 1 - 2 * k
    coeffs = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        c = sigma(j, n)
        if n % 2 == 0:
            c -= 2 * sigma(j, n // 2)
        coeffs[n] = c * n ** (k - 1)
    if k == 1:
        growth = (3.0, 1.0)
    else:
        growth = (4.0, float(k - 1))
    return PowerSeries(tuple(coeffs), growth)


def g_series_geometric(order: int) -> PowerSeries:
    """``sum_m q**m / (m (1 + q**m))`` expanded term by term (slow oracle for k = 1)."""
    coeffs = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1):
        sign = 1
        for n in range(m, order + 1, m):
            coeffs[n] += Fraction(sign, m)
            sign = -sign
    return PowerSeries(tuple(coeffs))


def bell_complete(values: Sequence) -> PowerSeries:
    """Complete exponential Bell polynomial ``Y_k(x_1, ..., x_k)``.

    Uses ``Y_0 = 1`` and ``Y_{m+1} = sum_j C(m, j) Y_{m-j} x_{j+1}``.  The
    entries may be series or plain rationals.
    """
    if not values:
        raise ValueError("bell_complete needs at least one argument")
    series = [v for v in values if isinstance(v, PowerSeries)]
    if series:
        orders = {s.order for s in series}
        if len(orders) != 1:
            raise ValueError(f"all series must share one order, got {sorted(orders)}")
        one = PowerSeries.constant(1, orders.pop())
    else:
        one = Fraction(1)
    ys = [one]
    for m in range(len(values)):
        acc = None
        for j in range(m + 1):
            term = comb(m, j) * (ys[m - j] * values[j])
            acc = term if acc is None else acc + term
        ys.append(acc)
    return ys[-1]


@lru_cache(maxsize=64)
def moment_series(k: int, order: int) -> PowerSeries:
    """``sum_n s_k(n) q**n`` as ``(-q; q)_inf * Y_k(g_1, ..., g_k)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    gs = [g_series(j, order) for j in range(1, k + 1)]
    return pochhammer_neg_q(order) * bell_complete(gs)


def srp3_series(order: int) -> PowerSeries:
    """Generating function of the totals of cubed reciprocal parts."""
    return pochhammer_neg_q(order) * eichler_difference(2, order)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_odd_prime(p: int) -> None:
    if p % 2 == 0 or not _is_prime(p):
        raise ValueError(f"expected an odd prime, got {p}")


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    check_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def twisted_inner_coeffs(p: int, order: int, form: str = "divisor") -> list[Fraction]:
    """Coefficients of ``sum_m chi_p(m) q**m / (m (1 + q**m))``.

    ``form="divisor"`` sums ``chi_p(m) (-1)**(n/m + 1) / m`` over m | n;
    ``form="alternating"`` uses ``-(1/n) sum_{d|n} (-1)**d chi_p(n/d) d``.
    """
    check_odd_prime(p)
    out = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        divs = DEFAULT_CACHE.divisors(n)
        if form == "divisor":
            out[n] = sum(
                (Fraction(legendre_symbol(m, p) * (-1) ** (n // m + 1), m) for m in divs),
                Fraction(0),
            )
        elif form == "alternating":
            acc = sum((-1) ** d * legendre_symbol(n // d, p) * d for d in divs)
            out[n] = Fraction(-acc, n)
        else:
            raise ValueError(f"unknown form {form!r}")
    return out


def twisted_series(p: int, order: int) -> PowerSeries:
    """``(-q; q)_inf * sum_m chi_p(m) q**m / (m (1 + q**m))``.

    The inner coefficients are computed both ways and must agree exactly.
    """
    first = twisted_inner_coeffs(p, order, "divisor")
    second = twisted_inner_coeffs(p, order, "alternating")
    if first != second:
        bad = next(n for n in range(order + 1) if first[n] != second[n])
        raise ArithmeticError(f"twisted inner coefficient forms disagree at n={bad}")
    return pochhammer_neg_q(order) * PowerSeries(tuple(first))
