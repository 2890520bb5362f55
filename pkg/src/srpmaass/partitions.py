"""Brute-force enumeration of partitions into distinct parts.

This is the ground truth the series engine is checked against, so it
shares no arithmetic with it: even the quadratic character is recomputed
here from the list of squares instead of Euler's criterion.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .exact_series import check_odd_prime

ORACLE_SOFT_LIMIT = 60


@dataclass(frozen=True)
class DistinctPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        ps = self.parts
        if any(p <= 0 for p in ps):
            raise ValueError(f"parts must be positive: {ps}")
        if any(a <= b for a, b in zip(ps, ps[1:])):
            raise ValueError(f"parts must be strictly decreasing: {ps}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def _distinct(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    # the largest part p must satisfy p + (p-1) + ... + 1 >= n
    for p in range(min(n, max_part), 0, -1):
        if p * (p + 1) // 2 < n:
            break
        for rest in _distinct(n - p, p - 1):
            yield (p,) + rest


def enumerate_distinct(n: int) -> Iterator[DistinctPartition]:
    """Yield every partition of n into distinct parts, largest part first."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > ORACLE_SOFT_LIMIT:
        warnings.warn(
            f"enumerating distinct partitions of {n} (> {ORACLE_SOFT_LIMIT}) may be slow",
            stacklevel=2,
        )
    for parts in _distinct(n, n):
        yield DistinctPartition(parts)


def srp_moment(lam: DistinctPartition, k: int) -> Fraction:
    """``(sum_j 1/lambda_j) ** k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum((Fraction(1, p) for p in lam.parts), Fraction(0)) ** k


def srp_power_sum(lam: DistinctPartition, k: int) -> Fraction:
    """``sum_j lambda_j ** -k``."""
    if k < 1:
        raise ValueError("k must be positive")
    return sum((Fraction(1, p**k) for p in lam.parts), Fraction(0))


def s_oracle(k: int, n: int) -> Fraction:
    return sum((srp_moment(lam, k) for lam in enumerate_distinct(n)), Fraction(0))


def s_star_oracle(k: int, n: int) -> Fraction:
    return sum((srp_power_sum(lam, k) for lam in enumerate_distinct(n)), Fraction(0))


def _quadratic_character(p: int) -> dict[int, int]:
    squares = {(x * x) % p for x in range(1, p)}
    return {r: (0 if r == 0 else (1 if r in squares else -1)) for r in range(p)}


def s_twisted_oracle(p: int, n: int) -> Fraction:
    """Sum over distinct partitions of n of ``sum_j (lambda_j / p) / lambda_j``."""
    check_odd_prime(p)
    chi = _quadratic_character(p)
    total = Fraction(0)
    for lam in enumerate_distinct(n):
        total += sum((Fraction(chi[x % p], x) for x in lam.parts), Fraction(0))
    return total
