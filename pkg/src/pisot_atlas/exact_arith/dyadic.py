"""Dyadic rationals and closed intervals with dyadic endpoints."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ..errors import DomainError


def is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def floor_dyadic(q, bits: int) -> Fraction:
    """Largest multiple of 2^-bits that is <= q."""
    q = Fraction(q)
    scaled = (q.numerator << bits) // q.denominator
    return Fraction(scaled, 1 << bits)


def ceil_dyadic(q, bits: int) -> Fraction:
    q = Fraction(q)
    scaled = -((-(q.numerator << bits)) // q.denominator)
    return Fraction(scaled, 1 << bits)


def sqrt_upper(q, bits: int = 64) -> Fraction:
    """A rational upper bound for sqrt(q), within about 2^-bits relative error."""
    q = Fraction(q)
    if q < 0:
        raise DomainError("sqrt of a negative number")
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    # sqrt(n/d) = sqrt(n*d)/d
    shift = 2 * bits
    s = isqrt((n * d) << shift)
    if s * s != (n * d) << shift:
        s += 1
    return Fraction(s, d << bits)


def sqrt_lower(q, bits: int = 64) -> Fraction:
    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    s = isqrt((n * d) << (2 * bits))
    return Fraction(s, d << bits)


@dataclass(frozen=True)
class DyadicInterval:
    """Closed interval [lo, hi] whose endpoints have power-of-two denominators."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if not (is_dyadic(lo) and is_dyadic(hi)):
            raise DomainError(f"non-dyadic endpoint in [{lo}, {hi}]")
        if lo > hi:
            raise DomainError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def enclosing(cls, lo, hi, bits: int) -> DyadicInterval:
        """Smallest interval on the 2^-bits grid containing [lo, hi]."""
        return cls(floor_dyadic(lo, bits), ceil_dyadic(hi, bits))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: DyadicInterval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: DyadicInterval) -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def halves(self) -> tuple[DyadicInterval, DyadicInterval]:
        m = self.mid
        return DyadicInterval(self.lo, m), DyadicInterval(m, self.hi)

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"DyadicInterval({float(self.lo)!r}, {float(self.hi)!r})"
