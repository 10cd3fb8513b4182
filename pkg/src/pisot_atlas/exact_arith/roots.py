"""Certified root refinement: fast real refinement and complex root disks.

Real roots are refined from isolating intervals with Newton steps whose
result is accepted only after an exact sign-change check, with bisection as
the fallback. Complex roots are seeded numerically (mpmath), polished by
Newton in dyadic Gaussian rationals and certified by a single-root
Pellet/Rouche test on the Taylor expansion at the disk center, so floating
point never enters a decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from ..errors import ConsistencyError, DomainError
from .dyadic import DyadicInterval, floor_dyadic
from .polynomial import IntPolynomial, is_squarefree
from .sturm import isolate_real_roots

Complex = tuple[Fraction, Fraction]


def _round(q: Fraction, bits: int) -> Fraction:
    return floor_dyadic(q, bits)


def _bits_for(width: Fraction) -> int:
    """Smallest b with 2^-b <= width."""
    width = Fraction(width)
    if width <= 0:
        raise DomainError("target width must be positive")
    n, d = width.numerator, width.denominator
    if n >= d:
        return 0
    b = max((d // n).bit_length() - 1, 0)
    while d > n << b:
        b += 1
    return b


# -- real roots ---------------------------------------------------------------


def refine_real_root(p: IntPolynomial, iv: DyadicInterval, width) -> DyadicInterval:
    """Shrink an isolating interval of a simple root to width <= width."""
    width = Fraction(width)
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    s_lo, s_hi = p.sign_at(lo), p.sign_at(hi)
    if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
        raise DomainError("interval does not isolate a simple root by sign change")
    dp = p.derivative()
    k = 4
    while hi - lo > width:
        mid = (lo + hi) / 2
        d = dp(mid)
        accepted = False
        if d and k < 4096:
            z = mid - p(mid) / d
            delta = max((hi - lo) / (1 << k), width / 4)
            bits = _bits_for(delta) + 2
            z = _round(z, bits)
            a, b = _round(z - delta, bits), _round(z + delta, bits) + Fraction(1, 1 << bits)
            if lo < a < b < hi:
                sa, sb = p.sign_at(a), p.sign_at(b)
                if sa == 0:
                    return DyadicInterval(a, a)
                if sb == 0:
                    return DyadicInterval(b, b)
                if sa == s_lo and sb == s_hi:
                    lo, hi = a, b
                    accepted = True
                    k *= 2
        if not accepted:
            k = 4
            for _ in range(4):
                mid = (lo + hi) / 2
                s = p.sign_at(mid)
                if s == 0:
                    return DyadicInterval(mid, mid)
                if s == s_lo:
                    lo = mid
                else:
                    hi = mid
    return DyadicInterval(lo, hi)


# -- complex arithmetic on Gaussian rationals -----------------------------------


def cmul(a: Complex, b: Complex) -> Complex:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cdiv(a: Complex, b: Complex) -> Complex:
    n = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / n, (a[1] * b[0] - a[0] * b[1]) / n)


def abs_upper(a: Complex) -> Fraction:
    return abs(a[0]) + abs(a[1])


def abs_lower(a: Complex) -> Fraction:
    return max(abs(a[0]), abs(a[1]))


def taylor_shift(coeffs, z: Complex) -> list[Complex]:
    """Coefficients of p(z + t) in t, for real (Fraction or int) coeffs of p."""
    work = [(Fraction(c), Fraction(0)) if not isinstance(c, tuple) else c for c in coeffs]
    n = len(work)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            prod = cmul(work[j + 1], z)
            work[j] = (work[j][0] + prod[0], work[j][1] + prod[1])
    return work


def dyadic_taylor_shift(coeffs, c: Fraction) -> tuple[list[int], int]:
    """Taylor coefficients of p at a dyadic c, as integers e_i with p(c + t) = sum e_i t^i / 2^(k(n-i)).

    Returns (e, k) where c = C / 2^k; only integer arithmetic is used.
    """
    c = Fraction(c)
    k = c.denominator.bit_length() - 1
    n = len(coeffs) - 1
    # s(u) = 2^(kn) p(u / 2^k) has integer coefficients; shift it by the integer C
    work = [int(a) << (k * (n - j)) for j, a in enumerate(coeffs)]
    C = c.numerator
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            work[j] += work[j + 1] * C
    return work, k


def centered_enclosure(coeffs, c: Fraction, r: Fraction, den: int, bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic bounds (on the 2^-bits grid) for p(x)/den over |x - c| <= r, c and r dyadic."""
    e, k = dyadic_taylor_shift(coeffs, c)
    n = len(e) - 1
    r = Fraction(r)
    m = r.denominator.bit_length() - 1
    R = r.numerator
    shifts = [k * (n - i) + m * i for i in range(n + 1)]
    top = max(shifts)
    center = e[0] << (top - shifts[0])
    rad = 0
    Ri = 1
    for i in range(1, n + 1):
        Ri *= R
        rad += abs(e[i]) * Ri << (top - shifts[i])
    div = den << top
    lo = ((center - rad) << bits) // div
    hi = -((-(center + rad) << bits) // div)
    return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)


def ceval(coeffs, z: Complex) -> Complex:
    acc = (Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = cmul(acc, z)
        acc = (acc[0] + c, acc[1])
    return acc


@dataclass(frozen=True)
class ComplexDisk:
    """Open disk |z - center| < radius containing exactly one root."""

    re: Fraction
    im: Fraction
    radius: Fraction

    @property
    def center(self) -> Complex:
        return (self.re, self.im)

    def contains_disk(self, other: ComplexDisk) -> bool:
        dx, dy = self.re - other.re, self.im - other.im
        gap = self.radius - other.radius
        return gap >= 0 and dx * dx + dy * dy <= gap * gap

    def disjoint(self, other: ComplexDisk) -> bool:
        dx, dy = self.re - other.re, self.im - other.im
        s = self.radius + other.radius
        return dx * dx + dy * dy > s * s


def certify_disk(
    p: IntPolynomial, z: Complex, min_radius: Fraction = Fraction(0), exact_radius: Fraction = Fraction(1, 1 << 64)
) -> ComplexDisk | None:
    """Pellet test: a disk at z with exactly one root of p, or None."""
    t = taylor_shift(p.coeffs, z)
    a1 = abs_lower(t[1])
    if a1 == 0:
        return None
    a0 = abs_upper(t[0])
    radius = max(2 * a0 / a1, min_radius)
    if radius == 0:
        # z is an exact root: any small enough radius separates it
        tail = sum((abs_upper(c) for c in t[2:]), Fraction(0))
        radius = min(exact_radius, a1 / (2 * tail)) if tail else exact_radius
    # round the radius up to a dyadic to keep later arithmetic small
    b = _bits_for(radius) + 8
    radius = _round(radius, b) + Fraction(1, 1 << b)
    rest = a0
    rk = radius
    for k in range(2, len(t)):
        rk *= radius
        rest += abs_upper(t[k]) * rk
    if a1 * radius > rest:
        return ComplexDisk(z[0], z[1], radius)
    return None


def _newton_step(p: IntPolynomial, dp: IntPolynomial, z: Complex, bits: int) -> Complex:
    f = ceval(p.coeffs, z)
    d = ceval(dp.coeffs, z)
    if d == (0, 0):
        return z
    step = cdiv(f, d)
    return (_round(z[0] - step[0], bits), _round(z[1] - step[1], bits))


def refine_complex_root(p: IntPolynomial, disk: ComplexDisk, width) -> ComplexDisk:
    """A sub-disk of `disk` around the same root with diameter <= width."""
    width = Fraction(width)
    if 2 * disk.radius <= width:
        return disk
    dp = p.derivative()
    target = _bits_for(width) + 4
    bits = max(_bits_for(disk.radius) + 4, 32)
    z = disk.center
    current = disk
    for _ in range(200):
        bits = min(2 * bits, target + 8)
        z = _newton_step(p, dp, z, bits)
        cand = certify_disk(p, z, exact_radius=width / 4)
        if cand is not None and current.contains_disk(cand):
            current = cand
            if 2 * current.radius <= width:
                return current
        else:
            z = current.center
            bits += 16
    raise ConsistencyError("complex root refinement did not converge")


def _seeds(p: IntPolynomial, dps: int) -> list[mpmath.mpc]:
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(
            [mpmath.mpf(c) for c in reversed(p.coeffs)], maxsteps=200 + 20 * dps, extraprec=4 * dps
        )
    return [mpmath.mpc(r) for r in roots]


def _to_dyadic(x: mpmath.mpf, bits: int) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    value = Fraction(int(man)) * Fraction(2) ** int(exp)
    return _round(-value if sign else value, bits)


@lru_cache(maxsize=1024)
def _complex_roots_cached(coeffs: tuple[int, ...]) -> tuple[ComplexDisk, ...]:
    p = IntPolynomial(coeffs)
    n_real = len(isolate_real_roots(p))
    s = (p.degree - n_real) // 2
    if s == 0:
        return ()
    dp = p.derivative()
    dps = 30
    for _ in range(8):
        bits = int(dps * 3.3) + 8
        try:
            seeds = _seeds(p, dps)
        except mpmath.libmp.libhyper.NoConvergence:
            dps *= 2
            continue
        # real roots may come back with tiny imaginary noise; keep the s largest
        uppers = sorted(seeds, key=lambda r: -r.imag)[:s]
        uppers.sort(key=lambda r: (-float(r.real), -float(r.imag)))
        disks = []
        for r in uppers:
            z = (_to_dyadic(r.real, bits), _to_dyadic(r.imag, bits))
            z = _newton_step(p, dp, z, bits)
            d = certify_disk(p, z)
            if d is None or d.im <= d.radius:
                break
            disks.append(d)
        ok = len(disks) == s and all(
            disks[i].disjoint(disks[j]) for i in range(s) for j in range(i + 1, s)
        )
        if ok:
            return tuple(disks)
        dps *= 2
    raise ConsistencyError(f"could not certify the complex roots of {p}")


def isolate_complex_roots(p: IntPolynomial) -> list[ComplexDisk]:
    """Certified disjoint disks, one per root with positive imaginary part.

    Disks lie strictly in the upper half-plane; they are ordered by the real
    part of their center (descending), then imaginary part (descending).
    """
    if p.degree < 1:
        return []
    if not is_squarefree(p):
        raise DomainError(f"{p} is not squarefree")
    return list(_complex_roots_cached(p.coeffs))
