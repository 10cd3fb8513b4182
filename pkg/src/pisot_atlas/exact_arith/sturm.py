"""Sturm sequences, exact real-root counting and real-root isolation."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..errors import DomainError
from .dyadic import DyadicInterval
from .polynomial import IntPolynomial, is_squarefree


class SturmChain:
    """Signed remainder chain p, p', -rem(p, p'), ... with positive rescalings."""

    def __init__(self, p: IntPolynomial, q: IntPolynomial | None = None):
        if p.is_zero():
            raise DomainError("Sturm chain of the zero polynomial")
        if q is None:
            first = p.primitive()
            second = first.derivative()
        else:
            # positive rescaling only: the Cauchy index of q/p is sign-sensitive
            g = p.content()
            first = IntPolynomial(c // g for c in p.coeffs)
            second = q
        chain = [first]
        a, b = first, second
        while not b.is_zero():
            g = b.content()
            if g > 1:
                b = IntPolynomial(c // g for c in b.coeffs)
            chain.append(b)
            a, b = b, -a.positive_pseudo_rem(b)
        self.polys = tuple(chain)

    def variations(self, x) -> int:
        """Sign variations at x; None or +/-inf strings are not accepted here."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        last, count = 0, 0
        for p in self.polys:
            v = p.eval_homogeneous(num, den)
            s = (v > 0) - (v < 0)
            if s:
                if last and s != last:
                    count += 1
                last = s
        return count

    def variations_at_infinity(self, positive: bool) -> int:
        last, count = 0, 0
        for p in self.polys:
            s = p.sign_at_infinity(positive)
            if s:
                if last and s != last:
                    count += 1
                last = s
        return count

    def _var(self, x, positive_side: bool) -> int:
        if x is None:
            return self.variations_at_infinity(positive_side)
        return self.variations(x)


@lru_cache(maxsize=4096)
def _chain(coeffs: tuple[int, ...]) -> SturmChain:
    return SturmChain(IntPolynomial(coeffs))


def sturm_chain(p: IntPolynomial) -> SturmChain:
    return _chain(p.coeffs)


def sturm_count_in(p: IntPolynomial, a=None, b=None, lo_open: bool = True, hi_open: bool = True) -> int:
    """Number of distinct real roots of a squarefree p in the interval from a to b.

    ``None`` stands for -infinity (a) or +infinity (b); infinite ends are
    always open. Endpoint roots are detected by exact evaluation.
    """
    if a is not None and b is not None and Fraction(a) >= Fraction(b):
        raise DomainError(f"empty interval ({a}, {b})")
    chain = sturm_chain(p)
    # Var(a) - Var(b) counts roots in (a, b]
    n = chain._var(a, False) - chain._var(b, True)
    if b is not None and hi_open and p.sign_at(b) == 0:
        n -= 1
    if a is not None and not lo_open and p.sign_at(a) == 0:
        n += 1
    return n


def cauchy_bound(p: IntPolynomial) -> Fraction:
    """1 + max |c_i| / |c_lead|; every complex root has modulus strictly below it."""
    lead = abs(p.lc)
    return 1 + Fraction(max((abs(c) for c in p.coeffs[:-1]), default=0), lead)


def _dyadic_bound(p: IntPolynomial) -> Fraction:
    b = cauchy_bound(p)
    k = 0
    while Fraction(1 << k) < b:
        k += 1
    return Fraction(1 << k)


def isolate_real_roots(p: IntPolynomial) -> list[DyadicInterval]:
    """Disjoint dyadic intervals, one per distinct real root, sorted ascending.

    Each returned interval either is a single point (an exact dyadic root) or
    has endpoints that are not roots, with exactly one root in its interior.
    """
    if p.is_zero():
        raise DomainError("root isolation of the zero polynomial")
    if not is_squarefree(p):
        raise DomainError(f"{p} is not squarefree")
    if p.degree < 1:
        return []
    bound = _dyadic_bound(p)
    out: list[DyadicInterval] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = sturm_count_in(p, lo, hi)
        if n == 0:
            continue
        if n == 1 and p.sign_at(lo) and p.sign_at(hi):
            out.append(DyadicInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        if p.sign_at(mid) == 0:
            out.append(DyadicInterval(mid, mid))
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort(key=lambda iv: iv.lo)
    return _separate(p, out)


def _separate(p: IntPolynomial, ivs: list[DyadicInterval]) -> list[DyadicInterval]:
    ivs = list(ivs)
    changed = True
    while changed:
        changed = False
        for i in range(len(ivs) - 1):
            if ivs[i].hi >= ivs[i + 1].lo:
                ivs[i] = refine_root(p, ivs[i], ivs[i].width / 2)
                ivs[i + 1] = refine_root(p, ivs[i + 1], ivs[i + 1].width / 2)
                changed = True
    return ivs


def refine_root(p: IntPolynomial, iv: DyadicInterval, width) -> DyadicInterval:
    """Bisect an isolating interval of a simple root until its width is <= width."""
    width = Fraction(width)
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    s_lo = p.sign_at(lo)
    if s_lo == 0 or p.sign_at(hi) == 0 or s_lo == p.sign_at(hi):
        raise DomainError("interval does not isolate a simple root by sign change")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return DyadicInterval(mid, mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return DyadicInterval(lo, hi)


def refine_root_bits(p: IntPolynomial, iv: DyadicInterval, steps: int) -> DyadicInterval:
    """Exactly `steps` bisections (or fewer if an exact root is hit)."""
    if iv.lo == iv.hi or steps <= 0:
        return iv
    return refine_root(p, iv, iv.width / (1 << steps))
