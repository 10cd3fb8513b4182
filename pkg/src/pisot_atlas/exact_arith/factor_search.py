"""Certified search for a rational factor of an integer polynomial through its root enclosures.

A monic rational factor of a monic p is the product of (x - z) over a set of
roots closed under complex conjugation, and its coefficients are integers.
For each such subset the coefficients of the product are enclosed using the
root disks; a subset is ruled out as soon as one coefficient enclosure holds
no integer. Subsets that survive are tested by exact division. When every
subset of the admissible sizes is ruled out, p is irreducible.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import ceil, floor

from .polynomial import IntPolynomial
from .roots import abs_upper, isolate_complex_roots, refine_complex_root, refine_real_root
from .sturm import isolate_real_roots

Gauss = tuple[Fraction, Fraction]


def _mul_linear(poly: list[Gauss], c: Gauss) -> list[Gauss]:
    """poly * (x - c), coefficients ascending."""
    out = [(Fraction(0), Fraction(0))] * (len(poly) + 1)
    for i, (a, b) in enumerate(poly):
        # x * term
        ua, ub = out[i + 1]
        out[i + 1] = (ua + a, ub + b)
        # -c * term
        va, vb = out[i]
        out[i] = (va - (a * c[0] - b * c[1]), vb - (a * c[1] + b * c[0]))
    return out


def _mul_real_linear(poly: list[Fraction], a: Fraction) -> list[Fraction]:
    out = [Fraction(0)] * (len(poly) + 1)
    for i, v in enumerate(poly):
        out[i + 1] += v
        out[i] -= a * v
    return out


def _enclose(roots: list[tuple[Gauss, Fraction]]) -> tuple[list[Fraction], list[Fraction]]:
    """Centers and error radii of the coefficients of prod (x - z) with |z - c| <= r."""
    center: list[Gauss] = [(Fraction(1), Fraction(0))]
    upper = [Fraction(1)]  # prod (x + |c| + r)
    lower = [Fraction(1)]  # prod (x + |c|)
    for c, r in roots:
        center = _mul_linear(center, c)
        m = abs_upper(c)
        upper = _mul_real_linear(upper, -(m + r))
        lower = _mul_real_linear(lower, -m)
    err = [u - lo for u, lo in zip(upper, lower)]
    return [c[0] for c in center], err


def _has_integer(lo: Fraction, hi: Fraction) -> bool:
    return ceil(lo) <= floor(hi)


def search_factor(p: IntPolynomial, degrees: set[int], max_bits: int = 2048, max_subsets: int = 20000):
    """Find a monic factor of p with degree in `degrees`, or prove there is none.

    Returns (factor or None, certified). certified is False only when the
    subset budget or the precision cap was exceeded.
    """
    d = p.degree
    if p.lc != 1:
        raise ValueError("factor search needs a monic polynomial")
    degrees = {k for k in degrees if 0 < k <= d // 2}
    if not degrees:
        return None, True
    real = list(isolate_real_roots(p))
    cplx = list(isolate_complex_roots(p))
    subsets = []
    for k in sorted(degrees):
        for nc in range(0, k // 2 + 1):
            nr = k - 2 * nc
            if nr > len(real) or nc > len(cplx):
                continue
            for rs in combinations(range(len(real)), nr):
                for cs in combinations(range(len(cplx)), nc):
                    subsets.append((rs, cs))
                    if len(subsets) > max_subsets:
                        return None, False
    bits = 24
    while subsets and bits <= max_bits:
        width = Fraction(1, 1 << bits)
        real = [refine_real_root(p, iv, width) for iv in real]
        cplx = [refine_complex_root(p, dk, width) for dk in cplx]
        alive = []
        for rs, cs in subsets:
            roots = [((iv.mid, Fraction(0)), iv.width / 2) for iv in (real[i] for i in rs)]
            for i in cs:
                dk = cplx[i]
                roots.append(((dk.re, dk.im), dk.radius))
                roots.append(((dk.re, -dk.im), dk.radius))
            centers, errs = _enclose(roots)
            if all(_has_integer(c - e, c + e) for c, e in zip(centers, errs)):
                cand = IntPolynomial(round(c) for c in centers)
                if cand.degree >= 1 and cand.divides(p):
                    return cand, True
                alive.append((rs, cs))
        subsets = alive
        bits *= 2
    return None, not subsets
