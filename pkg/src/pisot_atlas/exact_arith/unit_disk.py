"""Exact counts of polynomial roots inside and on the unit circle.

Roots on the circle are located through g = gcd(p, reciprocal(p)): the
self-reciprocal part of g is rewritten in the variable y = x + 1/x, where circle
roots become real roots in (-2, 2). The circle-free cofactor is handled by
the argument principle: the Cayley map x = (1 + it)/(1 - it) sends the real
t-line onto the circle, and the winding number is read off a Cauchy index
computed with a signed remainder sequence. No step uses floating point.
"""

from __future__ import annotations

from ..errors import DomainError
from .polynomial import IntPolynomial, palindromic_to_trace, poly_gcd, is_squarefree
from .sturm import SturmChain, sturm_count_in


def _gaussian_mul(a: list[tuple[int, int]], b: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out = [(0, 0)] * (len(a) + len(b) - 1)
    for i, (ar, ai) in enumerate(a):
        for j, (br, bi) in enumerate(b):
            cr, ci = out[i + j]
            out[i + j] = (cr + ar * br - ai * bi, ci + ar * bi + ai * br)
    return out


def cayley_transform(q: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Real and imaginary parts A, B of (1 - it)^n q((1 + it)/(1 - it))."""
    n = q.degree
    plus = [[(1, 0)]]
    minus = [[(1, 0)]]
    for _ in range(n):
        plus.append(_gaussian_mul(plus[-1], [(1, 0), (0, 1)]))
        minus.append(_gaussian_mul(minus[-1], [(1, 0), (0, -1)]))
    acc = [(0, 0)] * (n + 1)
    for k, c in enumerate(q.coeffs):
        if not c:
            continue
        term = _gaussian_mul(plus[k], minus[n - k])
        for i, (tr, ti) in enumerate(term):
            ar, ai = acc[i]
            acc[i] = (ar + c * tr, ai + c * ti)
    return IntPolynomial(r for r, _ in acc), IntPolynomial(i for _, i in acc)


def cauchy_index(num: IntPolynomial, den: IntPolynomial) -> int:
    """Cauchy index of num/den over the whole real line."""
    if den.is_zero():
        raise DomainError("Cauchy index with zero denominator")
    if num.is_zero() or den.degree == 0:
        return 0
    rem = num.positive_pseudo_rem(den) if num.degree >= den.degree else num
    # positive_pseudo_rem may flip sign relative to num mod den only by a positive factor
    if rem.is_zero():
        return 0
    chain = SturmChain(den, rem)
    return chain.variations_at_infinity(False) - chain.variations_at_infinity(True)


def _winding_inside(q: IntPolynomial) -> int:
    """Roots of q strictly inside the unit disk, for q with no roots on the circle."""
    n = q.degree
    if n <= 0:
        return 0
    a, b = cayley_transform(q)
    if a.is_zero():
        # arg(A + iB) = arg(B - iA) + pi/2 pointwise
        a, b = b, -a
    index = cauchy_index(b, a)
    if b.degree > a.degree:
        s_plus = 1 if (b.lc > 0) == (a.lc > 0) else -1
        s_minus = s_plus if (b.degree - a.degree) % 2 == 0 else -s_plus
        boundary = (s_plus - s_minus) // 2
    else:
        boundary = 0
    twice = boundary - index + n
    if twice % 2:
        raise DomainError("odd winding count; q has roots on the unit circle")
    return twice // 2


def _circle_part(g: IntPolynomial) -> tuple[int, int]:
    """(inside, on_circle) for a squarefree g whose root set is closed under z -> 1/z."""
    on = inside = 0
    for r in (1, -1):
        if g.degree >= 1 and g.sign_at(r) == 0:
            g = g.divexact(IntPolynomial((-r, 1)))
            on += 1
    if g.degree <= 0:
        return inside, on
    h = palindromic_to_trace(g)
    pairs_on = sturm_count_in(h, -2, 2)
    on += 2 * pairs_on
    inside += (g.degree - 2 * pairs_on) // 2
    return inside, on


def count_roots_in_unit_disk(p: IntPolynomial) -> tuple[int, int]:
    """(inside, on_circle): exact numbers of roots with |z| < 1 and |z| = 1."""
    if p.is_zero() or p.degree < 0:
        raise DomainError("unit disk count of the zero polynomial")
    if p[0] == 0:
        raise DomainError("p(0) = 0; factor out x first")
    if not is_squarefree(p):
        raise DomainError(f"{p} is not squarefree")
    if p.degree == 0:
        return 0, 0
    g = poly_gcd(p, p.reciprocal())
    q = p.primitive().divexact(g) if g.degree > 0 else p.primitive()
    inside_g, on = _circle_part(g) if g.degree > 0 else (0, 0)
    return inside_g + _winding_inside(q), on
