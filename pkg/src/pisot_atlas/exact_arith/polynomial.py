"""Dense univariate polynomials with integer coefficients.

Coefficients are stored in ascending degree order. All arithmetic is exact;
the zero polynomial has an empty coefficient tuple and degree -1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from ..errors import DomainError, ParseError


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    # -- construction ---------------------------------------------------
    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls((0,) * k + (c,))

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        """Parse the ascending list form, e.g. ``"[-1,-4,0,1]"``."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"cannot parse polynomial {text!r}") from exc
        if not isinstance(data, list) or not all(
            isinstance(a, int) or (isinstance(a, str) and a.lstrip("-").isdigit())
            for a in data
        ):
            raise ParseError(f"polynomial must be a list of integers: {text!r}")
        return cls(int(a) for a in data)

    # -- basic properties -----------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def to_text(self) -> str:
        return "[" + ",".join(str(a) for a in self.coeffs) + "]"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- ring operations ------------------------------------------------
    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-a for a in self.coeffs)

    def __add__(self, other) -> IntPolynomial:
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> IntPolynomial:
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] - other[k] for k in range(n))

    def __rsub__(self, other) -> IntPolynomial:
        return _coerce(other) - self

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.coeffs)
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPolynomial:
        if n < 0:
            raise DomainError("negative polynomial power")
        result, base = IntPolynomial((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by x^k."""
        return IntPolynomial((0,) * k + self.coeffs) if self.coeffs else self

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(k * a for k, a in enumerate(self.coeffs) if k)

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def primitive(self) -> IntPolynomial:
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPolynomial(a // g for a in self.coeffs)

    def reciprocal(self) -> IntPolynomial:
        """x^deg * p(1/x), i.e. the reversed coefficient list."""
        return IntPolynomial(reversed(self.coeffs))

    def compose(self, other: IntPolynomial) -> IntPolynomial:
        out = IntPolynomial()
        for a in reversed(self.coeffs):
            out = out * other + a
        return out

    def scale_variable(self, s: int) -> IntPolynomial:
        """p(s*x)."""
        return IntPolynomial(a * s**k for k, a in enumerate(self.coeffs))

    # -- evaluation -----------------------------------------------------
    def __call__(self, x):
        acc = 0 if not isinstance(x, Fraction) else Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def eval_homogeneous(self, num: int, den: int) -> int:
        """den^deg * p(num/den), an integer with the sign of p(num/den) when den > 0."""
        acc, dpow = 0, 1
        n = self.degree
        # Horner in homogeneous form: sum a_k num^k den^(n-k)
        for k in range(n, -1, -1):
            acc = acc * num + self.coeffs[k] * dpow
            dpow *= den
        return acc

    def sign_at(self, x) -> int:
        if not self.coeffs:
            return 0
        x = Fraction(x)
        v = self.eval_homogeneous(x.numerator, x.denominator)
        return (v > 0) - (v < 0)

    def sign_at_infinity(self, positive: bool = True) -> int:
        if not self.coeffs:
            return 0
        s = 1 if self.lc > 0 else -1
        if not positive and self.degree % 2:
            s = -s
        return s

    # -- division -------------------------------------------------------
    def pseudo_divmod(self, other: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """lc(other)^(deg self - deg other + 1) * self = q * other + r."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        n, m = self.degree, other.degree
        if n < m:
            return IntPolynomial(), self
        b = other.lc
        r = list(self.coeffs)
        q = [0] * (n - m + 1)
        for k in range(n - m, -1, -1):
            lead = r[k + m]
            q = [c * b for c in q]
            q[k] = lead
            r = [c * b for c in r]
            if lead:
                for i, oc in enumerate(other.coeffs):
                    r[k + i] -= lead * oc
            r.pop()
        return IntPolynomial(q), IntPolynomial(r)

    def pseudo_rem(self, other: IntPolynomial) -> IntPolynomial:
        return self.pseudo_divmod(other)[1]

    def positive_pseudo_rem(self, other: IntPolynomial) -> IntPolynomial:
        """A positive rational multiple of the true remainder of self by other."""
        r = self.pseudo_rem(other)
        delta = self.degree - other.degree + 1
        if delta > 0 and other.lc < 0 and delta % 2:
            r = -r
        g = r.content()
        return IntPolynomial(a // g for a in r.coeffs) if g > 1 else r

    def divexact(self, other: IntPolynomial) -> IntPolynomial:
        """Exact quotient in Z[x]; raises DomainError if other does not divide self."""
        q, r = self.divmod_rational(other)
        if r or any(c.denominator != 1 for c in q):
            raise DomainError(f"{other} does not divide {self} exactly")
        return IntPolynomial(int(c) for c in q)

    def divmod_rational(self, other: IntPolynomial) -> tuple[list[Fraction], list[Fraction]]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(a) for a in self.coeffs]
        m = other.degree
        b = other.lc
        if len(r) - 1 < m:
            return [], [c for c in r]
        q = [Fraction(0)] * (len(r) - m)
        for k in range(len(r) - 1 - m, -1, -1):
            c = r[k + m] / b
            q[k] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    r[k + i] -= c * oc
        r = r[:m]
        while r and r[-1] == 0:
            r.pop()
        return q, r

    def divides(self, other: IntPolynomial) -> bool:
        """True when self divides other in Q[x]."""
        _, r = other.divmod_rational(self)
        return not r


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial((p,))
    raise TypeError(f"cannot use {type(p).__name__} as IntPolynomial")


X = IntPolynomial.x()


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd (positive leading coefficient) by the subresultant PRS."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.degree < b.degree:
        a, b = b, a
    a, b = a.primitive(), b.primitive()
    g = h = 1
    while True:
        delta = a.degree - b.degree
        r = a.pseudo_rem(b)
        if r.is_zero():
            return b.primitive()
        if r.degree == 0:
            return IntPolynomial((1,))
        a = b
        div = g * h**delta
        b = IntPolynomial(c // div for c in r.coeffs)
        g = a.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.is_zero():
        raise DomainError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return IntPolynomial((1,))
    g = poly_gcd(p, p.derivative())
    return p.primitive().divexact(g).primitive() if g.degree > 0 else p.primitive()


def is_squarefree(p: IntPolynomial) -> bool:
    if p.degree <= 1:
        return not p.is_zero()
    return poly_gcd(p, p.derivative()).degree == 0


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(a: IntPolynomial, b: IntPolynomial) -> int:
    """Sylvester resultant, computed as an exact Bareiss determinant."""
    m, n = a.degree, b.degree
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return a.lc**n
    if n == 0:
        return b.lc**m
    size = m + n
    rows = []
    ra, rb = list(reversed(a.coeffs)), list(reversed(b.coeffs))
    for i in range(n):
        rows.append([0] * i + ra + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + rb + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(p: IntPolynomial) -> int:
    n = p.degree
    if n < 1:
        raise DomainError("discriminant of a constant")
    if n == 1:
        return 1
    r = resultant(p, p.derivative())
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(s * r, p.lc)
    assert rem == 0
    return q


def charpoly(matrix: Sequence[Sequence[int]]) -> IntPolynomial:
    """det(x I - A) by Faddeev-LeVerrier; all divisions are exact for integer A."""
    n = len(matrix)
    a = [list(map(int, row)) for row in matrix]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            prod[i][i] += c_prev
        mk = prod
        am = sum(a[i][t] * mk[t][i] for i in range(n) for t in range(n))
        q, r = divmod(-am, k)
        assert r == 0
        coeffs[n - k] = q
    return IntPolynomial(coeffs)


def palindromic_to_trace(p: IntPolynomial) -> IntPolynomial:
    """Write a self-reciprocal p of degree 2e as x^e * H(x + 1/x) and return H.

    Uses x^k + x^-k = C_k(y) with C_0 = 2, C_1 = y, C_{k+1} = y C_k - C_{k-1}.
    Raises DomainError if p is not palindromic of even degree.
    """
    n = p.degree
    if n < 0 or n % 2 or p.coeffs != p.reciprocal().coeffs:
        raise DomainError(f"{p} is not self-reciprocal of even degree")
    e = n // 2
    cheb = chebyshev_c(e)
    out = IntPolynomial((p[e],))
    for k in range(1, e + 1):
        out = out + cheb[k] * p[e + k]
    if trace_to_palindromic(out) != p:
        raise DomainError(f"trace rewrite of {p} left a remainder")
    return out


def trace_to_palindromic(h: IntPolynomial) -> IntPolynomial:
    """x^e * h(x + 1/x) for h of degree e."""
    e = h.degree
    if e < 0:
        return IntPolynomial()
    out = IntPolynomial()
    x2p1 = IntPolynomial((1, 0, 1))
    power = IntPolynomial((1,))
    for k, a in enumerate(h.coeffs):
        if a:
            out = out + (power * a).shift(e - k)
        power = power * x2p1
    return out


_CHEB_CACHE: list[IntPolynomial] = [IntPolynomial((2,)), IntPolynomial((0, 1))]


def chebyshev_c(n: int) -> list[IntPolynomial]:
    """[C_0, ..., C_n] with C_k(x + 1/x) = x^k + x^-k."""
    while len(_CHEB_CACHE) <= n:
        _CHEB_CACHE.append(X * _CHEB_CACHE[-1] - _CHEB_CACHE[-2])
    return _CHEB_CACHE[: n + 1]


def binomial_poly(k: int) -> IntPolynomial:
    """(1 + x)^k."""
    return IntPolynomial(comb(k, i) for i in range(k + 1))
