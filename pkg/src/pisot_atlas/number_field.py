"""Real number fields K = Q(theta): integral bases, element arithmetic, embeddings.

A field is fixed by a monic irreducible integer polynomial with at least one
real root. Elements are integer coordinate vectors over an integral basis
stored as integer rows over the power basis with a common denominator.
Embeddings are numbered from 1: first the real roots in descending order
(so embedding 1 is the largest real root), then one root from each complex
pair, taken in the upper half-plane.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import (
    BoundaryUndecided,
    ConsistencyError,
    DomainError,
    FieldMismatch,
    IrreducibilityUnknown,
    NotMonic,
    NotRealField,
    NotSquarefree,
    Reducible,
)
from .exact_arith.dyadic import DyadicInterval, ceil_dyadic, floor_dyadic
from .exact_arith.intmath import is_squarefree_int, square_prime_divisors, squarefree_kernel
from .exact_arith.factor_search import search_factor
from .exact_arith.modular import dedekind_maximal_at, possible_factor_degrees
from .exact_arith.polynomial import (
    IntPolynomial,
    charpoly,
    discriminant,
    is_squarefree,
    poly_gcd,
    squarefree_part,
)
from .exact_arith.roots import (
    ComplexDisk,
    isolate_complex_roots,
    refine_complex_root,
    refine_real_root,
    centered_enclosure,
    taylor_shift,
)
from .exact_arith.sturm import isolate_real_roots, sturm_count_in

DEFAULT_CAP_BITS = 256


class Maximality(str, enum.Enum):
    QUADRATIC_RULE = "QuadraticRule"
    SQUAREFREE_DISC = "SquarefreeDisc"
    DEDEKIND = "DedekindCriterion"
    POWER_BASIS_ASSUMED = "PowerBasisAssumed"

    @property
    def is_maximal(self) -> bool:
        return self is not Maximality.POWER_BASIS_ASSUMED


class Position(str, enum.Enum):
    INSIDE = "Inside"
    OUTSIDE = "Outside"


def _mat_inverse(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DomainError("singular basis matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _bits_for(width: Fraction) -> int:
    """Smallest b >= 0 with 2^-b <= width."""
    width = Fraction(width)
    n, d = width.numerator, width.denominator
    if n >= d:
        return 0
    b = max((d // n).bit_length() - 1, 0)
    while d > n << b:
        b += 1
    return b


class NumberField:
    """K = Q(theta) with a fixed integral basis and certified root enclosures.

    Construct through make_field or quadratic_field; those run the
    irreducibility and reality checks.
    """

    def __init__(
        self,
        poly: IntPolynomial,
        basis_rows: Sequence[Sequence[int]],
        denominator: int,
        maximality: Maximality,
        irreducibility: str,
        surd: int | None = None,
    ):
        self.poly = poly
        self.degree = poly.degree
        self.basis_rows = tuple(tuple(int(v) for v in row) for row in basis_rows)
        self.denominator = int(denominator)
        self.maximality = maximality
        self.irreducibility = irreducibility
        self.surd = surd
        self.disc_defining = discriminant(poly) if self.degree >= 1 else 1
        d = self.degree
        if len(self.basis_rows) != d or any(len(r) != d for r in self.basis_rows):
            raise DomainError("basis matrix has the wrong shape")
        if self.basis_rows[0] != (self.denominator,) + (0,) * (d - 1):
            raise DomainError("the first basis element must be 1")
        self._inverse = _mat_inverse(self.basis_rows)
        self._real_roots = list(reversed(isolate_real_roots(poly)))
        self._complex_disks = isolate_complex_roots(poly) if len(self._real_roots) < d else []
        self.r = len(self._real_roots)
        self.s = len(self._complex_disks)
        if self.r + 2 * self.s != d:
            raise ConsistencyError("root census does not match the degree")
        if self.r == 0:
            raise NotRealField(f"{poly} has no real root")
        self._table = self._build_table()

    # -- identity ---------------------------------------------------------
    def _key(self):
        return (self.poly.coeffs, self.basis_rows, self.denominator)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"NumberField({self.spec})"

    @property
    def spec(self) -> str:
        if self.surd is not None:
            return f"sqrt:{self.surd}"
        return "poly:" + self.poly.to_text()

    @property
    def signature(self) -> tuple[int, int]:
        return self.r, self.s

    @property
    def is_totally_real(self) -> bool:
        return self.s == 0

    @property
    def n_embeddings(self) -> int:
        return self.r + self.s

    def is_real_embedding(self, j: int) -> bool:
        self._check_index(j)
        return j <= self.r

    def _check_index(self, j: int) -> None:
        if not 1 <= j <= self.r + self.s:
            raise DomainError(f"embedding index {j} outside 1..{self.r + self.s}")

    # -- basis conversion -------------------------------------------------
    def to_power(self, coords: Sequence[int]) -> list[int]:
        """Numerator vector a with x = (sum a_k theta^k) / denominator."""
        d = self.degree
        return [sum(coords[i] * self.basis_rows[i][k] for i in range(d)) for k in range(d)]

    def from_power(self, power: Sequence) -> FieldElement:
        """Element with power-basis coefficients `power` (rationals allowed)."""
        d = self.degree
        power = [Fraction(v) for v in power] + [Fraction(0)] * (d - len(power))
        if len(power) > d:
            power = self._reduce_power(power)
        coords = []
        for i in range(d):
            v = self.denominator * sum(power[k] * self._inverse[k][i] for k in range(d))
            if v.denominator != 1:
                raise DomainError("not an algebraic integer over the installed basis")
            coords.append(int(v))
        return FieldElement(self, tuple(coords))

    def _reduce_power(self, power: list[Fraction]) -> list[Fraction]:
        f = self.poly.coeffs
        d = self.degree
        power = list(power)
        for k in range(len(power) - 1, d - 1, -1):
            c = power[k]
            if c:
                for i in range(d):
                    power[k - d + i] -= c * f[i]
            power[k] = Fraction(0)
        return power[:d]

    def _build_table(self) -> list[list[tuple[int, ...]]]:
        d = self.degree
        den2 = self.denominator**2
        table = []
        for i in range(d):
            row = []
            for j in range(d):
                a, b = self.basis_rows[i], self.basis_rows[j]
                prod = [Fraction(0)] * (2 * d - 1)
                for s_, x in enumerate(a):
                    if x:
                        for t, y in enumerate(b):
                            prod[s_ + t] += Fraction(x * y, den2)
                try:
                    row.append(self.from_power(prod).coords)
                except DomainError as exc:
                    raise ConsistencyError("basis is not closed under multiplication") from exc
            table.append(row)
        return table

    # -- element constructors ----------------------------------------------
    def element(self, coords: Iterable[int]) -> FieldElement:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.degree:
            raise DomainError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    def integer(self, n: int) -> FieldElement:
        return FieldElement(self, (int(n),) + (0,) * (self.degree - 1))

    def zero(self) -> FieldElement:
        return self.integer(0)

    def one(self) -> FieldElement:
        return self.integer(1)

    @cached_property
    def theta(self) -> FieldElement:
        """The root of the defining polynomial at embedding 1."""
        if self.degree == 1:
            return self.integer(-self.poly[0])
        return self.from_power([0, 1])

    def basis(self) -> list[FieldElement]:
        d = self.degree
        return [FieldElement(self, tuple(int(i == k) for k in range(d))) for i in range(d)]

    def surd_element(self, a, b) -> FieldElement:
        """a + b*sqrt(m) in a field built by quadratic_field(m)."""
        if self.surd is None:
            raise DomainError("surd notation needs a field built from sqrt:m")
        return self.from_power([a, b])

    # -- root enclosures ---------------------------------------------------
    def real_root(self, j: int, width: Fraction) -> DyadicInterval:
        iv = self._real_roots[j - 1]
        if iv.width > width:
            iv = refine_real_root(self.poly, iv, width)
            self._real_roots[j - 1] = iv
        return iv

    def complex_root(self, j: int, width: Fraction) -> ComplexDisk:
        k = j - self.r - 1
        disk = self._complex_disks[k]
        if 2 * disk.radius > width:
            disk = refine_complex_root(self.poly, disk, width)
            self._complex_disks[k] = disk
        return disk

    def root_approx(self, j: int) -> complex:
        self._check_index(j)
        if j <= self.r:
            return complex(float(self.real_root(j, Fraction(1, 1 << 60)).mid))
        disk = self.complex_root(j, Fraction(1, 1 << 60))
        return complex(float(disk.re), float(disk.im))

    @property
    def maximal_order_certified(self) -> bool:
        return self.maximality.is_maximal


@dataclass(frozen=True, eq=False)
class FieldElement:
    """An algebraic integer of K as integer coordinates over the integral basis."""

    field: NumberField
    coords: tuple[int, ...]

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational and self.coords[0] == other
        return isinstance(other, FieldElement) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return f"FieldElement({self.field.spec}, {list(self.coords)})"

    def _same(self, other) -> FieldElement:
        if isinstance(other, int):
            return self.field.integer(other)
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine a field element with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch("elements belong to different fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._same(other) - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._same(other)
        d = self.field.degree
        table = self.field._table
        out = [0] * d
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                ab = a * b
                for k, t in enumerate(table[i][j]):
                    if t:
                        out[k] += ab * t
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative exponent")
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- algebraic data ----------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    @cached_property
    def numerator_poly(self) -> IntPolynomial:
        return IntPolynomial(self.field.to_power(self.coords))

    @cached_property
    def power_coeffs(self) -> tuple[Fraction, ...]:
        den = self.field.denominator
        return tuple(Fraction(a, den) for a in self.field.to_power(self.coords))

    def mult_matrix(self) -> list[list[int]]:
        """Column k holds the coordinates of self * w_k."""
        cols = [(self * b).coords for b in self.field.basis()]
        d = self.field.degree
        return [[cols[k][i] for k in range(d)] for i in range(d)]

    @cached_property
    def charpoly(self) -> IntPolynomial:
        return charpoly(self.mult_matrix())

    @cached_property
    def minpoly(self) -> IntPolynomial:
        m = squarefree_part(self.charpoly)
        if m.lc < 0:
            m = -m
        return m

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def generates_field(self) -> bool:
        return self.degree == self.field.degree

    @property
    def trace(self) -> int:
        cp = self.charpoly
        return -cp[cp.degree - 1]

    @property
    def norm(self) -> int:
        cp = self.charpoly
        return cp[0] if cp.degree % 2 == 0 else -cp[0]

    # -- embeddings --------------------------------------------------------
    def _cache(self) -> dict:
        c = self.__dict__.get("_enc")
        if c is None:
            c = {}
            object.__setattr__(self, "_enc", c)
        return c

    def real_value(self, j: int, width) -> DyadicInterval:
        """Certified dyadic enclosure of sigma_j(self) with width <= width (real j)."""
        width = Fraction(width)
        cache = self._cache()
        hit = cache.get(j)
        if hit is not None and hit.width <= width:
            return hit
        iv = _eval_real(self, j, width)
        cache[j] = iv
        return iv

    def complex_value(self, j: int, width) -> tuple[DyadicInterval, DyadicInterval]:
        """Enclosures (Re, Im) of sigma_j(self) for a complex j, each of width <= width."""
        width = Fraction(width)
        cache = self._cache()
        hit = cache.get(j)
        if hit is not None and hit[0].width <= width and hit[1].width <= width:
            return hit
        pair = _eval_complex(self, j, width)
        cache[j] = pair
        return pair

    def approx(self, j: int = 1) -> float:
        if self.field.is_real_embedding(j):
            return float(self.real_value(j, Fraction(1, 1 << 60)).mid)
        re, im = self.complex_value(j, Fraction(1, 1 << 60))
        return complex(float(re.mid), float(im.mid))

    def decimal(self, digits: int = 12, j: int = 1) -> str:
        """Decimal string of sigma_j(self) correct to within one unit in the last place."""
        if not self.field.is_real_embedding(j):
            raise DomainError("decimal() is for real embeddings")
        iv = self.real_value(j, Fraction(1, 10 ** (digits + 2)))
        return format_decimal(iv.mid, digits)


def format_decimal(q: Fraction, digits: int) -> str:
    q = Fraction(q)
    scale = 10**digits
    n = abs(q) * scale
    n = (n.numerator * 2 + n.denominator) // (2 * n.denominator)
    sign = "-" if q < 0 and n else ""
    whole, frac = divmod(n, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def _eval_real(x: FieldElement, j: int, width: Fraction) -> DyadicInterval:
    field = x.field
    if not field.is_real_embedding(j):
        raise DomainError(f"embedding {j} is complex")
    bits = _bits_for(width) + 2
    if x.is_rational:
        v = Fraction(x.coords[0])
        return DyadicInterval(floor_dyadic(v, bits), ceil_dyadic(v, bits))
    num = x.numerator_poly
    den = field.denominator
    scale = max(abs(c) for c in num.coeffs) * len(num.coeffs) + 1
    root_width = width / (4 * scale)
    while True:
        root = field.real_root(j, root_width)
        if root.lo == root.hi:
            v = Fraction(num(root.lo), den)
            return DyadicInterval(floor_dyadic(v, bits), ceil_dyadic(v, bits))
        lo, hi = centered_enclosure(num.coeffs, root.mid, root.width / 2, den, bits)
        if hi - lo <= width:
            return DyadicInterval(lo, hi)
        root_width = root.width * width / (2 * (hi - lo))


def _eval_complex(x: FieldElement, j: int, width: Fraction) -> tuple[DyadicInterval, DyadicInterval]:
    field = x.field
    if field.is_real_embedding(j):
        raise DomainError(f"embedding {j} is real")
    bits = _bits_for(width) + 2
    if x.is_rational:
        v = Fraction(x.coords[0])
        zero = DyadicInterval(0, 0)
        return DyadicInterval(floor_dyadic(v, bits), ceil_dyadic(v, bits)), zero
    num = x.numerator_poly
    den = field.denominator
    scale = max(abs(c) for c in num.coeffs) * len(num.coeffs) + 1
    root_width = width / (4 * scale)
    while True:
        disk = field.complex_root(j, root_width)
        t = taylor_shift(num.coeffs, disk.center)
        re0, im0 = t[0]
        rad = Fraction(0)
        rk = Fraction(1)
        for k in range(1, len(t)):
            rk *= disk.radius
            rad += (abs(t[k][0]) + abs(t[k][1])) * rk
        re = DyadicInterval(floor_dyadic((re0 - rad) / den, bits), ceil_dyadic((re0 + rad) / den, bits))
        im = DyadicInterval(floor_dyadic((im0 - rad) / den, bits), ceil_dyadic((im0 + rad) / den, bits))
        w = max(re.width, im.width)
        if w <= width:
            return re, im
        root_width = 2 * disk.radius * width / (2 * w)


def _square_interval(iv: DyadicInterval) -> tuple[Fraction, Fraction]:
    a, b = iv.lo * iv.lo, iv.hi * iv.hi
    if iv.lo <= 0 <= iv.hi:
        return Fraction(0), max(a, b)
    return min(a, b), max(a, b)


@dataclass(frozen=True)
class CertifiedInterval:
    """Certified enclosure of sigma_j(element).

    Real embeddings fill `interval`; complex ones fill `re`, `im` and
    `modulus_squared` instead.
    """

    element: FieldElement
    index: int
    interval: DyadicInterval | None = None
    re: DyadicInterval | None = None
    im: DyadicInterval | None = None
    modulus_squared: DyadicInterval | None = None

    @property
    def is_complex(self) -> bool:
        return self.interval is None

    @property
    def width(self) -> Fraction:
        if self.interval is not None:
            return self.interval.width
        return max(self.re.width, self.im.width, self.modulus_squared.width)

    def refine(self, eps) -> CertifiedInterval:
        return embed_interval(self.element, self.index, eps)


def embed_interval(x: FieldElement, j: int, eps) -> CertifiedInterval:
    """Enclosure of sigma_j(x) of width <= eps (each component for complex j)."""
    eps = Fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    x.field._check_index(j)
    if x.field.is_real_embedding(j):
        return CertifiedInterval(x, j, interval=x.real_value(j, eps))
    w = eps
    while True:
        re, im = x.complex_value(j, w)
        a_lo, a_hi = _square_interval(re)
        b_lo, b_hi = _square_interval(im)
        bits = _bits_for(eps) + 2
        mod2 = DyadicInterval(floor_dyadic(a_lo + b_lo, bits), ceil_dyadic(a_hi + b_hi, bits))
        if mod2.width <= eps:
            return CertifiedInterval(x, j, re=re, im=im, modulus_squared=mod2)
        w = w / 4


# -- exact decisions ------------------------------------------------------------


def _compare_rational(x: FieldElement, j: int, c: Fraction, cap_bits: int | None = None) -> int:
    """Sign of sigma_j(x) - c for a real embedding j; exact."""
    if x.is_rational:
        v = Fraction(x.coords[0])
        return (v > c) - (v < c)
    # x is irrational, so sigma_j(x) != c and refinement separates them
    bits = 16
    while True:
        iv = x.real_value(j, Fraction(1, 1 << bits))
        if iv.lo > c:
            return 1
        if iv.hi < c:
            return -1
        bits *= 2
        if cap_bits is not None and bits > 4 * cap_bits:
            raise BoundaryUndecided("real comparison did not separate")


def decide_position(x: FieldElement, j: int, a=None, b=None, lo_open: bool = True, hi_open: bool = True) -> Position:
    """Exactly decide whether sigma_j(x) lies in the interval from a to b.

    None stands for an infinite endpoint. j must be a real embedding.
    """
    field = x.field
    field._check_index(j)
    if not field.is_real_embedding(j):
        raise DomainError("decide_position needs a real embedding; use decide_modulus")
    if a is not None and b is not None and Fraction(a) >= Fraction(b):
        raise DomainError(f"empty interval ({a}, {b})")
    if a is not None:
        s = _compare_rational(x, j, Fraction(a))
        if s < 0 or (s == 0 and lo_open):
            return Position.OUTSIDE
    if b is not None:
        s = _compare_rational(x, j, Fraction(b))
        if s > 0 or (s == 0 and hi_open):
            return Position.OUTSIDE
    return Position.INSIDE


def compare_real(x: FieldElement, y: FieldElement, j: int = 1) -> int:
    """Exact sign of sigma_j(x) - sigma_j(y) for a real embedding j."""
    return _compare_rational(x - y, j, Fraction(0))


def sort_by_sigma1(elements: Iterable[FieldElement]) -> list[FieldElement]:
    """Distinct elements sorted by their exact value under embedding 1."""
    eps = Fraction(1, 1 << 40)

    def cmp(u: FieldElement, v: FieldElement) -> int:
        a, b = u.real_value(1, eps), v.real_value(1, eps)
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        return compare_real(u, v)

    return sorted(elements, key=cmp_to_key(cmp))


def decide_modulus(
    x: FieldElement, j: int, r, strict: bool = True, cap_bits: int = DEFAULT_CAP_BITS
) -> Position:
    """Exactly decide |sigma_j(x)| < r (strict) or <= r, for any embedding j."""
    r = Fraction(r)
    if r <= 0:
        raise DomainError("modulus bound must be positive")
    field = x.field
    field._check_index(j)
    if field.is_real_embedding(j):
        return decide_position(x, j, -r, r, strict, strict)
    q = r * r
    if x.is_rational:
        v = Fraction(x.coords[0]) ** 2
        inside = v < q or (v == q and not strict)
        return Position.INSIDE if inside else Position.OUTSIDE
    boundary_checked = False
    bits = 16
    while True:
        eps = Fraction(1, 1 << bits)
        mod2 = embed_interval(x, j, eps).modulus_squared
        if mod2.hi < q:
            return Position.INSIDE
        if mod2.lo > q:
            return Position.OUTSIDE
        if not boundary_checked and bits >= 32:
            boundary_checked = True
            if _on_circle(x, j, q):
                return Position.OUTSIDE if strict else Position.INSIDE
        if bits > cap_bits:
            raise BoundaryUndecided(f"|sigma_{j}| vs {r} not separated at 2^-{cap_bits}")
        bits *= 2


def _q_reciprocal(m: IntPolynomial, q: Fraction) -> IntPolynomial:
    """Integer multiple of x^e m(q/x)."""
    e = m.degree
    a, b = q.numerator, q.denominator
    return IntPolynomial(m[e - i] * a ** (e - i) * b**i for i in range(e + 1))


def _circle_root_count(g: IntPolynomial, q: Fraction) -> int:
    """Number of roots of g with |z|^2 = q, for g squarefree with roots closed under z -> q/z."""
    a, b = q.numerator, q.denominator
    edge = poly_gcd(g, IntPolynomial((-a, 0, b)))
    count = max(edge.degree, 0)
    g1 = g.primitive().divexact(edge) if edge.degree > 0 else g.primitive()
    if g1.degree <= 0:
        return count
    if g1.degree % 2:
        raise ConsistencyError("q-reciprocal factor of odd degree")
    h = g1.degree // 2
    # x^-h g1 = g_h + sum_k g_{h+k} C_k(y), with C_{k+1} = y C_k - q C_{k-1}
    cheb = [[Fraction(2)], [Fraction(0), Fraction(1)]]
    for _ in range(2, h + 1):
        prev, cur = cheb[-2], cheb[-1]
        nxt = [Fraction(0)] + cur
        for i, c in enumerate(prev):
            nxt[i] -= q * c
        cheb.append(nxt)
    coeffs = [Fraction(0)] * (h + 1)
    coeffs[0] += g1[h]
    for k in range(1, h + 1):
        for i, c in enumerate(cheb[k]):
            coeffs[i] += g1[h + k] * c
        if g1[h - k] != q**k * g1[h + k]:
            raise ConsistencyError("factor is not q-reciprocal")
    den = lcm(*(c.denominator for c in coeffs))
    hpoly = IntPolynomial(int(c * den) for c in coeffs)
    pairs = sturm_count_in(hpoly) - sturm_count_in(g1) // 2
    return count + 2 * pairs


def _on_circle(x: FieldElement, j: int, q: Fraction) -> bool:
    """Exact test of |sigma_j(x)|^2 == q for a complex embedding j."""
    m = x.minpoly
    g = poly_gcd(m, _q_reciprocal(m, q))
    if g.degree <= 0:
        return False
    k = _circle_root_count(g, q)
    if k == 0:
        return False
    field = x.field
    d, e = field.degree, m.degree
    target = k * (d // e)
    bits = 32
    while True:
        eps = Fraction(1, 1 << bits)
        touching = []
        for i in range(1, field.r + field.s + 1):
            if field.is_real_embedding(i):
                iv = x.real_value(i, eps)
                lo2, hi2 = _square_interval(iv)
                hit = lo2 <= q <= hi2
                weight = 1
            else:
                mod2 = embed_interval(x, i, eps).modulus_squared
                hit = mod2.lo <= q <= mod2.hi
                weight = 2
            if hit:
                touching.append((i, weight))
        total = sum(w for _, w in touching)
        if total == target:
            return any(i == j for i, _ in touching)
        if total < target:
            raise ConsistencyError("circle root count exceeds certified enclosures")
        bits *= 2
        if bits > 1 << 16:
            raise BoundaryUndecided("circle test did not separate")


# -- construction -----------------------------------------------------------------


def _irreducibility(p: IntPolynomial, assume_irreducible: bool) -> str:
    d = p.degree
    if d == 1:
        return "certified"
    if p[0] == 0:
        raise Reducible(f"{p} has the root 0")
    if not is_squarefree(p):
        raise Reducible(f"{p} has a repeated factor")
    c0 = abs(p[0])
    for t in range(1, int(c0**0.5) + 2):
        if c0 % t:
            continue
        for cand in {t, c0 // t}:
            for s in (cand, -cand):
                if p.sign_at(s) == 0:
                    raise Reducible(f"{p} has the integer root {s}")
    if d <= 3:
        return "certified"
    allowed, _ = possible_factor_degrees(p)
    if allowed <= {0, d}:
        return "certified"
    if assume_irreducible:
        return "assumed"
    factor, certified = search_factor(p, allowed - {0, d})
    if factor is not None:
        raise Reducible(f"{p} has the factor {factor}")
    if certified:
        return "certified"
    raise IrreducibilityUnknown(f"cannot certify {p} irreducible within the search budget")


def _quadratic_basis(p: IntPolynomial) -> tuple[list[list[int]], int]:
    c, b = p[0], p[1]
    delta = b * b - 4 * c
    s, k = squarefree_kernel(delta)
    if k % 4 == 1:
        d0, s0 = k, s
    else:
        if s % 2:
            raise ConsistencyError("discriminant congruence violated")
        d0, s0 = 4 * k, s // 2
    e = d0 % 2
    den = 2 * s0
    rows = [[den, 0], [s0 * e + b, 2]]
    g = gcd(den, *rows[1])
    # keep the first row equal to (den, 0) after reduction
    return [[v // g for v in row] for row in rows], den // g


def _certify_maximality(p: IntPolynomial, disc: int) -> Maximality:
    if is_squarefree_int(disc):
        return Maximality.SQUAREFREE_DISC
    if all(dedekind_maximal_at(p, q) for q in square_prime_divisors(disc)):
        return Maximality.DEDEKIND
    return Maximality.POWER_BASIS_ASSUMED


def make_field(poly: IntPolynomial | Sequence[int], assume_irreducible: bool = False) -> NumberField:
    """Build the field of a monic irreducible integer polynomial with a real root."""
    if not isinstance(poly, IntPolynomial):
        poly = IntPolynomial(poly)
    if poly.degree < 1:
        raise DomainError("defining polynomial must have degree >= 1")
    if poly.lc != 1:
        raise NotMonic(f"{poly} is not monic")
    irreducibility = _irreducibility(poly, assume_irreducible)
    d = poly.degree
    if d == 2:
        if poly[1] ** 2 - 4 * poly[0] < 0:
            raise NotRealField(f"{poly} has no real root")
        rows, den = _quadratic_basis(poly)
        surd = -poly[0] if poly[1] == 0 else None
        return NumberField(poly, rows, den, Maximality.QUADRATIC_RULE, irreducibility, surd=surd)
    rows = [[int(i == k) for k in range(d)] for i in range(d)]
    maximality = Maximality.SQUAREFREE_DISC if d == 1 else _certify_maximality(poly, discriminant(poly))
    return NumberField(poly, rows, 1, maximality, irreducibility)


def quadratic_field(m: int) -> NumberField:
    """Q(sqrt(m)) with its maximal order, for squarefree m >= 2."""
    if m < 2:
        raise DomainError("m must be at least 2")
    if not is_squarefree_int(m):
        raise NotSquarefree(f"{m} is not squarefree")
    return make_field(IntPolynomial((-m, 0, 1)))


def rational_field() -> NumberField:
    return make_field(IntPolynomial((0, 1)))


def parse_field(spec: str) -> NumberField:
    """Field from "sqrt:m" or "poly:[c0,...,1]"."""
    from .errors import ParseError

    kind, _, rest = spec.partition(":")
    if kind == "sqrt":
        try:
            m = int(rest)
        except ValueError as exc:
            raise ParseError(f"bad sqrt spec {spec!r}") from exc
        return quadratic_field(m)
    if kind == "poly":
        return make_field(IntPolynomial.parse(rest))
    raise ParseError(f"unknown field spec {spec!r}; use sqrt:m or poly:[...]")


def elem_op(kind: str, x: FieldElement, y) -> FieldElement:
    """Exact element arithmetic: kind in add, sub, mul, pow."""
    if kind == "pow":
        if not isinstance(y, int) or y < 0:
            raise DomainError("pow needs a non-negative integer exponent")
        return x**y
    if isinstance(y, FieldElement) and y.field != x.field:
        raise FieldMismatch("elements belong to different fields")
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    raise DomainError(f"unknown operation {kind!r}")


def minpoly_of(x: FieldElement) -> IntPolynomial:
    return x.minpoly
