from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pisot_atlas.errors import (
    DomainError,
    FieldMismatch,
    NotMonic,
    NotRealField,
    NotSquarefree,
    ParseError,
    Reducible,
)
from pisot_atlas.exact_arith.factor_search import search_factor
from pisot_atlas.exact_arith.polynomial import IntPolynomial
from pisot_atlas.number_field import (
    Maximality,
    Position,
    compare_real,
    decide_modulus,
    decide_position,
    elem_op,
    embed_interval,
    make_field,
    parse_field,
    quadratic_field,
    rational_field,
    sort_by_sigma1,
)

X = sympy.Symbol("x")

SQRT2 = quadratic_field(2)
SQRT5 = quadratic_field(5)
DISC49 = make_field([-1, -2, 1, 1])
DISC229 = make_field([-1, -4, 0, 1])
PLASTIC = make_field([-1, -1, 0, 1])
SALEM4 = make_field([1, -1, -1, -1, 1])
FIELDS = [SQRT2, SQRT5, DISC49, DISC229, PLASTIC, SALEM4, quadratic_field(13)]


def sympy_value(x, j=1):
    """sigma_j(x) from sympy's own root of the defining polynomial (independent oracle)."""
    K = x.field
    roots = sympy.Poly(list(reversed(K.poly.coeffs)), X).nroots(n=40)
    reals = sorted((r for r in roots if abs(sympy.im(r)) < 1e-30), key=lambda r: -float(sympy.re(r)))
    cplx = sorted(
        (r for r in roots if sympy.im(r) > 1e-30), key=lambda r: (-float(sympy.re(r)), -float(sympy.im(r)))
    )
    z = (reals + cplx)[j - 1]
    return complex(sum(complex(c) * complex(z) ** k for k, c in enumerate(x.power_coeffs)))


coords2 = st.tuples(st.integers(-30, 30), st.integers(-30, 30))
coords3 = st.tuples(st.integers(-12, 12), st.integers(-12, 12), st.integers(-12, 12))
coords4 = st.tuples(*[st.integers(-6, 6)] * 4)


# -- construction -----------------------------------------------------------------------


def test_signatures():
    assert SQRT2.signature == (2, 0)
    assert DISC49.signature == (3, 0)
    assert PLASTIC.signature == (1, 1)
    assert SALEM4.signature == (2, 1)
    assert rational_field().signature == (1, 0)


def test_construction_errors():
    with pytest.raises(Reducible):
        make_field([-1, 0, 1])
    with pytest.raises(NotRealField):
        make_field([1, 0, 1])
    with pytest.raises(NotMonic):
        make_field([1, 0, 2])
    with pytest.raises(NotSquarefree):
        quadratic_field(8)
    with pytest.raises(DomainError):
        quadratic_field(1)
    with pytest.raises(ParseError):
        parse_field("cubic:7")
    with pytest.raises(Reducible):
        make_field([1, 0, -3, 0, 1])  # (x^2 - x - 1)(x^2 + x - 1) has no integer root


def test_irreducibility_by_factor_search():
    # x^4 - 10x^2 + 1 (minimal polynomial of sqrt2 + sqrt3) factors modulo every prime
    assert make_field([1, 0, -10, 0, 1]).irreducibility == "certified"
    with pytest.raises(NotRealField):
        make_field([1, 0, 0, 0, 1])
    K = make_field([1, 0, -10, 0, 1], assume_irreducible=True)
    assert K.irreducibility == "assumed"


def test_factor_search_budget_is_reported():
    factor, certified = search_factor(IntPolynomial([1, 0, -10, 0, 1]), {2}, max_subsets=1)
    assert factor is None and not certified
    factor, certified = search_factor(IntPolynomial([1, 0, -3, 0, 1]), {2})
    assert certified and factor.divides(IntPolynomial([1, 0, -3, 0, 1])) and factor.degree == 2


def _real_rooted_products():
    quad = st.tuples(st.integers(-4, 4), st.integers(-6, -1)).map(lambda t: [t[1], t[0], 1])
    return st.lists(quad, min_size=1, max_size=3)


@given(_real_rooted_products())
@settings(max_examples=40, deadline=None)
def test_irreducibility_matches_sympy(factors):
    # products of quadratics with negative constant term have only real roots
    p = IntPolynomial([1])
    for f in factors:
        p = p * IntPolynomial(f)
    sp = sympy.Poly(list(reversed(p.coeffs)), X)
    if not sympy.sqf_part(sp) == sp:
        return
    irreducible = len(sympy.factor_list(sp)[1]) == 1 and sympy.factor_list(sp)[1][0][1] == 1
    if irreducible:
        assert make_field(p.coeffs).irreducibility == "certified"
    else:
        with pytest.raises(Reducible):
            make_field(p.coeffs)


def test_maximality_certificates():
    assert SQRT5.maximality is Maximality.QUADRATIC_RULE
    assert DISC229.maximality is Maximality.SQUAREFREE_DISC
    assert DISC49.maximality is Maximality.DEDEKIND
    # Z[2^(1/3)] has discriminant -108 and is maximal; 2 and 3 both pass Dedekind
    assert make_field([-2, 0, 0, 1]).maximality is Maximality.DEDEKIND
    # x^3 + x^2 - 2x + 8 has polynomial discriminant -4*503 and field discriminant -503
    assert not make_field([8, -2, 1, 1]).maximality.is_maximal


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7, 13, 17, 21])
def test_quadratic_integral_basis(m):
    K = quadratic_field(m)
    w = K.basis()[1]
    # the second basis element is sqrt(m) or (1 + sqrt m)/2 up to an integer shift
    expected_disc = m if m % 4 == 1 else 4 * m
    d = sympy.Matrix([[ (a * b).trace for b in K.basis()] for a in K.basis()]).det()
    assert d == expected_disc
    assert w.degree == 2


def test_closure_and_identities():
    phi = SQRT5.surd_element(Fraction(1, 2), Fraction(1, 2))
    assert phi * phi == phi + 1
    u = SQRT2.surd_element(1, 1)
    assert u * SQRT2.surd_element(3, 2) == SQRT2.surd_element(7, 5)
    assert quadratic_field(13).element([0, 1]).minpoly.coeffs == (-3, -1, 1)
    with pytest.raises(DomainError):
        SQRT2.surd_element(Fraction(1, 2), 0)
    with pytest.raises(FieldMismatch):
        elem_op("add", SQRT2.one(), SQRT5.one())


@given(coords3, coords3, coords3)
def test_ring_axioms(a, b, c):
    K = DISC49
    x, y, z = K.element(a), K.element(b), K.element(c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x - y) + y == x


@given(coords3, coords3)
@settings(max_examples=50)
def test_norm_is_multiplicative(a, b):
    K = PLASTIC
    x, y = K.element(a), K.element(b)
    assert (x * y).norm == x.norm * y.norm
    assert (x + y).trace == x.trace + y.trace


@given(coords3)
@settings(max_examples=40, deadline=None)
def test_minpoly_matches_sympy(a):
    K = DISC229
    x = K.element(a)
    theta = sympy.Symbol("t")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * theta**k for k, c in enumerate(x.power_coeffs))
    # minimal polynomial of expr modulo the defining polynomial, by resultant elimination
    f = sympy.Poly(list(reversed(K.poly.coeffs)), theta)
    res = sympy.Poly(sympy.resultant(f.as_expr(), X - expr, theta), X)
    ref = sympy.Poly(sympy.sqf_part(res), X).monic()
    assert x.minpoly.coeffs == tuple(int(c) for c in reversed(ref.all_coeffs()))


@given(coords2)
def test_power_round_trip(a):
    x = SQRT5.element(a)
    assert SQRT5.from_power(x.power_coeffs) == x


# -- embeddings and decisions ---------------------------------------------------------------


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: K.spec)
def test_embeddings_match_sympy(K):
    for x in K.basis() + [K.theta * K.theta + 3]:
        for j in range(1, K.n_embeddings + 1):
            ref = sympy_value(x, j)
            if K.is_real_embedding(j):
                iv = x.real_value(j, Fraction(1, 10**25))
                assert float(iv.lo) - 1e-12 <= ref.real <= float(iv.hi) + 1e-12
                assert iv.width <= Fraction(1, 10**25)
            else:
                re, im = x.complex_value(j, Fraction(1, 10**25))
                assert abs(complex(float(re.mid), float(im.mid)) - ref) < 1e-12


def test_decimal_output():
    assert SQRT2.surd_element(1, 1).decimal(10) == "2.4142135624"
    assert DISC229.theta.decimal(8) == "2.11490754"
    assert SQRT5.surd_element(Fraction(-1, 2), Fraction(1, 2)).decimal(4) == "0.6180"


@given(coords3, st.fractions(min_value=-20, max_value=20, max_denominator=50))
@settings(max_examples=60, deadline=None)
def test_decide_position_agrees_with_high_precision(a, c):
    x = DISC229.element(a)
    with mpmath.workdps(60):
        v = sympy_value(x, 2).real
    pos = decide_position(x, 2, c, None)
    if abs(v - float(c)) > 1e-9:
        assert (pos is Position.INSIDE) == (v > c)


def test_decide_position_rational_boundaries():
    one = SQRT2.one()
    assert decide_position(one, 2, 1, 2) is Position.OUTSIDE
    assert decide_position(one, 2, 1, 2, lo_open=False) is Position.INSIDE
    assert decide_position(one, 1, None, 1) is Position.OUTSIDE
    assert decide_position(one, 1, None, 1, hi_open=False) is Position.INSIDE


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_salem_powers_stay_on_circle(k):
    x = SALEM4.theta ** k
    assert decide_modulus(x, 3, 1) is Position.OUTSIDE
    assert decide_modulus(x, 3, 1, strict=False) is Position.INSIDE


def test_decide_modulus_exact_circle():
    # the quartic Salem number: its complex conjugates lie exactly on the unit circle
    t = SALEM4.theta
    assert decide_modulus(t, 3, 1) is Position.OUTSIDE
    assert decide_modulus(t, 3, 1, strict=False) is Position.INSIDE
    assert decide_modulus(t, 2, 1) is Position.INSIDE  # 1/tau
    # plastic number + 1: conjugate modulus ~ 0.6559
    x = PLASTIC.theta + 1
    assert decide_modulus(x, 2, Fraction(66, 100)) is Position.INSIDE
    assert decide_modulus(x, 2, Fraction(65, 100)) is Position.OUTSIDE
    ci = embed_interval(x, 2, Fraction(1, 10**20))
    assert ci.is_complex and abs(float(ci.modulus_squared.mid) - 0.6558656180971 ** 2) < 1e-12


@given(coords4)
@settings(max_examples=30, deadline=None)
def test_circle_boundary_matches_float_modulus(a):
    K = SALEM4
    x = K.element(a)
    exact = decide_modulus(x, 3, 1, strict=False)
    v = abs(sympy_value(x, 3))
    if abs(v - 1) > 1e-9:
        assert (exact is Position.INSIDE) == (v < 1)


@given(st.lists(coords2, min_size=2, max_size=12, unique=True))
def test_sort_by_sigma1(coords):
    xs = [SQRT2.element(c) for c in coords]
    out = sort_by_sigma1(xs)
    for u, v in zip(out, out[1:]):
        assert compare_real(u, v) < 0
    assert {x.coords for x in out} == set(coords)
