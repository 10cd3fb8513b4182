from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from pisot_atlas.box_enum import (
    BoxConstraint,
    Disk,
    Window,
    brute_oracle,
    enumerate_box,
    fincke_pohst,
    lll_reduce,
    satisfies,
)
from pisot_atlas.errors import Unbounded
from pisot_atlas.number_field import make_field, quadratic_field, rational_field

SQRT2 = quadratic_field(2)
SQRT5 = quadratic_field(5)
DISC49 = make_field([-1, -2, 1, 1])
PLASTIC = make_field([-1, -1, 0, 1])
SALEM4 = make_field([1, -1, -1, -1, 1])


# -- a floating point oracle independent of the exact decision code -------------------------------


def _roots(K):
    return np.roots(list(reversed([float(c) for c in K.poly.coeffs])))


def _values(x, roots):
    pc = [float(c) for c in x.power_coeffs]
    return [sum(c * z**k for k, c in enumerate(pc)) for z in roots]


def _inside(v, w: Window):
    lo_ok = w.lo is None or (v > w.lo if w.lo_open else v >= w.lo)
    hi_ok = w.hi is None or (v < w.hi if w.hi_open else v <= w.hi)
    return lo_ok and hi_ok


def _float_membership(K, sigma1: Window, others: Window | None, disk: Disk | None, coords):
    """Membership from numpy roots, or None when a value sits within 1e-9 of a boundary."""
    roots = _roots(K)
    real = sorted((z.real for z in roots if abs(z.imag) < 1e-9), reverse=True)
    cplx = [z for z in roots if z.imag > 1e-9]
    x = K.element(coords)
    vals_r = _values(x, real)
    vals_c = _values(x, cplx)
    edges = [e for w in (sigma1, others) if w is not None for e in (w.lo, w.hi) if e is not None]
    for v in vals_r:
        if any(abs(v - float(e)) < 1e-9 for e in edges):
            return None
    if disk is not None and any(abs(abs(v) - float(disk.radius)) < 1e-9 for v in vals_c):
        return None
    ok = _inside(vals_r[0], sigma1)
    if others is not None:
        ok = ok and all(_inside(v, others) for v in vals_r[1:])
    if disk is not None:
        ok = ok and all(abs(v) < disk.radius if disk.strict else abs(v) <= disk.radius for v in vals_c)
    return ok


def _coordinate_bound(K, sigma1: Window, others: Window | None, disk: Disk | None) -> int:
    """Bound on |coords| from the inverse of the numeric embedding matrix."""
    roots = _roots(K)
    order = sorted(range(len(roots)), key=lambda i: -roots[i].real if abs(roots[i].imag) < 1e-9 else 1e9)
    top = order[0]
    mat = np.array([_values(w, roots) for w in K.basis()]).T  # mat[j][i] = w_i(root_j)
    inv = np.linalg.inv(mat)
    size = []
    for j, z in enumerate(roots):
        if j == top:
            size.append(max(abs(float(sigma1.lo)), abs(float(sigma1.hi))))
        elif abs(z.imag) < 1e-9:
            size.append(max(abs(float(others.lo)), abs(float(others.hi))))
        else:
            size.append(float(disk.radius))
    return int(max(np.abs(inv) @ np.array(size))) + 1


def _check_against_oracle(K, sigma1, others=None, disk=None):
    c = BoxConstraint.build(K, sigma1, others, disk)
    got = enumerate_box(K, c)
    assert got.exhausted and not got.boundary_skipped
    B = _coordinate_bound(K, sigma1, others, disk)
    expected, undecided = set(), set()
    for coords in product(range(-B, B + 1), repeat=K.degree):
        verdict = _float_membership(K, sigma1, others, disk, coords)
        if verdict is None:
            undecided.add(coords)
        elif verdict:
            expected.add(coords)
    got_set = {x.coords for x in got.elements}
    assert got_set - undecided == expected
    for coords in got_set & undecided:
        assert satisfies(K.element(coords), c)
    return got


# -- enumeration against the oracle -------------------------------------------------------------


def test_quadratic_pisot_window():
    # integers of Q(sqrt2) with sigma1 in (1, 8) and |sigma2| < 1
    got = _check_against_oracle(SQRT2, Window(1, 8), Window(-1, 1))
    assert [x.coords for x in got.elements][:3] == [(1, 1), (2, 1), (2, 2)]  # 2.41, 3.41, 4.83


def test_golden_field_window():
    got = _check_against_oracle(SQRT5, Window(0, 5), Window(-1, 1))
    assert len(got.elements) >= 3


def test_totally_real_cubic():
    _check_against_oracle(DISC49, Window(-2, 3), Window(-2, 2))


def test_complex_cubic_disk():
    _check_against_oracle(PLASTIC, Window(1, 4), None, Disk(1))


def test_salem_quartic_closed_disk():
    got = _check_against_oracle(SALEM4, Window(1, 4), Window(-1, 1), Disk(1, strict=False))
    assert (0, 1, 0, 0) in {x.coords for x in got.elements}  # the Salem number itself


def test_open_disk_excludes_circle():
    c = BoxConstraint.build(SALEM4, Window(1, 4), Window(-1, 1), Disk(1, strict=True))
    assert (0, 1, 0, 0) not in {x.coords for x in enumerate_box(SALEM4, c).elements}


def test_rational_field():
    Q = rational_field()
    c = BoxConstraint.build(Q, Window(Fraction(-5, 2), 3, hi_open=False))
    assert [x.coords for x in enumerate_box(Q, c).elements] == [(-2,), (-1,), (0,), (1,), (2,), (3,)]


def test_matches_brute_oracle():
    c = BoxConstraint.build(DISC49, Window(0, 3), Window(-2, 2))
    a = enumerate_box(DISC49, c)
    b = brute_oracle(DISC49, c, 6)
    assert [x.coords for x in a.elements] == [x.coords for x in b.elements]


def test_unbounded_and_empty():
    with pytest.raises(Unbounded):
        enumerate_box(SQRT2, BoxConstraint.build(SQRT2, Window(0, None), Window(-1, 1)))
    with pytest.raises(Unbounded):
        enumerate_box(PLASTIC, BoxConstraint.build(PLASTIC, Window(0, 3)))
    assert enumerate_box(SQRT2, BoxConstraint.build(SQRT2, Window(3, 3), Window(-1, 1))).elements == []
    assert enumerate_box(SQRT2, BoxConstraint.build(SQRT2, Window(5, 2), Window(-1, 1))).elements == []


fracs = st.fractions(min_value=-4, max_value=4, max_denominator=8)


@given(fracs, st.fractions(min_value=Fraction(1, 8), max_value=4, max_denominator=8), fracs,
       st.fractions(min_value=Fraction(1, 8), max_value=2, max_denominator=8))
@settings(max_examples=25, deadline=None)
def test_random_quadratic_boxes(lo1, w1, lo2, w2):
    _check_against_oracle(SQRT5, Window(lo1, lo1 + w1), Window(lo2, lo2 + w2))


@given(st.fractions(min_value=-2, max_value=2, max_denominator=4), st.fractions(min_value=Fraction(1, 2), max_value=2, max_denominator=4))
@settings(max_examples=10, deadline=None)
def test_random_cubic_boxes(lo1, w1):
    _check_against_oracle(DISC49, Window(lo1, lo1 + w1), Window(-1, 1))


# -- lattice helpers ---------------------------------------------------------------------------------


small_basis = st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3).filter(
    lambda m: sympy.Matrix(m).det() != 0
)


@given(small_basis)
@settings(max_examples=40, deadline=None)
def test_lll_is_unimodular_and_reduced(cols):
    red, U = lll_reduce(cols)
    assert abs(sympy.Matrix(U).det()) == 1
    for k in range(3):
        assert red[k] == [sum(U[k][i] * cols[i][t] for i in range(3)) for t in range(3)]
    # size reduction and the Lovasz condition on the Gram-Schmidt data
    M = sympy.Matrix(red).T
    Q = [M.col(0)]
    for k in range(1, 3):
        v = M.col(k)
        for q in Q:
            v = v - (M.col(k).dot(q) / q.dot(q)) * q
        Q.append(v)
    for k in range(1, 3):
        for j in range(k):
            assert abs(M.col(k).dot(Q[j]) / Q[j].dot(Q[j])) <= sympy.Rational(1, 2)
        mu = M.col(k).dot(Q[k - 1]) / Q[k - 1].dot(Q[k - 1])
        assert Q[k].dot(Q[k]) >= (sympy.Rational(3, 4) - mu**2) * Q[k - 1].dot(Q[k - 1])


@given(small_basis, st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=3, max_size=3),
       st.integers(1, 60))
@settings(max_examples=30, deadline=None)
def test_fincke_pohst_matches_brute_force(cols, target, r2):
    basis = np.array(cols, dtype=float)
    bound = int(np.abs(np.linalg.inv(basis.T)).sum(axis=1).max() * (r2**0.5 + 3)) + 1
    assume(bound <= 10)
    got = {tuple(z) for z in fincke_pohst(cols, target, Fraction(r2))}
    grid = np.array(list(product(range(-bound, bound + 1), repeat=3)))
    dist = ((grid @ basis - np.array([float(t) for t in target])) ** 2).sum(axis=1)
    want = {tuple(int(v) for v in z) for z in grid[dist <= r2 - 1e-9]}
    near = {tuple(int(v) for v in z) for z in grid[np.abs(dist - r2) <= 1e-9]}
    assert want <= got
    assert got - want <= near  # only boundary points may differ
