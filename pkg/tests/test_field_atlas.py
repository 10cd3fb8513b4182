from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from pisot_atlas.errors import DomainError, InsufficientRange, NotApplicable, NotInEK, NotSquarefree
from pisot_atlas.exact_arith.polynomial import IntPolynomial
from pisot_atlas.field_atlas import (
    compute_minT,
    compute_U,
    compute_U_detailed,
    decompose_difference,
    density_experiment,
    enumerate_pisot,
    gap_report,
    in_EK,
    iter_EK,
    nonpisot_difference_witnesses,
    pisot_differences,
    power_shift_search,
    quadratic_closed_forms,
    represent_as_difference,
    represent_one,
    salem_field,
)
from pisot_atlas.number_field import compare_real, decide_position, Position, make_field, quadratic_field, rational_field
from pisot_atlas.pisot_salem import is_pisot, is_pisot_generator, is_salem_trace, lift_salem, psi_minpoly

h = Fraction(1, 2)
Q = rational_field()
SQRT2 = quadratic_field(2)
SQRT3 = quadratic_field(3)
SQRT5 = quadratic_field(5)
DISC49 = make_field([-1, -2, 1, 1])
DISC229 = make_field([-1, -4, 0, 1])
PLASTIC = make_field([-1, -1, 0, 1])


def surd(K, a, b):
    return K.surd_element(Fraction(a), Fraction(b))


def approx(x, digits=12):
    return float(x.real_value(1, Fraction(1, 10**digits)).mid)


# -- an integer-arithmetic oracle for quadratic Pisot numbers ------------------------------------


def _lt_sqrt(t, s2):
    """t < sqrt(s2) for rational t and s2 >= 0."""
    return t < 0 or t * t < s2


def quadratic_pisot_oracle(m: int, X: int) -> set[tuple[Fraction, Fraction]]:
    """(a, b) with x = a + b sqrt m a Pisot integer in (1, X], by exact squared comparisons.

    b > 0 is forced by sigma_1 > 1 > |sigma_2|; then s = b sqrt m satisfies
    a - 1 < s < a + 1, 1 - a < s and s <= X - a.
    """
    half = m % 4 == 1
    step = h if half else Fraction(1)
    out = set()
    b = step
    while b * b * m < (X + 1) ** 2:
        s2 = b * b * m
        r = isqrt(int(s2))
        for k in range(-4, 5):
            a = Fraction(r + k) + ((b % 1) if half else 0)
            if _lt_sqrt(a - 1, s2) and not _lt_sqrt(a + 1, s2) and (a + 1) ** 2 != s2 and _lt_sqrt(1 - a, s2):
                if X - a >= 0 and (X - a) ** 2 >= s2:
                    out.add((a, b))
        b += step
    return out


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7, 13, 17, 21])
def test_enumerate_pisot_matches_quadratic_oracle(m):
    K = quadratic_field(m)
    got = {tuple(x.power_coeffs) for x in enumerate_pisot(K, 60)}
    assert got == quadratic_pisot_oracle(m, 60)


def test_enumerate_pisot_examples():
    assert enumerate_pisot(SQRT2, 6) == [surd(SQRT2, 1, 1), surd(SQRT2, 2, 1), surd(SQRT2, 2, 2), surd(SQRT2, 3, 2)]
    assert [x.coords for x in enumerate_pisot(Q, 5)] == [(2,), (3,), (4,), (5,)]
    assert enumerate_pisot(SQRT5, 3) == [surd(SQRT5, h, h), surd(SQRT5, Fraction(3, 2), h)]
    with pytest.raises(DomainError):
        enumerate_pisot(SQRT2, 1)


def test_enumerate_pisot_is_sorted_and_certified():
    for K in (DISC49, DISC229, PLASTIC):
        xs = enumerate_pisot(K, 30)
        assert xs
        for a, b in zip(xs, xs[1:]):
            assert compare_real(a, b) < 0
        for x in xs:
            assert is_pisot_generator(x)


# -- gap reports against the closed forms ---------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7, 10, 11, 13, 14, 17, 21, 29])
def test_gap_report_matches_closed_forms(m):
    pred = quadratic_closed_forms(m)
    rep = gap_report(pred.field, 400)
    assert rep.gap_values == pred.gaps
    assert rep.u_set == pred.u_set
    assert rep.min_trace == pred.min_trace


def test_closed_form_examples():
    f2 = quadratic_closed_forms(2)
    assert f2.gaps == [SQRT2.one(), surd(SQRT2, 0, 1), surd(SQRT2, 1, 1)]
    assert f2.u_set == [SQRT2.one(), surd(SQRT2, 0, 1)]
    K13 = quadratic_field(13)
    f13 = quadratic_closed_forms(13)
    assert f13.gaps == [K13.one(), surd(K13, h, h), surd(K13, Fraction(3, 2), h)]
    assert f13.min_trace == surd(K13, h, h)
    assert quadratic_closed_forms(17).min_trace == surd(quadratic_field(17), h, h)
    with pytest.raises(NotSquarefree):
        quadratic_closed_forms(12)


def test_rational_gap_report():
    rep = gap_report(Q, 100)
    assert [g.coords for g in rep.gap_values] == [(1,)]
    assert compute_U(Q) == [Q.one()]
    assert compute_minT(Q) == Q.integer(3)


def test_gap_report_needs_two_pisot_numbers():
    with pytest.raises(InsufficientRange):
        gap_report(SQRT2, 3)


def test_cubic_gap_report():
    rep = gap_report(DISC229, 500)
    assert rep.gap_values[0] == DISC229.one()
    assert rep.gap_values[1] == DISC229.theta
    assert abs(approx(rep.gap_values[1]) - 2.11490754) < 1e-8
    assert compute_U(DISC229) == [DISC229.one()]
    assert rep.min_trace == DISC229.theta


def test_rho_and_stabilization():
    rep = gap_report(SQRT2, 1000)
    assert rep.rho == surd(SQRT2, 1, 1)
    assert 1 <= rep.stabilization_index < len(rep.pisot_list)
    assert sum(g.multiplicity for g in rep.gaps) == len(rep.pisot_list) - 1


@pytest.mark.parametrize("K", [SQRT2, SQRT5, quadratic_field(7), DISC49, DISC229], ids=lambda K: K.spec)
def test_telescoping_and_gap_membership(K):
    rep = gap_report(K, 120, with_u=False, with_min_trace=False)
    thetas = rep.pisot_list
    gaps = rep.gap_values
    for m, n, ls in rep.telescoping_pairs:
        total = K.zero()
        for l, g in zip(ls, gaps):
            total = total + g * l
        assert total == thetas[n - 1] - thetas[m - 1]
    for g in gaps:
        assert in_EK(g)


@pytest.mark.parametrize("K", [SQRT2, SQRT3, SQRT5, quadratic_field(6), DISC49, DISC229], ids=lambda K: K.spec)
def test_order_statistics_and_gap_count(K):
    rep = gap_report(K, 300)
    d = K.degree
    assert len(rep.gaps) >= 2 ** (d - 1)
    u, g = rep.u_set, rep.gap_values
    assert g[0] == u[0]
    assert decide_position(g[0], 1, None, 1, hi_open=False) is Position.INSIDE
    if len(u) >= 2:
        assert g[1] == u[1]
    else:
        assert g[0] == K.one() and g[1] == rep.min_trace
    u3, d3, agree = rep.third_values
    assert agree is None or agree == (u3 == d3)


@pytest.mark.parametrize("K", [SQRT2, SQRT5, DISC49], ids=lambda K: K.spec)
def test_differences_partition_into_u_and_t(K):
    thetas = enumerate_pisot(K, 40)
    u = {x.coords for x in compute_U(K)}
    for diff in pisot_differences(thetas, 12):
        assert in_EK(diff)
        if decide_position(diff, 1, None, 2) is Position.INSIDE:
            assert diff.coords in u
        else:
            assert is_salem_trace(diff) and diff.degree == K.degree


# -- U_K and min T_K --------------------------------------------------------------------------------


def test_u_set_examples():
    assert compute_U(quadratic_field(6)) == [quadratic_field(6).one()]
    assert compute_U(SQRT3) == [SQRT3.one(), surd(SQRT3, 0, 1)]
    assert compute_U(SQRT5) == [surd(SQRT5, -h, h), SQRT5.one(), surd(SQRT5, h, h)]


def test_disc49_u_set():
    detail = compute_U_detailed(DISC49)
    assert [round(approx(e.value), 4) for e in detail] == [0.4450, 1.0, 1.2470, 1.8019]
    polys = [e.value.minpoly for e in detail]
    assert polys == [psi_minpoly(14), IntPolynomial([-1, 1]), psi_minpoly(7), psi_minpoly(14)]
    assert [(e.recognition.n, e.recognition.k) for e in detail] == [(14, 3), (6, 1), (7, 1), (14, 1)]


def test_u_set_outside_totally_real_fields():
    assert compute_U(PLASTIC) == [PLASTIC.one()]


def test_min_trace_examples():
    assert compute_minT(SQRT5) == surd(SQRT5, Fraction(3, 2), h)
    assert compute_minT(SQRT2) == surd(SQRT2, 1, 1)
    assert compute_minT(DISC229) == DISC229.theta
    assert compute_minT(SQRT5, initial_bound=Fraction(5, 2)) == surd(SQRT5, Fraction(3, 2), h)
    with pytest.raises(NotApplicable):
        compute_minT(PLASTIC)


def test_minimum_over_quadratic_fields():
    best = None
    for m in range(2, 51):
        if any(m % (p * p) == 0 for p in range(2, 8)):
            continue
        t = compute_minT(quadratic_field(m))
        v = approx(t)
        if best is None or v < best[0]:
            best = (v, m, t)
    K13 = quadratic_field(13)
    assert best[1] == 13 and best[2] == surd(K13, h, h)


# -- differences ------------------------------------------------------------------------------------


def test_decompose_examples():
    c = decompose_difference(SQRT2, surd(SQRT2, 0, 1))
    assert (c.minuend, c.subtrahend) == (surd(SQRT2, 2, 2), surd(SQRT2, 2, 1))
    c = decompose_difference(SQRT2, SQRT2.one())
    assert (c.minuend, c.subtrahend) == (surd(SQRT2, 2, 1), surd(SQRT2, 1, 1))
    c = decompose_difference(SQRT5, surd(SQRT5, -h, h))
    assert c.verify() and c.minuend - c.subtrahend == surd(SQRT5, -h, h)
    with pytest.raises(NotInEK):
        decompose_difference(SQRT2, SQRT2.integer(3))
    with pytest.raises(NotApplicable):
        decompose_difference(PLASTIC, PLASTIC.one())


@pytest.mark.parametrize("K", [SQRT2, SQRT5, DISC229], ids=lambda K: K.spec)
def test_every_small_ek_element_decomposes(K):
    for beta in iter_EK(K, 6):
        c = decompose_difference(K, beta)
        assert c.verify() and c.target == beta
        # theta is the least Pisot generator making beta + theta Pisot
        for theta in enumerate_pisot(K, approx(c.subtrahend) - 1e-9) if approx(c.subtrahend) > 1.5 else []:
            assert not is_pisot_generator(beta + theta)


def test_power_shift_examples():
    s = power_shift_search(surd(SQRT5, Fraction(3, 2), h), "minus_one")
    assert s.exponent == 1 and not s.auto_squared and s.result == surd(SQRT5, h, h)
    s = power_shift_search(surd(SQRT2, 1, 1), "minus_one")
    assert s.auto_squared and s.exponent == 1 and s.result == surd(SQRT2, 2, 2)
    s = power_shift_search(PLASTIC.theta, "plus_one")
    assert s.exponent == 1 and s.result == PLASTIC.theta + 1
    assert abs(approx(s.result) - 2.3247) < 1e-4
    with pytest.raises(NotApplicable):
        power_shift_search(surd(SQRT2, 0, 1), "minus_one")
    with pytest.raises(DomainError):
        power_shift_search(surd(SQRT2, 1, 1), "sideways")


@pytest.mark.parametrize("K", [SQRT2, SQRT5, DISC49, DISC229], ids=lambda K: K.spec)
def test_totally_real_minus_one_uses_first_power(K):
    for alpha in enumerate_pisot(K, 20):
        assert power_shift_search(alpha, "minus_one").exponent == 1


@pytest.mark.parametrize("K", [Q, SQRT2, SQRT5, PLASTIC, DISC49, make_field([-1, 0, -4, 1])], ids=lambda K: K.spec)
def test_one_is_a_difference(K):
    c = represent_one(K)
    assert c.verify() and c.target == K.one()


def test_represent_examples():
    phi = surd(SQRT5, h, h)
    c = represent_as_difference(phi)
    assert c.verify() and c.target == phi
    assert (c.minuend, c.subtrahend) == (surd(SQRT5, 2, 1), surd(SQRT5, Fraction(3, 2), h))
    c = represent_as_difference(Q.integer(3))
    assert (c.minuend, c.subtrahend) == (Q.integer(6), Q.integer(3))
    with pytest.raises(NotApplicable):
        represent_as_difference(surd(SQRT2, 0, 1))


def test_salem_number_is_a_difference():
    lift = lift_salem(IntPolynomial([-3, -1, 1]))
    K, tau = salem_field(lift)
    c = represent_as_difference(lift)
    assert c.verify() and c.target == tau
    assert is_pisot(c.minuend).degree == 4 and is_pisot(c.subtrahend).degree == 4


@pytest.mark.parametrize("K", [SQRT2, SQRT5, PLASTIC, DISC229], ids=lambda K: K.spec)
def test_pisot_numbers_are_differences(K):
    for theta in enumerate_pisot(K, 12)[:4]:
        c = represent_as_difference(theta)
        assert c.verify() and c.target == theta


def test_witness_examples():
    (w,) = nonpisot_difference_witnesses(SQRT2, 1)
    assert w.target == surd(SQRT2, 13, 10)
    assert (w.minuend, w.subtrahend) == (surd(SQRT2, 16, 12), surd(SQRT2, 3, 2))
    assert w.kind == "NotPisotWitness" and w.verify()
    assert nonpisot_difference_witnesses(SQRT2, 0) == []
    with pytest.raises(NotApplicable):
        nonpisot_difference_witnesses(Q, 1)


@pytest.mark.parametrize("K", [SQRT2, SQRT5, PLASTIC, DISC49], ids=lambda K: K.spec)
def test_witnesses_are_distinct_and_not_pisot(K):
    ws = nonpisot_difference_witnesses(K, 5)
    assert len({w.target.coords for w in ws}) == 5
    for w in ws:
        assert w.verify()
        assert not is_pisot(w.target)


# -- density ----------------------------------------------------------------------------------------


def test_density_single_point():
    res = density_experiment(lift_salem(IntPolynomial([-3, -1, 1])), 1, 8)
    assert res.counts == {(1,): 1}  # sigma_2(beta) ~ -1.303 lies in [-1.5, -1)
    assert res.pisot_window_hits == 0


def test_density_quadratic_all_bins():
    res = density_experiment(lift_salem(IntPolynomial([-3, -1, 1])), 200, 8)
    assert res.all_hit and sum(res.counts.values()) == 200
    assert 0 < res.pisot_window_rate < 1


@given(st.integers(1, 60))
@settings(max_examples=15, deadline=None)
def test_density_cells_match_float_values(n):
    import math

    lift = lift_salem(IntPolynomial([-3, -1, 1]))
    res = density_experiment(lift, n, 8)
    beta2 = (1 - math.sqrt(13)) / 2
    # sigma_2(tau^k + tau^-k) = 2 cos(k w) with 2 cos w = beta2
    w = math.acos(beta2 / 2)
    expect = {}
    for k in range(1, n + 1):
        v = 2 * math.cos(k * w)
        cell = min(int((v + 2) // 0.5), 7)
        expect[(cell,)] = expect.get((cell,), 0) + 1
    assert res.counts == expect
