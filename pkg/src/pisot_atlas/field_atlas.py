"""Whole-field analyses: Pisot lists, gap sets, U_K, min T_K and difference decompositions.

Notation for a real number field K of degree d with embeddings sigma_1..sigma_d
(sigma_1 the distinguished real one):

- P_K: Pisot numbers theta with Q(theta) = K, listed theta_1 < theta_2 < ...
- D_K: positive differences of two elements of P_K.
- F_K: the set of consecutive gaps theta_{n+1} - theta_n.
- E_K: positive integers of K whose other conjugates lie in (-2, 2).
- U_K = E_K in (0, 2) and T_K = E_K in (2, oo), for totally real K.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Iterable, Sequence

import mpmath

from .box_enum import BoxConstraint, Disk, Window, enumerate_box
from .errors import (
    BoundaryUndecided,
    CapExhausted,
    ConsistencyError,
    DomainError,
    InsufficientRange,
    NotApplicable,
    NotInEK,
)
from .exact_arith.intmath import is_squarefree_int, totient
from .exact_arith.polynomial import IntPolynomial
from .exact_arith.sturm import isolate_real_roots
from .exact_arith.unit_disk import count_roots_in_unit_disk
from .number_field import (
    FieldElement,
    Maximality,
    NumberField,
    Position,
    decide_modulus,
    decide_position,
    make_field,
    quadratic_field,
    sort_by_sigma1,
)
from .pisot_salem import (
    SalemLift,
    TraceRecognition,
    chebyshev_step,
    is_pisot,
    is_root_of_unity_trace,
    is_salem_trace,
    psi_minpoly,
)

DEFAULT_CAP = 10**4


# -- small predicates ------------------------------------------------------------------


def _is_generator(x: FieldElement) -> bool:
    return x.degree == x.field.degree


def _is_pisot_generator(x: FieldElement) -> bool:
    return _is_generator(x) and bool(is_pisot(x))


def in_EK(x: FieldElement) -> bool:
    """sigma_1(x) > 0 and |sigma_j(x)| < 2 for every other embedding (real ones lie in (-2, 2))."""
    if decide_position(x, 1, 0, None) is Position.OUTSIDE:
        return False
    K = x.field
    for j in range(2, K.n_embeddings + 1):
        if decide_modulus(x, j, 2) is Position.OUTSIDE:
            return False
    return True


def _abs_exceeds_one(x: FieldElement, j: int) -> bool:
    """Exact |sigma_j(x)| > 1."""
    return decide_modulus(x, j, 1, strict=False) is Position.OUTSIDE


def _violation(x: FieldElement) -> int | None:
    for j in range(2, x.field.n_embeddings + 1):
        if _abs_exceeds_one(x, j):
            return j
    return None


# -- Pisot enumeration -----------------------------------------------------------------


def pisot_box(K: NumberField, lo, hi, hi_open: bool = False) -> BoxConstraint:
    """sigma_1 in (lo, hi], other real embeddings in (-1, 1), complex ones in the open unit disk."""
    return BoxConstraint.build(K, Window(lo, hi, True, hi_open), Window(-1, 1), Disk(1))


def _enumerate_pisot_range(K: NumberField, lo, hi) -> list[FieldElement]:
    lo, hi = Fraction(lo), Fraction(hi)
    if K.degree == 1:
        first = max(2, int(lo) + 1)
        return [K.integer(n) for n in range(first, int(hi) + 1)] if hi >= first else []
    res = enumerate_box(K, pisot_box(K, lo, hi))
    if res.boundary_skipped:
        raise BoundaryUndecided(
            "undecided boundary candidates: " + ", ".join(repr(x) for x in res.boundary_skipped)
        )
    return [x for x in res.elements if _is_generator(x)]


def enumerate_pisot(K: NumberField, X) -> list[FieldElement]:
    """theta_1 < theta_2 < ... up to sigma_1 <= X, as exact elements of K."""
    X = Fraction(X)
    if X <= 1:
        raise DomainError("the bound X must exceed 1")
    found = _enumerate_pisot_range(K, 1, X)
    if K.degree == 2 and K.surd is not None:
        expected = {x.coords for x in quadratic_pisot_closed_form(K, X)}
        if expected != {x.coords for x in found}:
            raise ConsistencyError("box enumeration disagrees with the quadratic closed form")
    return found


def quadratic_pisot_closed_form(K: NumberField, X) -> list[FieldElement]:
    """P_K up to X for K = Q(sqrt m) from the explicit description of quadratic Pisot numbers.

    For m = 2, 3 mod 4 these are floor(b sqrt m) + b sqrt m and 1 + that, b >= 1.
    For m = 1 mod 4 they are (a + b sqrt m)/2 with a = b mod 2 and |a - b sqrt m| < 2.
    """
    m = K.surd
    if m is None:
        raise DomainError("closed form needs a field built from sqrt:m")
    X = Fraction(X)
    den, reach = (2, 2) if m % 4 == 1 else (1, 1)
    out = []
    b = 1
    # the least candidate grows with b, so stop at the first b with nothing below X
    while True:
        r = isqrt(b * b * m)  # floor(b sqrt m); never exact since m is not a square
        cands = [a for a in range(r - reach + 1, r + reach + 1) if den == 1 or (a - b) % 2 == 0]
        below = [a for a in cands if _le_bound(a, b, m, den * X)]
        if not below:
            break
        for a in below:
            if not _le_bound(a, b, m, den):
                out.append(K.surd_element(Fraction(a, den), Fraction(b, den)))
        b += 1
    return sort_by_sigma1(out)


def _le_bound(a: int, b: int, m: int, bound: Fraction) -> bool:
    """a + b sqrt(m) <= bound, exactly, for b > 0."""
    t = bound - a
    return t >= 0 and t * t >= b * b * m


# -- gap reports -----------------------------------------------------------------------


@dataclass(frozen=True)
class GapEntry:
    value: FieldElement
    first_index: int
    multiplicity: int


@dataclass
class AtlasReport:
    field: NumberField
    bound: Fraction
    pisot_list: list[FieldElement]
    gaps: list[GapEntry]
    u_set: list[FieldElement] | None
    min_trace: FieldElement | None
    rho: FieldElement
    stabilization_index: int
    basis_caveat: Maximality
    telescoping_pairs: list[tuple[int, int, tuple[int, ...]]] = dc_field(default_factory=list)
    caveats: list[str] = dc_field(default_factory=list)

    @property
    def gap_values(self) -> list[FieldElement]:
        return [g.value for g in self.gaps]

    @property
    def third_values(self) -> tuple[FieldElement | None, FieldElement | None, bool | None]:
        """(u_3, d_3, equal?) reported side by side; equality is not asserted."""
        u3 = self.u_set[2] if self.u_set and len(self.u_set) >= 3 else None
        d3 = self.gaps[2].value if len(self.gaps) >= 3 else None
        agree = None if u3 is None or d3 is None else u3 == d3
        return u3, d3, agree


def _telescope_pairs(n: int) -> list[tuple[int, int]]:
    if n < 2:
        return []
    picks = {(1, n), (1, 2), (n - 1, n), (max(1, n // 3), max(2, 2 * n // 3)), (max(1, n // 2), n)}
    return sorted((a, b) for a, b in picks if a < b)


def gap_report(
    K: NumberField,
    X,
    with_u: bool = True,
    with_min_trace: bool = True,
) -> AtlasReport:
    """Observed F_K(X) with multiplicities, rho, telescoping checks and (optionally) U_K and min T_K."""
    X = Fraction(X)
    thetas = enumerate_pisot(K, X)
    if len(thetas) < 2:
        raise InsufficientRange(f"fewer than two Pisot numbers of K below {X}")
    diffs = [thetas[i + 1] - thetas[i] for i in range(len(thetas) - 1)]
    first: dict[tuple[int, ...], int] = {}
    counts: Counter = Counter()
    rep: dict[tuple[int, ...], FieldElement] = {}
    for i, g in enumerate(diffs, start=1):
        counts[g.coords] += 1
        if g.coords not in first:
            first[g.coords] = i
            rep[g.coords] = g
    for g in rep.values():
        if not in_EK(g):
            raise ConsistencyError(f"gap {g!r} is not in E_K")
    ordered = sort_by_sigma1(rep.values())
    gaps = [GapEntry(g, first[g.coords], counts[g.coords]) for g in ordered]
    stab = max(first.values())
    head = thetas[0] - 1
    rho = ordered[-1] if compare_gt(ordered[-1], head) else head
    index_of = {g.coords: k for k, g in enumerate(ordered)}
    pairs = []
    for m, n in _telescope_pairs(len(thetas)):
        ls = [0] * len(ordered)
        total = K.zero()
        for g in diffs[m - 1 : n - 1]:
            ls[index_of[g.coords]] += 1
            total = total + g
        if total != thetas[n - 1] - thetas[m - 1]:
            raise ConsistencyError("telescoping sum of gaps failed")
        pairs.append((m, n, tuple(ls)))
    caveats = ["gap set is observed up to the bound, not certified complete"]
    if not K.maximality.is_maximal:
        caveats.append("integral basis is the power basis; maximality not certified")
    u_set = min_t = None
    if with_u:
        u_set = compute_U(K)
        if not K.is_totally_real:
            caveats.append("U_K via cyclotomic-trace membership only (field not totally real)")
    if with_min_trace and K.is_totally_real:
        min_t = compute_minT(K)
    return AtlasReport(K, X, thetas, gaps, u_set, min_t, rho, stab, K.maximality, pairs, caveats)


def compare_gt(x: FieldElement, y: FieldElement) -> bool:
    from .number_field import compare_real

    return compare_real(x, y) > 0


# -- U_K ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class UElement:
    value: FieldElement
    recognition: TraceRecognition


def compute_U(K: NumberField) -> list[FieldElement]:
    """U_K sorted, each element a root-of-unity trace 2cos(2 k pi / n)."""
    return [u.value for u in compute_U_detailed(K)]


def compute_U_detailed(K: NumberField) -> list[UElement]:
    if K.degree == 1:
        one = K.one()
        return [UElement(one, is_root_of_unity_trace(one))]
    via_psi = _psi_route(K)
    if not K.is_totally_real:
        found = sort_by_sigma1(via_psi)
    else:
        box = BoxConstraint.build(K, Window(0, 2), Window(-2, 2))
        res = enumerate_box(K, box)
        if res.boundary_skipped:
            raise BoundaryUndecided("undecided U_K candidates")
        found = res.elements
        if {x.coords for x in found} != {x.coords for x in via_psi}:
            raise ConsistencyError("E_K slice and cyclotomic-trace search disagree on U_K")
    out = []
    for x in found:
        rec = is_root_of_unity_trace(x)
        if rec is None:
            raise ConsistencyError(f"{x!r} in U_K is not a root-of-unity trace")
        out.append(UElement(x, rec))
    return out


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _minkowski_real(K: NumberField, dps: int) -> tuple[list, list]:
    """Rows (embedding) of real and imaginary parts of the basis embeddings."""
    eps = Fraction(1, 1 << (dps * 4))
    re_rows, im_rows = [], []
    basis = K.basis()
    for j in range(1, K.n_embeddings + 1):
        if K.is_real_embedding(j):
            re_rows.append([_mpf(b.real_value(j, eps).mid) for b in basis])
            im_rows.append([mpmath.mpf(0)] * K.degree)
        else:
            vals = [b.complex_value(j, eps) for b in basis]
            re_rows.append([_mpf(v[0].mid) for v in vals])
            im_rows.append([_mpf(v[1].mid) for v in vals])
    return re_rows, im_rows


def _psi_route(K: NumberField) -> list[FieldElement]:
    """Elements of K in (0, 2) whose minimal polynomial is some Psi_n, phi(n) | 2d, n <= 8 d^2.

    A root y of Psi_n lies in K exactly when some assignment of roots of Psi_n
    to the embeddings solves the Minkowski system in integers. Candidates are
    rounded from a high-precision solve and then checked exactly.
    """
    d = K.degree
    dps = 60
    found: dict[tuple[int, ...], FieldElement] = {}
    with mpmath.workdps(dps):
        re_rows, im_rows = _minkowski_real(K, dps)
        # solve on the real rows and the real parts of complex pairs (imag parts must vanish)
        rows, idx = [], []
        for j in range(1, K.n_embeddings + 1):
            if K.is_real_embedding(j):
                rows.append(re_rows[j - 1])
                idx.append(j)
            else:
                rows.append(re_rows[j - 1])
                rows.append(im_rows[j - 1])
                idx.append(j)
                idx.append(-j)
        M = mpmath.matrix(rows)
        for n in range(3, 8 * d * d + 1):
            phi = totient(n)
            if (2 * d) % phi:
                continue
            psi = psi_minpoly(n)
            roots = [_mpf(iv.mid) for iv in _roots_fine(psi)]
            for assign in product(roots, repeat=K.n_embeddings):
                if not 0 < assign[0] < 2:
                    continue
                rhs = []
                for j, k in zip(idx, range(len(idx))):
                    rhs.append(assign[abs(j) - 1] if j > 0 else mpmath.mpf(0))
                try:
                    sol = mpmath.lu_solve(M, mpmath.matrix(rhs))
                except ZeroDivisionError:
                    continue
                coords = [int(mpmath.nint(v)) for v in sol]
                if max(abs(float(v) - c) for v, c in zip(sol, coords)) > 1e-6:
                    continue
                x = K.element(coords)
                if x.minpoly == psi and decide_position(x, 1, 0, 2) is Position.INSIDE:
                    found[x.coords] = x
    return sort_by_sigma1(found.values())


def _roots_fine(p: IntPolynomial):
    from .exact_arith.roots import refine_real_root

    return [refine_real_root(p, iv, Fraction(1, 1 << 200)) for iv in isolate_real_roots(p)]


# -- min T_K ----------------------------------------------------------------------------------


def compute_minT(K: NumberField, initial_bound=4, max_doublings: int = 64) -> FieldElement:
    """Smallest element of T_K = E_K in (2, oo); it is the smallest Salem trace number of degree d in K."""
    if K.degree == 1:
        return K.integer(3)
    if not K.is_totally_real:
        raise NotApplicable("min T_K is defined here only for totally real fields")
    lo, hi = Fraction(2), Fraction(initial_bound)
    if hi <= lo:
        raise DomainError("initial bound must exceed 2")
    for _ in range(max_doublings):
        box = BoxConstraint.build(K, Window(lo, hi, True, False), Window(-2, 2))
        res = enumerate_box(K, box)
        if res.boundary_skipped:
            raise BoundaryUndecided("undecided T_K candidates")
        for x in res.elements:
            if not _is_generator(x):
                raise ConsistencyError(f"{x!r} in T_K does not generate K")
            cert = is_salem_trace(x)
            if not cert or cert.degree != K.degree:
                raise ConsistencyError(f"{x!r} in T_K is not a Salem trace number")
            return x
        lo, hi = hi, 2 * hi
    raise CapExhausted("no element of T_K found below the doubling cap")


# -- differences ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DifferenceCertificate:
    target: FieldElement
    minuend: FieldElement
    subtrahend: FieldElement
    kind: str  # "InDk" or "NotPisotWitness"
    violation_embedding: int | None = None

    def verify(self) -> bool:
        if self.minuend - self.subtrahend != self.target:
            return False
        if not (_is_pisot_generator(self.minuend) and _is_pisot_generator(self.subtrahend)):
            return False
        if self.kind == "NotPisotWitness":
            j = self.violation_embedding
            return j is not None and _abs_exceeds_one(self.target, j)
        return True


def _checked(cert: DifferenceCertificate) -> DifferenceCertificate:
    if not cert.verify():
        raise ConsistencyError(f"difference certificate failed verification: {cert}")
    return cert


def _pisot_stream(K: NumberField, start, cap_doublings: int):
    """Pisot generators of K in increasing order, the bound doubling from `start`."""
    lo, hi = Fraction(1), Fraction(start)
    for _ in range(cap_doublings):
        yield from _enumerate_pisot_range(K, lo, hi)
        lo, hi = hi, 2 * hi
    raise CapExhausted("Pisot search bound exhausted")


def first_pisot(K: NumberField) -> FieldElement:
    """theta_1, the least Pisot generator of K."""
    return next(_pisot_stream(K, 4, 40))


def decompose_difference(K: NumberField, beta: FieldElement, cap_doublings: int = 40) -> DifferenceCertificate:
    """beta = (beta + theta) - theta with theta, beta + theta in P_K, theta of least sigma_1."""
    if beta.field != K:
        raise DomainError("beta does not belong to K")
    if not K.is_totally_real:
        raise NotApplicable("decomposition through E_K needs a totally real field")
    if not in_EK(beta):
        raise NotInEK(f"{beta!r} is not in E_K")
    for theta in _pisot_stream(K, 4, cap_doublings):
        top = beta + theta
        if _is_pisot_generator(top):
            return _checked(DifferenceCertificate(beta, top, theta, "InDk"))
    raise CapExhausted("no decomposition found")  # pragma: no cover


@dataclass(frozen=True)
class PowerShift:
    base: FieldElement
    exponent: int
    auto_squared: bool
    power: FieldElement
    result: FieldElement


def _has_negative_real_conjugate(x: FieldElement) -> bool:
    return any(decide_position(x, j, None, 0) is Position.INSIDE for j in range(2, x.field.r + 1))


def power_shift_search(alpha: FieldElement, mode: str, cap: int = DEFAULT_CAP) -> PowerShift:
    """Least exponent q with alpha^q - 1 (minus_one) or alpha^q + 1 (plus_one) in P_K."""
    if mode not in ("minus_one", "plus_one"):
        raise DomainError(f"unknown mode {mode!r}")
    if cap < 1:
        raise DomainError("cap must be positive")
    if not _is_pisot_generator(alpha):
        raise NotApplicable(f"{alpha!r} is not a Pisot generator of its field")
    squared = mode == "minus_one" and _has_negative_real_conjugate(alpha)
    base = alpha * alpha if squared else alpha
    shift = -1 if mode == "minus_one" else 1
    power = base
    for q in range(1, cap + 1):
        cand = power + shift
        if _is_pisot_generator(cand):
            return PowerShift(base, q, squared, power, cand)
        power = power * base
    raise CapExhausted(f"no exponent up to {cap} works")


def represent_one(K: NumberField, cap: int = DEFAULT_CAP, cap_doublings: int = 40) -> DifferenceCertificate:
    """1 = alpha^q - (alpha^q - 1) with both terms in P_K, from the least suitable Pisot generator."""
    for alpha in _pisot_stream(K, 4, cap_doublings):
        try:
            shift = power_shift_search(alpha, "minus_one", cap)
        except CapExhausted:
            continue
        return _checked(DifferenceCertificate(K.one(), shift.power, shift.result, "InDk"))
    raise CapExhausted("no Pisot generator yields 1")  # pragma: no cover


def _is_salem_generator(x: FieldElement) -> bool:
    if not _is_generator(x) or x.degree < 4:
        return False
    if decide_position(x, 1, 1, None) is not Position.INSIDE:
        return False
    inside, on = count_roots_in_unit_disk(x.minpoly)
    return inside == 1 and on == x.degree - 2


def salem_field(lift: SalemLift) -> tuple[NumberField, FieldElement]:
    """The field Q(tau) of a Salem lift and tau in it (embedding 1 is the largest real root)."""
    # x^d M(x + 1/x) is irreducible when M is: tau has degree 2 over the real field Q(tau + 1/tau)
    K = make_field(lift.lifted_poly, assume_irreducible=True)
    return K, K.theta


def represent_as_difference(
    tau: FieldElement | SalemLift, cap: int = DEFAULT_CAP, cap_doublings: int = 40
) -> DifferenceCertificate:
    """tau = tau*alpha - tau*alpha' with alpha - alpha' = 1, for tau Pisot or Salem generating K."""
    if isinstance(tau, SalemLift):
        _, tau = salem_field(tau)
    K = tau.field
    if K.degree == 1:
        n = tau.coords[0]
        if n < 2:
            raise NotApplicable("tau must be a rational integer >= 2")
        return _checked(DifferenceCertificate(tau, K.integer(2 * n), tau, "InDk"))
    if not (_is_pisot_generator(tau) or _is_salem_generator(tau)):
        raise NotApplicable(f"{tau!r} is neither a Pisot nor a Salem generator of its field")
    one = represent_one(K, cap, cap_doublings)
    return _checked(DifferenceCertificate(tau, tau * one.minuend, tau * one.subtrahend, "InDk"))


def nonpisot_difference_witnesses(K: NumberField, count: int, cap: int = DEFAULT_CAP) -> list[DifferenceCertificate]:
    """`count` distinct elements of D_K outside P_K, each with a Pisot pair and a conjugate of modulus > 1."""
    if count < 0:
        raise DomainError("count must be non-negative")
    if K.degree == 1:
        raise NotApplicable("D_Q minus P_Q is {1}; witnesses need K != Q")
    if count == 0:
        return []
    theta = first_pisot(K)
    out: list[DifferenceCertificate] = []
    if K.r >= 2:
        # alpha with positive real conjugates; alpha^(2q) - 1 minus alpha^q
        alpha = theta * theta
        power = alpha
        for _ in range(cap):
            top = power * power - 1
            if _is_pisot_generator(top) and _is_pisot_generator(power):
                diff = top - power
                j = _violation(diff)
                if j is not None:
                    out.append(_checked(DifferenceCertificate(diff, top, power, "NotPisotWitness", j)))
                    if len(out) == count:
                        return out
            power = power * alpha
        raise CapExhausted(f"only {len(out)} witnesses found up to exponent {cap}")
    # one real embedding: (alpha^n + 1) - (alpha^q - 1) with |sigma_2(alpha)|^q < 1/2
    alpha = theta
    power = alpha
    q = low = None
    for e in range(1, cap + 1):
        if _is_pisot_generator(power - 1) and decide_modulus(power, 2, Fraction(1, 2)) is Position.INSIDE:
            q, low = e, power - 1
            break
        power = power * alpha
    if q is None:
        raise CapExhausted("no exponent q with alpha^q - 1 Pisot and a small conjugate")
    power = power * alpha
    for _ in range(q + 1, cap + 1):
        top = power + 1
        if _is_pisot_generator(top):
            diff = top - low
            j = _violation(diff)
            if j is not None:
                out.append(_checked(DifferenceCertificate(diff, top, low, "NotPisotWitness", j)))
                if len(out) == count:
                    return out
        power = power * alpha
    raise CapExhausted(f"only {len(out)} witnesses found up to exponent {cap}")


# -- quadratic closed forms ------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticForms:
    m: int
    field: NumberField
    u_set: list[FieldElement]
    gaps: list[FieldElement]
    min_trace: FieldElement


def quadratic_closed_forms(m: int) -> QuadraticForms:
    """Predicted U_K, F_K and min T_K of Q(sqrt m), by m mod 4 and the parity of floor(sqrt m)."""
    if m < 2:
        raise DomainError("m must be at least 2")
    if not is_squarefree_int(m):
        from .errors import NotSquarefree

        raise NotSquarefree(f"{m} is not squarefree")
    K = quadratic_field(m)
    r = isqrt(m)
    s = K.surd_element
    h = Fraction(1, 2)
    if m % 4 in (2, 3):
        low, high = s(r - 1, 1), s(r, 1)
        gaps = [K.one(), low, high]
        if m in (2, 3):
            u_set, min_t = [K.one(), s(0, 1)], high
        else:
            u_set, min_t = [K.one()], low
    elif m == 5:
        u_set = [s(-h, h), K.one(), s(h, h)]
        gaps = list(u_set)
        min_t = s(Fraction(3, 2), h)
    else:
        shift = -3 if r % 2 == 0 else -2
        min_t = s(Fraction(shift + r, 2), h)
        u_set = [K.one()]
        gaps = [K.one(), min_t, min_t + 1]
    return QuadraticForms(m, K, sort_by_sigma1(u_set), sort_by_sigma1(gaps), min_t)


# -- density of trace powers ---------------------------------------------------------------


@dataclass
class DensityResult:
    N: int
    bins_per_axis: int
    dims: int
    counts: dict[tuple[int, ...], int]
    pisot_window_hits: int

    @property
    def cells_total(self) -> int:
        return self.bins_per_axis**self.dims

    @property
    def cells_hit(self) -> int:
        return len(self.counts)

    @property
    def all_hit(self) -> bool:
        return self.cells_hit == self.cells_total

    @property
    def pisot_window_rate(self) -> Fraction:
        return Fraction(self.pisot_window_hits, self.N)


def _locate(x: FieldElement, j: int, bins: int) -> tuple[int, bool]:
    """Bin of sigma_j(x) in [-2, 2] split into `bins` equal parts, and whether |sigma_j(x)| < 1.

    sigma_j(x) is irrational here, so refinement never stalls on a rational bin edge.
    """
    step = Fraction(4, bins)
    width = step / 4
    for _ in range(64):
        iv = x.real_value(j, width)
        a = (iv.lo + 2) // step
        b = (iv.hi + 2) // step
        inside = -1 < iv.lo and iv.hi < 1
        outside = iv.hi < -1 or iv.lo > 1
        if a == b and (inside or outside):
            return min(max(int(a), 0), bins - 1), inside
        width /= 16
    raise ConsistencyError("conjugate could not be located in a bin")


def density_experiment(lift: SalemLift, N: int, bins_per_axis: int) -> DensityResult:
    """Cells of [-2, 2]^(d-1) visited by the conjugates of tau^n + tau^-n, n = 1..N."""
    if N < 1 or bins_per_axis < 1:
        raise DomainError("N and the bin count must be positive")
    K = make_field(lift.source_minpoly, assume_irreducible=True)
    beta = K.theta
    if not is_salem_trace(beta):
        raise ConsistencyError("embedding 1 of the trace field is not the Salem trace")
    d = K.degree
    counts: Counter = Counter()
    window = 0
    for value in chebyshev_step(beta, N):
        spots = [_locate(value, j, bins_per_axis) for j in range(2, d + 1)]
        counts[tuple(c for c, _ in spots)] += 1
        if all(inside for _, inside in spots):
            window += 1
    return DensityResult(N, bins_per_axis, d - 1, dict(counts), window)


def iter_EK(K: NumberField, X) -> list[FieldElement]:
    """Elements of E_K with sigma_1 < X (totally real K)."""
    if not K.is_totally_real:
        raise NotApplicable("E_K is used for totally real fields")
    box = BoxConstraint.build(K, Window(0, X), Window(-2, 2))
    res = enumerate_box(K, box)
    if res.boundary_skipped:
        raise BoundaryUndecided("undecided E_K candidates")
    return res.elements


def pisot_differences(thetas: Sequence[FieldElement], limit) -> list[FieldElement]:
    """Distinct positive differences theta_n - theta_m below `limit` (a bounded sample of D_K)."""
    limit = Fraction(limit)
    seen: dict[tuple[int, ...], FieldElement] = {}
    for i, a in enumerate(thetas):
        for b in thetas[i + 1 :]:
            diff = b - a
            if decide_position(diff, 1, None, limit) is Position.INSIDE:
                seen.setdefault(diff.coords, diff)
    return sort_by_sigma1(seen.values())
