"""Pisot and Salem-trace predicates, Salem lifts, trace powers, cyclotomic traces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import ConsistencyError, DomainError, NotSalemTrace, Reducible
from .exact_arith.dyadic import DyadicInterval
from .exact_arith.intmath import coprime_residues, cyclotomic, totient
from .exact_arith.polynomial import IntPolynomial, is_squarefree, palindromic_to_trace, trace_to_palindromic
from .exact_arith.roots import refine_real_root
from .exact_arith.sturm import isolate_real_roots, sturm_count_in
from .exact_arith.unit_disk import count_roots_in_unit_disk
from .number_field import FieldElement, Position, decide_position


@dataclass(frozen=True)
class PisotCertificate:
    value: bool
    degree: int
    sigma1_above_one: bool
    inside_unit_disk: int
    on_unit_circle: int

    def __bool__(self) -> bool:
        return self.value


@dataclass(frozen=True)
class SalemTraceCertificate:
    value: bool
    degree: int
    sigma1_above_two: bool
    roots_in_open_band: int

    def __bool__(self) -> bool:
        return self.value


def is_pisot(x: FieldElement) -> PisotCertificate:
    """Is sigma_1(x) a Pisot number: > 1 with every other conjugate of modulus < 1."""
    above = decide_position(x, 1, 1, None) is Position.INSIDE
    m = x.minpoly
    e = m.degree
    if e == 1:
        # rational integers: the Pisot ones are n >= 2
        return PisotCertificate(above, 1, above, 0, 0)
    inside, on = count_roots_in_unit_disk(m)
    return PisotCertificate(above and inside == e - 1, e, above, inside, on)


def is_pisot_generator(x: FieldElement) -> bool:
    """Pisot and generating the whole field (membership in the field's Pisot set)."""
    return x.degree == x.field.degree and bool(is_pisot(x))


def salem_trace_poly_check(m: IntPolynomial) -> SalemTraceCertificate:
    """Salem-trace test on an irreducible monic minimal polynomial."""
    e = m.degree
    if e < 2:
        return SalemTraceCertificate(False, e, False, 0)
    above = sturm_count_in(m, 2, None) == 1
    band = sturm_count_in(m, -2, 2)
    return SalemTraceCertificate(above and band == e - 1, e, above, band)


def is_salem_trace(x: FieldElement) -> SalemTraceCertificate:
    """Degree >= 2, sigma_1(x) > 2 and every other conjugate real in (-2, 2)."""
    m = x.minpoly
    e = m.degree
    above = decide_position(x, 1, 2, None) is Position.INSIDE
    if e < 2:
        return SalemTraceCertificate(False, e, above, 0)
    band = sturm_count_in(m, -2, 2)
    return SalemTraceCertificate(above and band == e - 1, e, above, band)


@dataclass(frozen=True)
class SalemLift:
    source_minpoly: IntPolynomial
    lifted_poly: IntPolynomial
    salem_enclosure: DyadicInterval

    def refine(self, width) -> DyadicInterval:
        return refine_real_root(self.lifted_poly, self.salem_enclosure, width)


def lift_salem(m: IntPolynomial) -> SalemLift:
    """The Salem polynomial P(x) = x^d M(x + 1/x) of a Salem-trace minimal polynomial M."""
    d = m.degree
    if d < 2 or m.lc != 1:
        raise NotSalemTrace(f"{m} must be monic of degree >= 2")
    if not is_squarefree(m) or len(isolate_real_roots(m)) != d:
        raise NotSalemTrace(f"{m} is not squarefree with all roots real")
    if not salem_trace_poly_check(m):
        raise NotSalemTrace(f"{m} does not have one root > 2 and the rest in (-2, 2)")
    from .number_field import _irreducibility

    try:
        _irreducibility(m, assume_irreducible=False)
    except Reducible as exc:
        raise NotSalemTrace(f"{m} is reducible") from exc
    p = trace_to_palindromic(m)
    if p.coeffs != p.reciprocal().coeffs or p[0] != 1:
        raise ConsistencyError("lifted polynomial is not self-reciprocal")
    if p.sign_at(1) == 0 or p.sign_at(-1) == 0:
        raise ConsistencyError("lifted polynomial vanishes at +-1")
    if not is_squarefree(p):
        raise ConsistencyError("lifted polynomial is not squarefree")
    inside, on = count_roots_in_unit_disk(p)
    if (inside, on) != (1, 2 * d - 2) or sturm_count_in(p, 1, None) != 1:
        raise ConsistencyError(f"root census of {p} is not that of a Salem polynomial")
    tau = isolate_real_roots(p)[-1]
    return SalemLift(m, p, tau)


def chebyshev_step(beta: FieldElement, n: int) -> Iterator[FieldElement]:
    """C_1(beta), ..., C_n(beta) via C_{k+1} = beta C_k - C_{k-1}, C_0 = 2."""
    prev, cur = beta.field.integer(2), beta
    for _ in range(n):
        yield cur
        prev, cur = cur, beta * cur - prev


def trace_power(beta: FieldElement, n: int, check: bool = True) -> FieldElement:
    """tau^n + tau^-n as an element of K, where beta = tau + 1/tau."""
    if n < 1:
        raise DomainError("n must be positive")
    if check and not is_salem_trace(beta):
        raise NotSalemTrace("argument is not a Salem trace number")
    for k, value in enumerate(chebyshev_step(beta, n), start=1):
        if k == n:
            result = value
    if check:
        cert = is_salem_trace(result)
        if not cert or cert.degree != beta.degree:
            raise ConsistencyError("trace power lost the Salem-trace property")
    return result


@lru_cache(maxsize=None)
def psi_minpoly(n: int) -> IntPolynomial:
    """Minimal polynomial of 2cos(2 pi / n), from Phi_n by the x + 1/x rewrite."""
    if n < 3:
        raise DomainError("n must be at least 3")
    return palindromic_to_trace(cyclotomic(n))


@dataclass(frozen=True)
class TraceRecognition:
    n: int
    k: int
    psi: IntPolynomial


def in_trace_window(x: FieldElement) -> bool:
    """sigma_1(x) in (0, 2) and every conjugate real in (-2, 2)."""
    if decide_position(x, 1, 0, 2) is Position.OUTSIDE:
        return False
    m = x.minpoly
    return sturm_count_in(m, -2, 2) == m.degree


def is_root_of_unity_trace(x: FieldElement) -> TraceRecognition | None:
    """Recognize x as 2cos(2 k pi / n) with gcd(k, n) = 1, or return None."""
    if not in_trace_window(x):
        return None
    m = x.minpoly
    e = m.degree
    for n in range(3, 8 * e * e + 1):
        if totient(n) != 2 * e:
            continue
        psi = psi_minpoly(n)
        if psi != m:
            continue
        return TraceRecognition(n, _locate_k(x, n, psi), psi)
    raise ConsistencyError(f"{m} has all roots in (-2, 2) but matches no cyclotomic trace")


def _locate_k(x: FieldElement, n: int, psi: IntPolynomial) -> int:
    # roots 2cos(2 l pi / n) decrease in l on 1 <= l < n/2
    ls = [l for l in coprime_residues(n) if 2 * l < n]
    ivs = isolate_real_roots(psi)  # ascending, so reversed order of l
    if len(ivs) != len(ls):
        raise ConsistencyError("root count of Psi_n does not match phi(n)/2")
    ivs = list(reversed(ivs))
    if len(ls) == 1:
        return ls[0]
    width = Fraction(1, 1 << 16)
    while True:
        value = x.real_value(1, width)
        hits = [i for i, iv in enumerate(ivs) if iv.overlaps(value)]
        # sigma_1(x) is a root of psi, so a unique overlap identifies it
        if len(hits) == 1:
            return ls[hits[0]]
        ivs = [refine_real_root(psi, iv, width) for iv in ivs]
        width /= 2 ** 8
