"""Enumerate the algebraic integers of K whose embeddings lie in a box.

The search runs on the Minkowski lattice. Each real embedding is confined to
a window and each complex embedding to a disk. After rescaling the box to the
cube [-1, 1]^d, every solution lies in the ball of radius sqrt(d). The scan
LLL-reduces a dyadic approximation of the rescaled lattice and enumerates
that ball with Fincke-Pohst. The radius is inflated by a certified bound on
the approximation error, which is derived from trace-dual coordinate bounds.
Candidates are then filtered by certified interval tests and exact decisions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import Iterator, Mapping

from .errors import BoundaryUndecided, ConsistencyError, Unbounded
from .exact_arith.dyadic import DyadicInterval, floor_dyadic
from .number_field import (
    FieldElement,
    NumberField,
    Position,
    decide_modulus,
    decide_position,
    sort_by_sigma1,
)


@dataclass(frozen=True)
class Window:
    """Interval for a real embedding; None marks an infinite end."""

    lo: Fraction | None = None
    hi: Fraction | None = None
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self):
        if self.lo is not None:
            object.__setattr__(self, "lo", Fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", Fraction(self.hi))

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    @property
    def empty(self) -> bool:
        if not self.bounded:
            return False
        return self.lo > self.hi or (self.lo == self.hi and (self.lo_open or self.hi_open))

    def contains_interval(self, iv: DyadicInterval) -> bool:
        lo_ok = self.lo is None or iv.lo > self.lo or (iv.lo == self.lo and not self.lo_open)
        hi_ok = self.hi is None or iv.hi < self.hi or (iv.hi == self.hi and not self.hi_open)
        return lo_ok and hi_ok

    def misses_interval(self, iv: DyadicInterval) -> bool:
        return (self.lo is not None and iv.hi < self.lo) or (self.hi is not None and iv.lo > self.hi)


@dataclass(frozen=True)
class Disk:
    """|sigma_j(x)| < radius (or <= radius when strict is False)."""

    radius: Fraction
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))


@dataclass(frozen=True)
class BoxConstraint:
    windows: Mapping[int, Window] = dc_field(default_factory=dict)
    disks: Mapping[int, Disk] = dc_field(default_factory=dict)

    @classmethod
    def build(cls, K: NumberField, sigma1: Window, others: Window | None = None, disk: Disk | None = None):
        """Window on embedding 1, a common window on other real embeddings and a common disk on complex ones."""
        windows = {1: sigma1}
        for j in range(2, K.r + 1):
            if others is not None:
                windows[j] = others
        disks = {}
        for j in range(K.r + 1, K.r + K.s + 1):
            if disk is not None:
                disks[j] = disk
        return cls(windows, disks)


@dataclass
class EnumerationResult:
    elements: list[FieldElement]
    exhausted: bool = True
    boundary_skipped: list[FieldElement] = dc_field(default_factory=list)


# -- exact membership ---------------------------------------------------------------


def satisfies(x: FieldElement, c: BoxConstraint) -> bool:
    """Exact membership test using only decide_position / decide_modulus."""
    for j, w in c.windows.items():
        if decide_position(x, j, w.lo, w.hi, w.lo_open, w.hi_open) is Position.OUTSIDE:
            return False
    for j, dk in c.disks.items():
        if decide_modulus(x, j, dk.radius, dk.strict) is Position.OUTSIDE:
            return False
    return True


# -- lattice helpers ---------------------------------------------------------------------


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(cols: list[list[int]], delta: Fraction = Fraction(3, 4)) -> tuple[list[list[int]], list[list[int]]]:
    """LLL-reduce integer basis vectors; returns (reduced vectors, U) with reduced[k] = sum_i U[k][i] cols[i]."""
    n = len(cols)
    b = [list(v) for v in cols]
    u = [[int(i == k) for i in range(n)] for k in range(n)]

    def gso():
        bstar: list[list[Fraction]] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms: list[Fraction] = []
        for i in range(n):
            v = [Fraction(a) for a in b[i]]
            for j in range(i):
                mu[i][j] = _dot(b[i], bstar[j]) / norms[j] if norms[j] else Fraction(0)
                v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(_dot(v, v))
        return mu, norms

    mu, norms = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [a - q * c for a, c in zip(b[k], b[j])]
                u[k] = [a - q * c for a, c in zip(u[k], u[j])]
                mu, norms = gso()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            u[k], u[k - 1] = u[k - 1], u[k]
            mu, norms = gso()
            k = max(k - 1, 1)
    return b, u


def _sqrt_floor_frac(q: Fraction) -> Fraction:
    """An upper bound for sqrt(q) with small relative slack (q >= 0)."""
    if q <= 0:
        return Fraction(0)
    scale = 1 << 40
    s = isqrt(q.numerator * scale * scale // q.denominator) + 1
    return Fraction(s, scale)


def fincke_pohst(vectors: list[list[int]], target: list[Fraction], radius_sq: Fraction) -> Iterator[list[int]]:
    """All integer z with ||sum z_i vectors[i] - target||^2 <= radius_sq (a superset is allowed at the edge)."""
    n = len(vectors)
    bstar: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms: list[Fraction] = []
    for i in range(n):
        v = [Fraction(a) for a in vectors[i]]
        for j in range(i):
            mu[i][j] = _dot(vectors[i], bstar[j]) / norms[j]
            v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(_dot(v, v))
    if any(nm == 0 for nm in norms):
        raise ConsistencyError("degenerate lattice basis")
    tau = [_dot(target, bstar[k]) / norms[k] for k in range(n)]
    # float shadows for quick range estimates; exact values decide
    z = [0] * n

    def rec(k: int, remaining: Fraction) -> Iterator[list[int]]:
        center = tau[k] - sum((mu[j][k] * z[j] for j in range(k + 1, n)), Fraction(0))
        span = _sqrt_floor_frac(remaining / norms[k])
        lo = ceil(center - span)
        hi = floor(center + span)
        for zk in range(lo, hi + 1):
            diff = zk - center
            left = remaining - norms[k] * diff * diff
            if left < 0:
                continue
            z[k] = zk
            if k == 0:
                yield list(z)
            else:
                yield from rec(k - 1, left)
        z[k] = 0

    yield from rec(n - 1, radius_sq)


# -- certified geometry --------------------------------------------------------------------


class _Geometry:
    """Interval data for the basis embeddings, shared across enumerations of one field."""

    _cache: dict = {}

    def __init__(self, K: NumberField, bits: int):
        self.K = K
        self.bits = bits
        eps = Fraction(1, 1 << bits)
        basis = K.basis()
        self.real = [[w.real_value(j, eps) for w in basis] for j in range(1, K.r + 1)]
        self.cplx = [[w.complex_value(j, eps) for w in basis] for j in range(K.r + 1, K.r + K.s + 1)]

    @classmethod
    def get(cls, K: NumberField, bits: int) -> _Geometry:
        key = (K, bits)
        g = cls._cache.get(key)
        if g is None:
            g = cls._cache[key] = _Geometry(K, bits)
        return g


def _imul(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


def _trace_dual(K: NumberField) -> list[list[Fraction]]:
    """Rows of T^-1 for the trace form T_ik = Tr(w_i w_k)."""
    from .number_field import _mat_inverse

    basis = K.basis()
    tr = [[(a * b).trace for b in basis] for a in basis]
    return _mat_inverse(tr)


def coordinate_bounds(K: NumberField, c: BoxConstraint, bits: int = 64) -> list[tuple[int, int]]:
    """Certified integer ranges for each basis coordinate of any solution.

    Uses c_k = Tr(x w*_k) for the trace-dual basis w*: a sum over embeddings
    of sigma_j(x) sigma_j(w*_k), where each factor is enclosed by an interval.
    """
    _require_bounded(K, c)
    d = K.degree
    geo = _Geometry.get(K, bits)
    tinv = _trace_dual(K)
    out = []
    for k in range(d):
        lo = hi = Fraction(0)
        for jj in range(K.r):
            w = c.windows[jj + 1]
            dual = [Fraction(0), Fraction(0)]
            for i in range(d):
                t = tinv[k][i]
                iv = geo.real[jj][i]
                a, b = t * iv.lo, t * iv.hi
                dual[0] += min(a, b)
                dual[1] += max(a, b)
            a, b = _imul((w.lo, w.hi), (dual[0], dual[1]))
            lo += a
            hi += b
        for jj in range(K.s):
            dk = c.disks[K.r + jj + 1]
            # |sigma_j(w*_k)| <= |Re| + |Im|
            bound_re = Fraction(0)
            bound_im = Fraction(0)
            for i in range(d):
                t = abs(tinv[k][i])
                re, im = geo.cplx[jj][i]
                bound_re += t * max(abs(re.lo), abs(re.hi))
                bound_im += t * max(abs(im.lo), abs(im.hi))
            m = 2 * dk.radius * (bound_re + bound_im)
            lo -= m
            hi += m
        out.append((ceil(lo), floor(hi)))
    return out


def _require_bounded(K: NumberField, c: BoxConstraint) -> None:
    for j in range(1, K.r + 1):
        w = c.windows.get(j)
        if w is None or not w.bounded:
            raise Unbounded(f"embedding {j} has no finite window; the region is unbounded")
    for j in range(K.r + 1, K.r + K.s + 1):
        if j not in c.disks:
            raise Unbounded(f"complex embedding {j} has no disk; the region is unbounded")


def _is_empty(c: BoxConstraint) -> bool:
    return any(w.empty for w in c.windows.values())


# -- enumeration -------------------------------------------------------------------------------


def enumerate_box(K: NumberField, c: BoxConstraint) -> EnumerationResult:
    """All algebraic integers (over the installed basis) satisfying c, sorted by sigma_1."""
    _require_bounded(K, c)
    if _is_empty(c):
        return EnumerationResult([])
    d = K.degree
    bounds = coordinate_bounds(K, c)
    if any(lo > hi for lo, hi in bounds):
        return EnumerationResult([])
    if d == 1:
        lo, hi = bounds[0]
        cands = (K.element([n]) for n in range(lo, hi + 1))
        return _finish(K, c, cands)

    coord_sum = sum(max(abs(lo), abs(hi)) for lo, hi in bounds) + 1
    # scale factors: every real window -> [-1, 1]; every disk -> square [-1, 1]^2
    halves, mids = [], []
    for j in range(1, K.r + 1):
        w = c.windows[j]
        half = (w.hi - w.lo) / 2
        halves.append(half if half > 0 else Fraction(1))
        mids.append((w.hi + w.lo) / 2)
    for j in range(K.r + 1, K.r + K.s + 1):
        rad = c.disks[j].radius
        halves += [rad, rad]
        mids += [Fraction(0), Fraction(0)]
    min_half = min(halves)
    # precision so that the approximation error over the coordinate box stays below 2^-8
    p = max(coord_sum.bit_length() + 10 - min(0, floor_log2(min_half)), 24)
    geo = _Geometry.get(K, p + 8 + max(0, -floor_log2(min_half)))
    scale = 1 << p
    cols: list[list[int]] = []
    for i in range(d):
        col = []
        for jj in range(K.r):
            iv = geo.real[jj][i]
            col.append(_round_scaled(iv.mid / halves[jj], p))
        for jj in range(K.s):
            re, im = geo.cplx[jj][i]
            h = halves[K.r + 2 * jj]
            col.append(_round_scaled(re.mid / h, p))
            col.append(_round_scaled(im.mid / h, p))
        cols.append(col)
    # error per matrix entry (scaled by 2^p) is at most 1 + 2^p * (enclosure width / half)
    entry_err = Fraction(1)
    for jj in range(K.r):
        for i in range(d):
            entry_err = max(entry_err, 1 + scale * geo.real[jj][i].width / halves[jj])
    for jj in range(K.s):
        for i in range(d):
            re, im = geo.cplx[jj][i]
            entry_err = max(entry_err, 1 + scale * max(re.width, im.width) / halves[K.r + 2 * jj])
    eta = entry_err * coord_sum  # in scaled units, per coordinate
    target = [scale * mids[k] / halves[k] for k in range(d)]
    radius_sq = d * (scale + eta) ** 2
    reduced, u = lll_reduce(cols)

    def candidates():
        for z in fincke_pohst(reduced, target, radius_sq):
            coords = [sum(z[k] * u[k][i] for k in range(d)) for i in range(d)]
            if all(lo <= v <= hi for v, (lo, hi) in zip(coords, bounds)):
                yield K.element(coords)

    return _finish(K, c, candidates())


def floor_log2(q: Fraction) -> int:
    q = Fraction(q)
    e = q.numerator.bit_length() - q.denominator.bit_length()
    while Fraction(2) ** e > q:
        e -= 1
    while Fraction(2) ** (e + 1) <= q:
        e += 1
    return e


def _round_scaled(q: Fraction, p: int) -> int:
    return floor(q * (1 << p))


def _quick_verdict(x: FieldElement, c: BoxConstraint) -> bool | None:
    """Certified interval screen: True/False when decisive, None otherwise."""
    eps = Fraction(1, 1 << 40)
    undecided = False
    for j, w in c.windows.items():
        iv = x.real_value(j, eps)
        if w.misses_interval(iv):
            return False
        if not w.contains_interval(iv):
            undecided = True
    for j, dk in c.disks.items():
        re, im = x.complex_value(j, eps)
        r = dk.radius
        re_lo = min(abs(re.lo), abs(re.hi)) if not (re.lo <= 0 <= re.hi) else Fraction(0)
        im_lo = min(abs(im.lo), abs(im.hi)) if not (im.lo <= 0 <= im.hi) else Fraction(0)
        if re_lo * re_lo + im_lo * im_lo > r * r:
            return False
        re_hi = max(abs(re.lo), abs(re.hi))
        im_hi = max(abs(im.lo), abs(im.hi))
        if not re_hi * re_hi + im_hi * im_hi < r * r:
            undecided = True
    return None if undecided else True


def _finish(K: NumberField, c: BoxConstraint, cands) -> EnumerationResult:
    accepted, skipped = [], []
    seen = set()
    for x in cands:
        if x.coords in seen:
            continue
        seen.add(x.coords)
        verdict = _quick_verdict(x, c)
        if verdict is None:
            try:
                verdict = satisfies(x, c)
            except BoundaryUndecided:
                skipped.append(x)
                continue
        if verdict:
            accepted.append(x)
    return EnumerationResult(sort_by_sigma1(accepted), True, skipped)


def brute_oracle(K: NumberField, c: BoxConstraint, coord_bound: int) -> EnumerationResult:
    """Scan the full cube [-coord_bound, coord_bound]^d with exact decisions only (test oracle)."""
    if coord_bound < 1:
        raise ValueError("coord_bound must be >= 1")
    d = K.degree
    accepted, skipped = [], []

    def rec(prefix):
        if len(prefix) == d:
            yield prefix
            return
        for v in range(-coord_bound, coord_bound + 1):
            yield from rec(prefix + [v])

    for coords in rec([]):
        x = K.element(coords)
        try:
            if satisfies(x, c):
                accepted.append(x)
        except BoundaryUndecided:
            skipped.append(x)
    return EnumerationResult(sort_by_sigma1(accepted), True, skipped)
