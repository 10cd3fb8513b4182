"""Polynomials over prime fields F_p: distinct-degree factorization and friends.

Polynomials are plain lists of residues in ascending order with no trailing
zeros. These helpers back the irreducibility sieve and the local maximality
test for the power basis.
"""

from __future__ import annotations

from .intmath import primes_up_to
from .polynomial import IntPolynomial, discriminant

Fp = list[int]


def _trim(a: Fp) -> Fp:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(p: IntPolynomial, mod: int) -> Fp:
    return _trim([c % mod for c in p.coeffs])


def fp_sub(a: Fp, b: Fp, mod: int) -> Fp:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % mod for i in range(n)])


def fp_mul(a: Fp, b: Fp, mod: int) -> Fp:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % mod for c in out])


def fp_divmod(a: Fp, b: Fp, mod: int) -> tuple[Fp, Fp]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial mod p")
    a = list(a)
    inv = pow(b[-1], -1, mod)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % mod
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % mod
        _trim(a)
    return _trim(q), a


def fp_monic(a: Fp, mod: int) -> Fp:
    if not a:
        return a
    inv = pow(a[-1], -1, mod)
    return [c * inv % mod for c in a]


def fp_gcd(a: Fp, b: Fp, mod: int) -> Fp:
    while b:
        a, b = b, fp_divmod(a, b, mod)[1]
    return fp_monic(a, mod)


def fp_derivative(a: Fp, mod: int) -> Fp:
    return _trim([i * a[i] % mod for i in range(1, len(a))])


def fp_powmod(base: Fp, e: int, f: Fp, mod: int) -> Fp:
    result: Fp = [1]
    base = fp_divmod(base, f, mod)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, mod), f, mod)[1]
        base = fp_divmod(fp_mul(base, base, mod), f, mod)[1]
        e >>= 1
    return result


def distinct_degree_pattern(f: Fp, mod: int) -> list[int]:
    """Degrees of the irreducible factors of a squarefree monic f over F_p."""
    f = fp_monic(f, mod)
    degrees: list[int] = []
    h: Fp = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = fp_powmod(h, mod, f, mod)
        g = fp_gcd(f, fp_sub(h, [0, 1], mod), mod)
        if len(g) > 1:
            degrees.extend([i] * ((len(g) - 1) // i))
            f = fp_divmod(f, g, mod)[0]
            h = fp_divmod(h, f, mod)[1]
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return sorted(degrees)


def _subset_sums(parts: list[int]) -> set[int]:
    sums = {0}
    for d in parts:
        sums |= {s + d for s in sums}
    return sums


def possible_factor_degrees(p: IntPolynomial, n_primes: int = 25) -> tuple[set[int], list[tuple[int, list[int]]]]:
    """Degrees a rational factor of squarefree p could have, by the degree-pattern sieve.

    Each good prime (not dividing the leading coefficient or the discriminant)
    restricts factor degrees to subset sums of its factorization pattern.
    """
    disc = discriminant(p)
    if disc == 0:
        raise ValueError("degree-pattern sieve needs a squarefree polynomial")
    allowed = set(range(p.degree + 1))
    patterns = []
    for q in primes_up_to(2000):
        if len(patterns) >= n_primes:
            break
        if p.lc % q == 0 or disc % q == 0:
            continue
        pattern = distinct_degree_pattern(reduce(p, q), q)
        patterns.append((q, pattern))
        allowed &= _subset_sums(pattern)
        if allowed <= {0, p.degree}:
            break
    return allowed, patterns


def fp_squarefree_factorization(f: Fp, mod: int) -> list[tuple[Fp, int]]:
    """Monic squarefree factors with multiplicities (Yun's method adapted to char p)."""
    out: list[tuple[Fp, int]] = []

    def rec(a: Fp, mult: int) -> None:
        a = fp_monic(a, mod)
        if len(a) <= 1:
            return
        da = fp_derivative(a, mod)
        if not da:
            # a is a p-th power: a(x) = b(x^p), and b^p = b(x^p) over F_p
            b = [a[i] for i in range(0, len(a), mod)]
            rec(b, mult * mod)
            return
        c = fp_gcd(a, da, mod)
        w = fp_divmod(a, c, mod)[0]
        i = 1
        while len(w) > 1:
            y = fp_gcd(w, c, mod)
            z = fp_divmod(w, y, mod)[0]
            if len(z) > 1:
                out.append((fp_monic(z, mod), i * mult))
            i += 1
            w = y
            c = fp_divmod(c, y, mod)[0]
        if len(c) > 1:
            # remaining c is a p-th power
            b = [c[k] for k in range(0, len(c), mod)]
            rec(b, mult * mod)

    rec(f, 1)
    return out


def dedekind_maximal_at(f: IntPolynomial, p: int) -> bool:
    """Dedekind's criterion: is Z[x]/(f) maximal at the prime p?

    With f = prod g_i^e_i mod p, let g be the product of the distinct g_i
    lifted to Z, h the lift of f/g mod p and F = (g*h - f)/p. The order is
    p-maximal iff gcd(F mod p, g, h) = 1 over F_p.
    """
    fbar = reduce(f, p)
    parts = fp_squarefree_factorization(fbar, p)
    g: Fp = [1]
    for part, _ in parts:
        g = fp_mul(g, part, p)
    h = fp_divmod(fbar, g, p)[0]
    gl = IntPolynomial(g)
    hl = IntPolynomial(h)
    diff = gl * hl - f
    if any(c % p for c in diff.coeffs):
        raise ArithmeticError("Dedekind lift is not congruent to f mod p")
    big_f = IntPolynomial(c // p for c in diff.coeffs)
    common = fp_gcd(fp_gcd(reduce(big_f, p), g, p), h, p)
    return len(common) <= 1
