"""Elementary integer number theory: primes, totients, squarefreeness, cyclotomics."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

from .polynomial import IntPolynomial


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def icbrt(n: int) -> int:
    """Floor of the real cube root of n >= 0."""
    if n < 0:
        raise ValueError("negative argument")
    r = int(round(n ** (1.0 / 3))) if n < 1 << 900 else 1 << (n.bit_length() // 3 + 1)
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def square_prime_divisors(n: int) -> list[int]:
    """All primes p with p^2 | n, found exactly.

    Trial division runs to the cube root of |n|; what remains has at most two
    prime factors, so it contributes a square prime divisor only if it is
    itself a perfect square.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("zero has every square divisor")
    out = []
    limit = icbrt(n) + 1
    p = 2
    while p <= limit and n > 1:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e >= 2:
                out.append(p)
        p += 1 if p == 2 else 2
    if n > 1:
        r = isqrt(n)
        if r * r == n:
            out.append(r)
    return sorted(out)


def is_squarefree_int(n: int) -> bool:
    if n == 0:
        return False
    return not square_prime_divisors(n)


def squarefree_kernel(n: int) -> tuple[int, int]:
    """Write n = s^2 * k with k squarefree; returns (s, k). Sign stays with k."""
    if n == 0:
        raise ValueError("zero has no squarefree kernel")
    s = 1
    k = n
    for p in square_prime_divisors(n):
        while k % (p * p) == 0:
            k //= p * p
            s *= p
    return s, k


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; intended for small n (totients, divisors)."""
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


@lru_cache(maxsize=512)
def cyclotomic(n: int) -> IntPolynomial:
    """Phi_n as the exact quotient prod_{k | n} (x^k - 1)^{mu(n/k)}."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = IntPolynomial((1,))
    den = IntPolynomial((1,))
    for k in divisors(n):
        mu = mobius(n // k)
        factor = IntPolynomial.monomial(k) - 1
        if mu == 1:
            num = num * factor
        elif mu == -1:
            den = den * factor
    return num.divexact(den)


def coprime_residues(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if gcd(k, n) == 1]
