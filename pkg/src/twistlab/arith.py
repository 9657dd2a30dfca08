"""Elementary integer arithmetic used across the package.

Sieves return immutable tuples and are cached process-wide; everything else
is a pure function. Factorization is smallest-prime-factor based for sieved
ranges and trial division beyond.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

__all__ = [
    "spf_sieve", "primes_up_to", "factorize", "prime_factors", "divisors",
    "moebius", "totient", "is_squarefree", "multiplicative_order",
    "least_primitive_root",
]


@lru_cache(maxsize=8)
def spf_sieve(n: int) -> tuple[int, ...]:
    """Smallest prime factor for 0..n (spf[0] = spf[1] = 1)."""
    spf = list(range(n + 1))
    if n >= 1:
        spf[1] = 1
    for p in range(2, isqrt(n) + 1):
        if spf[p] == p:
            for m in range(p * p, n + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return tuple(spf)


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> tuple[int, ...]:
    spf = spf_sieve(n)
    return tuple(p for p in range(2, n + 1) if spf[p] == p)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, e), ...] with p ascending."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    out: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 7
    # wheel-ish trial division; fine for the modest integers handled here
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 2
    if n > 1:
        out.append((n, 1))
    out.sort()
    return out


def prime_factors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**j for d in ds for j in range(e + 1)]
    return sorted(ds)


def moebius(n: int) -> int:
    if n == 1:
        return 1
    m = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        m = -m
    return m


def totient(n: int) -> int:
    t = n
    for p, _ in factorize(n):
        t -= t // p
    return t


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for _, e in factorize(n))


def multiplicative_order(a: int, q: int) -> int:
    """Order of a in (Z/qZ)^*; requires gcd(a, q) = 1."""
    if q < 1 or gcd(a, q) != 1:
        raise ValueError(f"multiplicative_order needs gcd(a, q) = 1, got a={a}, q={q}")
    order = totient(q)
    for p, _ in factorize(order):
        while order % p == 0 and pow(a, order // p, q) == 1:
            order //= p
    return order


def least_primitive_root(q: int) -> int:
    """Least primitive root mod q for q in {2, 4, p^e, 2p^e} (p odd prime)."""
    phi = totient(q)
    prime_parts = prime_factors(phi)
    for g in range(2, q):
        if gcd(g, q) != 1:
            continue
        if all(pow(g, phi // p, q) != 1 for p in prime_parts):
            return g
    raise ValueError(f"no primitive root mod {q}")
