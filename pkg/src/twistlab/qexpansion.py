"""Exact integer q-expansions for the modular catalog entries.

Products of Euler factors prod (1 - q^n)^e are assembled from the sparse
pentagonal-number series (Euler) and its cube (Jacobi), then raised to powers
with Kronecker-substitution multiplication: coefficients are packed into one
big integer with enough headroom per limb that the integer product recovers
the exact signed convolution. gmpy2 integers are used when available, which
pushes the n <= 1e5 expansions well under a second.
"""
from __future__ import annotations

from math import isqrt

try:
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover - gmpy2 is an mpmath accelerator, optional here
    _bigint = int

__all__ = [
    "euler_product_series", "jacobi_cube_series", "poly_mul_trunc",
    "delta_integer_coeffs", "level11_integer_coeffs", "divisor_count_sieve",
    "chi3_divisor_sieve",
]


def euler_product_series(n_max: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) up to q^n_max (pentagonal numbers)."""
    out = [0] * (n_max + 1)
    out[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n_max and g2 > n_max:
            break
        sign = -1 if k % 2 else 1
        if g1 <= n_max:
            out[g1] += sign
        if g2 <= n_max:
            out[g2] += sign
        k += 1
    return out


def jacobi_cube_series(n_max: int) -> list[int]:
    """Coefficients of prod (1 - q^n)^3 = sum_k (-1)^k (2k+1) q^(k(k+1)/2)."""
    out = [0] * (n_max + 1)
    k = 0
    while k * (k + 1) // 2 <= n_max:
        out[k * (k + 1) // 2] += (2 * k + 1) * (-1 if k % 2 else 1)
        k += 1
    return out


def poly_mul_trunc(a: list[int], b: list[int], n_max: int) -> list[int]:
    """Exact signed integer polynomial product truncated at degree n_max."""
    a = a[: n_max + 1]
    b = b[: n_max + 1]
    max_a = max((abs(x) for x in a), default=0)
    max_b = max((abs(x) for x in b), default=0)
    if max_a == 0 or max_b == 0:
        return [0] * (n_max + 1)
    # headroom: |c_k| <= min(len) * max_a * max_b < 2^(limb-1)
    bound = min(len(a), len(b)) * max_a * max_b
    limb = ((bound.bit_length() + 10) // 8 + 1) * 8  # whole bytes
    prod = _bigint(_pack(a, limb)) * _bigint(_pack(b, limb))
    return _unpack(int(prod), limb, n_max, len(a) + len(b) - 1)


def _pack(coeffs: list[int], limb: int) -> int:
    """Pack signed coefficients into one integer, limb bits each, O(n) bytes.

    Limbs are biased by 2^(limb-1) so each fits unsigned without carries,
    and the bias column sum is subtracted afterwards in one shot.
    """
    nb = limb // 8
    half = 1 << (limb - 1)
    buf = bytearray(nb * len(coeffs))
    for i, c in enumerate(coeffs):
        buf[i * nb:(i + 1) * nb] = (c + half).to_bytes(nb, "little")
    biased = int.from_bytes(bytes(buf), "little")
    ones = ((1 << (limb * len(coeffs))) - 1) // ((1 << limb) - 1)
    return biased - half * ones


def _unpack(val: int, limb: int, n_max: int, total_len: int) -> list[int]:
    """Read the low n_max+1 signed limbs out of a packed product, O(n) bytes.

    Biasing over the full product length keeps the value non-negative with
    every limb in [0, 2^limb) — a plain byte slice then recovers the limbs
    (no big-integer modulo, which would go quadratic).
    """
    nb = limb // 8
    count = min(n_max + 1, total_len)
    half = 1 << (limb - 1)
    ones = ((1 << (limb * total_len)) - 1) // ((1 << limb) - 1)
    biased = val + half * ones
    raw = biased.to_bytes(nb * total_len + nb, "little")
    out = [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - half
           for i in range(count)]
    out.extend([0] * (n_max + 1 - count))
    return out


def delta_integer_coeffs(n_max: int) -> list[int]:
    """tau(n) for 1 <= n <= n_max from q prod (1-q^n)^24 = (jacobi cube)^8 shifted.

    Returned list is 1-indexed (index 0 unused).
    """
    if n_max < 1:
        return [0] * (n_max + 1)
    deg = n_max - 1  # power series degree needed before the q-shift
    j = jacobi_cube_series(deg)
    j2 = poly_mul_trunc(j, j, deg)
    j4 = poly_mul_trunc(j2, j2, deg)
    j8 = poly_mul_trunc(j4, j4, deg)
    return [0] + j8[: n_max]


def level11_integer_coeffs(n_max: int) -> list[int]:
    """b(n) for q prod (1-q^n)^2 (1-q^11n)^2, 1-indexed."""
    if n_max < 1:
        return [0] * (n_max + 1)
    deg = n_max - 1
    e = euler_product_series(deg)
    e2 = poly_mul_trunc(e, e, deg)
    e11 = [0] * (deg + 1)
    for n, c in enumerate(euler_product_series(deg // 11 if deg >= 11 else 0)):
        if 11 * n <= deg:
            e11[11 * n] = c
    e11sq = poly_mul_trunc(e11, e11, deg)
    prod = poly_mul_trunc(e2, e11sq, deg)
    return [0] + prod[: n_max]


def divisor_count_sieve(n_max: int) -> list[int]:
    """d(n) for 0 <= n <= n_max (index 0 unused)."""
    d = [0] * (n_max + 1)
    for i in range(1, n_max + 1):
        for m in range(i, n_max + 1, i):
            d[m] += 1
    return d


def chi3(n: int) -> int:
    r = n % 3
    return 0 if r == 0 else (1 if r == 1 else -1)


def chi3_divisor_sieve(n_max: int) -> list[int]:
    """a(n) = sum_{d | n} chi3(d), the zeta(s) L(s, chi3) coefficients."""
    a = [0] * (n_max + 1)
    for i in range(1, n_max + 1):
        v = chi3(i)
        if v:
            for m in range(i, n_max + 1, i):
                a[m] += v
    return a
