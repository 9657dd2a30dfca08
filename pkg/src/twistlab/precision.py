"""Working-precision plumbing shared by the whole package.

Everything numeric runs against the global mpmath context; callers pick the
precision in *bits* (not decimal digits) and scope it with `bits(...)`.
Serialization helpers write mpf values as exact mantissa/exponent tokens so
cache files round-trip bit for bit.
"""
from __future__ import annotations

from mpmath import mp, mpf, mpc

DEFAULT_BITS = 256

#: coefficients whose modulus falls below 2^(-prec/2) are treated as zero
#: when trimming polynomial degrees (half the working precision, in bits)
def zero_threshold() -> mpf:
    return mpf(2) ** (-(mp.prec // 2))


def bits(n: int = DEFAULT_BITS):
    """Context manager setting the working precision to n bits."""
    if n < 64:
        raise ValueError(f"working precision below 64 bits is unsupported, got {n}")
    return mp.workprec(n)


def mpf_to_token(x) -> str:
    """Exact single-token encoding of an mpf: '<mantissa>p<exponent>' base 2.

    '0p0' encodes zero. Round trip is bit-identical at any precision at or
    above the value's own, which is what the cache format requires.
    """
    x = mpf(x)
    if x == 0:
        return "0p0"
    sign, man, exp, _ = x._mpf_
    m = int(man)
    if sign:
        m = -m
    return f"{m}p{exp}"


def token_to_mpf(tok: str) -> mpf:
    m_str, _, e_str = tok.partition("p")
    if not e_str:
        raise ValueError(f"bad mpf token {tok!r}")
    return mpf(int(m_str)) * mpf(2) ** int(e_str)


def block_sum(terms, block: int = 4096):
    """Deterministic fixed-block summation (reduction order never varies)."""
    total = mpf(0)
    acc = mpf(0)
    k = 0
    for t in terms:
        acc += t
        k += 1
        if k == block:
            total += acc
            acc = mpf(0)
            k = 0
    return total + acc
