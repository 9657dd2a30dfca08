"""Exact Bernoulli numbers and polynomials over Fraction.

B_n(x) = sum_k C(n,k) B_k x^(n-k) with the B_1 = -1/2 convention, so that
B_n(0) = B_n, B_1(x) = x - 1/2, B_2(x) = x^2 - x + 1/6 and the forward
difference identity B_n(x+1) - B_n(x) = n x^(n-1) holds.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = ["bernoulli_number", "bernoulli_poly", "bernoulli_poly_coeffs"]


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """Exact B_n via the defining recurrence sum_{k<n} C(n+1,k) B_k = 0 shifted."""
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(n):
        acc += comb(n + 1, k) * bernoulli_number(k)
    return -acc / (n + 1)


@lru_cache(maxsize=None)
def bernoulli_poly_coeffs(n: int) -> tuple[Fraction, ...]:
    """Coefficients (c_0, ..., c_n) of B_n(x) = sum c_j x^j, exact."""
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = comb(n, k) * bernoulli_number(k)
    return tuple(coeffs)


def bernoulli_poly(n: int, x):
    """Evaluate B_n at x; x may be Fraction, int, mpf or mpc (Horner)."""
    coeffs = bernoulli_poly_coeffs(n)
    acc = coeffs[n] + x * 0  # promote to the type of x
    for j in range(n - 1, -1, -1):
        acc = acc * x + coeffs[j]
    return acc
