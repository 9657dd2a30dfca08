"""Dense polynomials in one variable over mpmath complex numbers.

The expansion apparatus instantiates every polynomial numerically against
concrete gamma data (no symbolic algebra), so this is a small dense-coefficient
type with the operations that apparatus needs. Degrees are reported under the
zero-trim rule: a coefficient counts as zero when its modulus drops below
2^(-prec/2) at the current working precision.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from mpmath import mp, mpc, mpf, fabs

from .precision import zero_threshold

__all__ = ["PolyC"]


def _to_mpc(x) -> mpc:
    if isinstance(x, Fraction):
        return mpc(mpf(x.numerator) / x.denominator)
    return mpc(x)


class PolyC:
    """Immutable polynomial sum_k coeffs[k] * s^k with mpc coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_to_mpc(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [mpc(0)]
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "PolyC":
        return cls([c])

    @classmethod
    def identity(cls) -> "PolyC":
        """The polynomial s."""
        return cls([0, 1])

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other) -> "PolyC":
        if not isinstance(other, PolyC):
            other = PolyC.constant(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return PolyC([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0)
                      for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "PolyC":
        return PolyC([-c for c in self.coeffs])

    def __sub__(self, other) -> "PolyC":
        if not isinstance(other, PolyC):
            other = PolyC.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "PolyC":
        return PolyC.constant(other) + (-self)

    def __mul__(self, other) -> "PolyC":
        if not isinstance(other, PolyC):
            return PolyC([c * _to_mpc(other) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        out = [mpc(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return PolyC(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyC":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = PolyC.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, s):
        acc = mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def compose_affine(self, a, b) -> "PolyC":
        """self(a + b*s) expanded, via Horner in the affine argument."""
        arg = PolyC([a, b])
        acc = PolyC.constant(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * arg + PolyC.constant(c)
        return acc

    def conjugate_coeffs(self) -> "PolyC":
        return PolyC([c.conjugate() for c in self.coeffs])

    def degree(self) -> int:
        """Largest k with |coeffs[k]| >= 2^(-prec/2); -1 for the zero polynomial."""
        thr = zero_threshold()
        for k in range(len(self.coeffs) - 1, -1, -1):
            if fabs(self.coeffs[k]) >= thr:
                return k
        return -1

    def leading_coeff(self) -> mpc:
        d = self.degree()
        return self.coeffs[d] if d >= 0 else mpc(0)

    def coeff(self, k: int) -> mpc:
        return self.coeffs[k] if k < len(self.coeffs) else mpc(0)

    def max_coeff_diff(self, other: "PolyC") -> mpf:
        n = max(len(self.coeffs), len(other.coeffs))
        return max(fabs(self.coeff(k) - other.coeff(k)) for k in range(n))

    def __repr__(self) -> str:
        terms = [f"({mp.nstr(c, 8)})*s^{k}" for k, c in enumerate(self.coeffs)]
        return "PolyC[" + " + ".join(terms) + "]"

    @classmethod
    def from_rational_coeffs(cls, coeffs: Sequence[Fraction]) -> "PolyC":
        return cls(list(coeffs))
