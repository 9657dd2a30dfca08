"""Dirichlet characters mod q by generator exponents, plus Gauss/Ramanujan sums.

The unit group mod q is decomposed through CRT into cyclic components (odd
prime powers get a least primitive root, 2^e for e >= 3 gets the pair
{-1, 5}). A character is stored as one exponent per component generator, and
chi(n) is an exact root of unity looked up through precomputed discrete-log
tables; values never go through floating phases except the final expjpi.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from mpmath import mpc, mpf, expjpi

from .arith import divisors, factorize, least_primitive_root, moebius, totient

__all__ = [
    "DirichletCharacter", "character_group", "principal_character",
    "gauss_sum", "ramanujan_sum",
]


def _component_data(q: int):
    """Per CRT component: (modulus, generators, orders, dlog table).

    dlog maps a unit residue mod the component modulus to its exponent
    vector on that component's generators.
    """
    comps = []
    for p, e in factorize(q):
        pe = p ** e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                comps.append((4, (3,), (2,), {1: (0,), 3: (1,)}))
                continue
            half = 1 << (e - 2)
            table = {}
            val = 1
            for b in range(half):
                table[val % pe] = (0, b)
                table[(-val) % pe] = (1, b)
                val = (val * 5) % pe
            comps.append((pe, (pe - 1, 5), (2, half), table))
        else:
            g = least_primitive_root(pe)
            d = totient(pe)
            table = {}
            val = 1
            for t in range(d):
                table[val] = (t,)
                val = (val * g) % pe
            comps.append((pe, (g,), (d,), table))
    return comps


_COMPONENT_CACHE: dict = {}


def _components(q: int):
    if q not in _COMPONENT_CACHE:
        _COMPONENT_CACHE[q] = _component_data(q)
    return _COMPONENT_CACHE[q]


@dataclass(frozen=True)
class DirichletCharacter:
    """chi mod q determined by one exponent per component generator."""

    q: int
    exponents: tuple

    def _orders(self):
        return tuple(d for comp in _components(self.q) for d in comp[2])

    def phase_fraction(self, n: int):
        """chi(n) = e(phase); exact Fraction in [0,1), or None if gcd > 1."""
        n = n % self.q if self.q > 1 else 0
        if self.q == 1:
            return Fraction(0)
        if gcd(n, self.q) != 1:
            return None
        phase = Fraction(0)
        idx = 0
        for pe, gens, orders, dlog in _components(self.q):
            exps = dlog[n % pe]
            for k, d in zip(exps, orders):
                phase += Fraction(self.exponents[idx] * k, d)
                idx += 1
        return phase % 1

    def __call__(self, n: int) -> mpc:
        ph = self.phase_fraction(n)
        if ph is None:
            return mpc(0)
        return expjpi(2 * mpf(ph.numerator) / ph.denominator)

    @property
    def order(self) -> int:
        orders = self._orders()
        if not orders:
            return 1
        return lcm(*(d // gcd(d, k) for k, d in zip(self.exponents, orders)))

    @property
    def is_principal(self) -> bool:
        return all(k == 0 for k in self.exponents)

    @property
    def is_even(self) -> bool:
        ph = self.phase_fraction(self.q - 1) if self.q > 2 else Fraction(0)
        return ph == 0

    @property
    def conductor(self) -> int:
        cond = 1
        idx = 0
        for pe, gens, orders, dlog in _components(self.q):
            if len(gens) == 2:
                a, b = self.exponents[idx], self.exponents[idx + 1]
                idx += 2
                if b == 0:
                    cond *= 4 if a else 1
                else:
                    v = (b & -b).bit_length() - 1
                    e = pe.bit_length() - 1
                    cond *= 1 << (e - v)
            else:
                k = self.exponents[idx]
                idx += 1
                if k == 0:
                    continue
                p, e = factorize(pe)[0]
                # conductor p^f for the smallest f >= 1 with p^{e-f} | k
                f = 1
                while k % (p ** (e - f)) != 0:
                    f += 1
                cond *= p ** f
        return cond

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.q

    def conjugate(self) -> "DirichletCharacter":
        orders = self._orders()
        return DirichletCharacter(self.q, tuple((-k) % d for k, d in zip(self.exponents, orders)))


def character_group(q: int) -> list:
    """All phi(q) characters mod q, principal first."""
    comps = _components(q)
    orders = [d for comp in comps for d in comp[2]]
    chars = []
    total = 1
    for d in orders:
        total *= d
    for idx in range(total):
        exps = []
        rem = idx
        for d in orders:
            exps.append(rem % d)
            rem //= d
        chars.append(DirichletCharacter(q, tuple(exps)))
    chars.sort(key=lambda c: (not c.is_principal,) + c.exponents)
    return chars


def principal_character(q: int) -> DirichletCharacter:
    comps = _components(q)
    n_gens = sum(len(c[1]) for c in comps)
    return DirichletCharacter(q, (0,) * n_gens)


def gauss_sum(chi: DirichletCharacter) -> mpc:
    """tau(chi) = sum_a chi(a) e(a/q)."""
    q = chi.q
    acc = mpc(0)
    for a in range(1, q + 1):
        ph = chi.phase_fraction(a)
        if ph is None:
            continue
        tot = ph + Fraction(a, q)
        acc += expjpi(2 * mpf(tot.numerator) / tot.denominator)
    return acc


def ramanujan_sum(q: int, n: int) -> int:
    """c_q(n) = sum_{d | (q,n)} d mu(q/d), exact integer."""
    g = gcd(q, n)
    return sum(d * moebius(q // d) for d in divisors(q) if g % d == 0)
