"""Shared evaluation engine for truncated Dirichlet series and their twists.

Everything here works on 1-indexed coefficient sequences and a power table
n^{-s} built once per evaluation point by a multiplicative sieve: exact
exp/log only at primes, one complex multiplication per composite. Residue
class partial sums turn any additive twist e(-na/q) into a q-term linear
combination, so a whole family of twists at the same s comes at the cost of
one table.

Certified error accounting is split into
  * series tail radius: kappa * sum_{n>N} n^{1/2-sigma} for |a(n)| <= kappa sqrt(n),
  * rounding radius: op-count * 2^{-prec} * (an absolute-value mass bound).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mp, mpf, mpc, exp as mp_exp, expjpi, log as mp_log, zeta as mp_zeta

from .arith import spf_sieve
from .precision import block_sum

__all__ = [
    "power_table", "unit_roots", "ResidueSums", "build_residue_sums",
    "prefix_sums", "phase_table", "series_tail_radius", "rounding_radius",
    "coeff_mass_bound",
]

_BLOCK = 4096


def power_table(n_max: int, s) -> list:
    """n^{-s} for 1 <= n <= n_max (index 0 unused), multiplicative sieve."""
    s = mpc(s)
    spf = spf_sieve(n_max)
    table = [None] * (n_max + 1)
    table[1] = mpf(1)
    for n in range(2, n_max + 1):
        p = spf[n]
        if p == n:
            table[n] = mp_exp(-s * mp_log(n))
        else:
            table[n] = table[p] * table[n // p]
    return table


def unit_roots(q: int) -> list:
    """e(j/q) for j = 0..q-1, exact phases via expjpi."""
    return [expjpi(mpf(2 * j) / q) for j in range(q)]


@dataclass
class ResidueSums:
    """Partial sums of a(n) n^{-s} split by n mod q, plus prefix checkpoints."""

    q: int
    n_terms: int
    sums: list            # index r = n mod q
    prefix: dict          # cutoff -> sum_{n<=cutoff} a(n) n^{-s}
    roots: list           # e(j/q)

    def twist_value(self, a: int) -> mpc:
        """sum_{n<=N} a(n) e(-an/q) n^{-s} from the residue decomposition."""
        q = self.q
        acc = mpc(0)
        for r in range(q):
            acc += self.roots[(-a * r) % q] * self.sums[r]
        return acc

    def character_value(self, chi) -> mpc:
        """sum a(n) chi(n) n^{-s}; chi evaluated on residues mod q."""
        acc = mpc(0)
        for r in range(self.q):
            c = chi(r)
            if c != 0:
                acc += c * self.sums[r]
        return acc

    def full_value(self) -> mpc:
        return sum(self.sums, mpc(0))


def build_residue_sums(coeffs: Sequence, table: Sequence, q: int, n_terms: int,
                       checkpoints: Optional[Sequence[int]] = None) -> ResidueSums:
    """One pass over n <= n_terms with fixed-block deterministic reduction."""
    if n_terms >= len(table) or n_terms >= len(coeffs):
        raise ValueError("n_terms exceeds the available table range")
    cps = sorted(set(checkpoints or ()))
    acc = [mpc(0)] * q
    block = [mpc(0)] * q
    prefix: dict = {}
    cp_iter = iter(cps)
    next_cp = next(cp_iter, None)
    for n in range(1, n_terms + 1):
        a = coeffs[n]
        if a:
            block[n % q] += a * table[n]
        if n % _BLOCK == 0:
            for r in range(q):
                acc[r] += block[r]
                block[r] = mpc(0)
        if n == next_cp:
            flushed = [acc[r] + block[r] for r in range(q)]
            prefix[n] = sum(flushed, mpc(0))
            next_cp = next(cp_iter, None)
    for r in range(q):
        acc[r] += block[r]
    return ResidueSums(q=q, n_terms=n_terms, sums=acc, prefix=prefix,
                       roots=unit_roots(q))


def prefix_sums(coeffs: Sequence, table: Sequence, cutoffs: Sequence[int]) -> dict:
    """sum_{n<=c} a(n) n^{-s} for each requested cutoff, one shared pass."""
    rs = build_residue_sums(coeffs, table, 1, max(cutoffs), checkpoints=cutoffs)
    return rs.prefix


def phase_table(n_max: int, alpha) -> list:
    """e(-n alpha) for 1 <= n <= n_max.

    Rational alpha = num/den with moderate denominator uses the exact root
    table; otherwise a multiplicative recurrence with exact re-anchoring
    every block keeps the accumulated rounding at block-length scale.
    """
    if isinstance(alpha, (int, Fraction)) or getattr(alpha, "denominator", None):
        fr = Fraction(alpha)
        if fr.denominator <= 1 << 16:
            roots = unit_roots(fr.denominator)
            num, den = fr.numerator, fr.denominator
            return [None] + [roots[(-num * n) % den] for n in range(1, n_max + 1)]
        alpha = mpf(fr.numerator) / fr.denominator
    alpha = mpf(alpha)
    out = [None] * (n_max + 1)
    step = expjpi(-2 * (alpha - int(alpha)))
    cur = mpc(1)
    for n in range(1, n_max + 1):
        if n % _BLOCK == 1:
            na = n * alpha
            cur = expjpi(-2 * (na - int(na)))
        else:
            cur = cur * step
        out[n] = cur
    return out


def series_tail_radius(kappa, sigma, n_terms: int) -> mpf:
    """Certified bound for kappa * sum_{n>N} n^{1/2-sigma}, sigma > 3/2."""
    sigma = mpf(sigma)
    if sigma <= mpf(3) / 2:
        raise ValueError("tail bound needs sigma > 3/2")
    return mpf(kappa) * mpf(n_terms) ** (mpf(3) / 2 - sigma) / (sigma - mpf(3) / 2)


def coeff_mass_bound(kappa, sigma) -> mpf:
    """Bound on sum_n |a(n)| n^{-sigma} given |a(n)| <= kappa sqrt(n)."""
    sigma = mpf(sigma)
    if sigma <= mpf(3) / 2:
        raise ValueError("mass bound needs sigma > 3/2")
    return mpf(kappa) * mp_zeta(sigma - mpf(1) / 2)


def rounding_radius(mass, n_ops: int) -> mpf:
    """Crude certified rounding envelope: ops * 2^{4-prec} * absolute mass."""
    return mpf(n_ops) * mpf(2) ** (4 - mp.prec) * mpf(mass)
