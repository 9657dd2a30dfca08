"""Linear and smoothed twists, multiplier series, and the two shared-cutoff
identity checks (complete-sum lemma and character decomposition).

Both checks compare two evaluations of one finite sum. With a common cutoff
N the rearrangement is exact coefficient by coefficient, so the residual
measures accumulated rounding, not series truncation; each result carries a
certified rounding radius alongside. Series truncation enters only through
`linear_twist_eval`, whose tail bound uses |a(n)| <= kappa sqrt(n) with the
entry's calibrated kappa (the divisor bound d(n) <= sqrt(3n) makes
kappa = sqrt(3) valid for every built-in entry).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from mpmath import mp, mpf, mpc, exp as mp_exp, power as mp_power

from .arith import divisors, moebius, prime_factors, totient
from .characters import DirichletCharacter, character_group
from .dirichlet import (build_residue_sums, coeff_mass_bound, phase_table,
                        power_table, rounding_radius, series_tail_radius,
                        unit_roots)
from .lseries import LSeries, euler_inverse_coeffs
from .precision import zero_threshold

__all__ = [
    "multiplier_coeffs", "multiplier_value", "sum_lemma_check",
    "twist_fourier_coeff", "twist_decomposition_check",
    "linear_twist_eval", "smoothed_twist_eval",
    "SumLemmaResult", "TwistDecompResult", "TwistValue", "SmoothedTwist",
]

_SIGMA_FLOOR = mpf(7) / 4


def multiplier_coeffs(f: LSeries, q: int) -> dict:
    """Dirichlet coefficients m_g of M(s) = sum_{d|q} d mu(q/d) prod_{p|d} (1 - F_p(s)^{-1}).

    Support is on integers composed of primes dividing q; the dict maps g to
    m_g. Local inverse series are polynomial for the built-in entries, so
    the expansion terminates on its own.
    """
    inv = {}
    thr = zero_threshold()
    for p in prime_factors(q):
        c = euler_inverse_coeffs(f, p, 12)
        deg = 0
        for m_i in range(1, len(c)):
            if abs(mpc(c[m_i])) > thr:
                deg = m_i
        inv[p] = [c[m_i] for m_i in range(deg + 1)]
    out: dict = {}
    for d in divisors(q):
        w = d * moebius(q // d)
        if w == 0:
            continue
        # prod over p | d of (1 - F_p^{-1}) = prod of (-sum_{m>=1} c(p^m) x^m)
        part = {1: 1}
        for p in prime_factors(d):
            nxt: dict = {}
            for g, v in part.items():
                for m_i in range(1, len(inv[p])):
                    key = g * p**m_i
                    nxt[key] = nxt.get(key, 0) - v * inv[p][m_i]
            part = nxt
        for g, v in part.items():
            out[g] = out.get(g, 0) + w * v
    return out


def multiplier_value(f: LSeries, q: int, s) -> mpc:
    s = mpc(s)
    return sum((mpc(v) * mp_power(g, -s) for g, v in sorted(multiplier_coeffs(f, q).items())),
               mpc(0))


@dataclass
class SumLemmaResult:
    name: str
    q: int
    s: mpc
    n_terms: int
    lhs: mpc
    rhs: mpc
    multiplier: mpc
    residual: mpf
    tail_radius: mpf


def sum_lemma_check(f: LSeries, q: int, s, n_terms: int) -> SumLemmaResult:
    """Compare sum_{(a,q)=1} F_N(s, a/q) against the multiplier form.

    Both sides are rearrangements of the same N-term sum:
      LHS = sum_{n<=N} a(n) c_q(n) n^{-s} assembled from residue classes,
      RHS = sum_g m_g g^{-s} F_{floor(N/g)}(s).
    """
    s = mpc(s)
    mg = multiplier_coeffs(f, q)
    cps = sorted({n_terms // g for g in mg})
    co = f.coefficients(n_terms)
    table = power_table(n_terms, s)
    rs = build_residue_sums(co, table, q, n_terms, checkpoints=cps)
    lhs = mpc(0)
    for a in range(1, q + 1):
        if gcd(a, q) == 1:
            lhs += rs.twist_value(a)
    rhs = mpc(0)
    mult = mpc(0)
    for g, v in sorted(mg.items()):
        gs = table[g] if g <= n_terms else mp_power(g, -s)
        mult += mpc(v) * gs
        rhs += mpc(v) * gs * rs.prefix[n_terms // g]
    mass = coeff_mass_bound(f.kappa(), s.real)
    weight = q + sum(abs(mpc(v)) for v in mg.values())
    radius = rounding_radius(mass * weight, 8 * n_terms)
    return SumLemmaResult(f.name, q, s, n_terms, lhs, rhs, mult,
                          abs(lhs - rhs), radius)


def twist_fourier_coeff(chi: DirichletCharacter) -> mpc:
    """c(chi, q) with e(-n/q) = sum_chi c(chi, q) chi(n) on (n, q) = 1."""
    q = chi.q
    roots = unit_roots(q)
    acc = mpc(0)
    conj = chi.conjugate()
    for a in range(1, q + 1):
        if gcd(a, q) == 1:
            acc += conj(a) * roots[(-a) % q]
    return acc / totient(q)


@dataclass
class TwistDecompResult:
    name: str
    p: int
    s: mpc
    n_terms: int
    lhs: mpc
    rhs: mpc
    residual: mpf
    tail_radius: mpf
    char_coeffs: dict = field(repr=False, default_factory=dict)


def twist_decomposition_check(f: LSeries, p: int, s, n_terms: int) -> TwistDecompResult:
    """F_N(s, 1/p) versus its expansion over characters mod p.

    The non-principal part uses the Fourier coefficients of a -> e(-a/p) on
    the unit group; the principal part folds into a short multiplier with
    m'_1 = -1/(p-1) and m'_{p^j} = -p/(p-1) c(p^j). With the shared cutoff
    this is an exact rearrangement.
    """
    s = mpc(s)
    inv = euler_inverse_coeffs(f, p, 12)
    thr = zero_threshold()
    mprime = {1: mpf(-1) / (p - 1)}
    for j in range(1, len(inv)):
        if abs(mpc(inv[j])) > thr:
            mprime[p**j] = mpf(-p) / (p - 1) * mpc(inv[j])
    cps = sorted({n_terms // g for g in mprime})
    co = f.coefficients(n_terms)
    table = power_table(n_terms, s)
    rs = build_residue_sums(co, table, p, n_terms, checkpoints=cps)
    lhs = rs.twist_value(1)
    rhs = mpc(0)
    ccoeffs = {}
    for chi in character_group(p):
        if chi.is_principal:
            continue
        c = twist_fourier_coeff(chi)
        ccoeffs[chi.exponents] = c
        rhs += c * rs.character_value(chi)
    for g, v in sorted(mprime.items()):
        gs = table[g] if g <= n_terms else mp_power(g, -s)
        rhs += mpc(v) * gs * rs.prefix[n_terms // g]
    mass = coeff_mass_bound(f.kappa(), s.real)
    weight = p + sum(abs(mpc(v)) for v in mprime.values())
    radius = rounding_radius(mass * weight, 8 * n_terms)
    return TwistDecompResult(f.name, p, s, n_terms, lhs, rhs,
                             abs(lhs - rhs), radius, ccoeffs)


@dataclass
class TwistValue:
    value: mpc
    n_terms: int
    tail_radius: mpf
    rounding_radius: mpf


def linear_twist_eval(f: LSeries, s, alpha, n_terms: int) -> TwistValue:
    """F(s, alpha) ~ sum_{n<=N} a(n) e(-n alpha) n^{-s} with a certified tail.

    The tail bound kappa N^{3/2-sigma}/(sigma-3/2) needs sigma comfortably
    above 3/2; evaluations below sigma = 7/4 are refused rather than given
    an uncertifiable radius.
    """
    s = mpc(s)
    if s.real < _SIGMA_FLOOR:
        raise ValueError("linear_twist_eval needs Re s >= 7/4 for a certified tail")
    co = f.coefficients(n_terms)
    table = power_table(n_terms, s)
    ph = phase_table(n_terms, alpha)
    acc = mpc(0)
    block = mpc(0)
    for n in range(1, n_terms + 1):
        a = co[n]
        if a:
            block += a * ph[n] * table[n]
        if n % 4096 == 0:
            acc += block
            block = mpc(0)
    acc += block
    tail = series_tail_radius(f.kappa(), s.real, n_terms)
    radius = rounding_radius(coeff_mass_bound(f.kappa(), s.real), 8 * n_terms)
    return TwistValue(acc, n_terms, tail, radius)


@dataclass
class SmoothedTwist:
    value: mpc
    n_terms: int
    tail_radius: mpf


def smoothed_twist_eval(f: LSeries, s, alpha, big_x, tol=None) -> SmoothedTwist:
    """F_X(s, alpha) = sum a(n) e(-n alpha) e^{-n/X} n^{-s}, cutoff certified.

    The exponential damping makes this entire at any sigma > 1/2; the cutoff
    N is raised until kappa (N+1)^{1/2-sigma} e^{-(N+1)/X} (X+1) < tol.
    """
    s = mpc(s)
    big_x = mpf(big_x)
    if s.real <= mpf("0.5"):
        raise ValueError("smoothed_twist_eval needs Re s > 1/2")
    if tol is None:
        tol = mpf(2) ** (16 - mp.prec)
    kap = f.kappa()

    def tail_bound(n: int) -> mpf:
        m = mpf(n + 1)
        return kap * m ** (mpf("0.5") - s.real) * mp_exp(-m / big_x) * (big_x + 1)

    n_cut = max(64, int(4 * big_x))
    while tail_bound(n_cut) >= tol:
        n_cut *= 2
        if n_cut > 1 << 26:
            raise ValueError("smoothed cutoff failed to certify under tolerance")
    co = f.coefficients(n_cut)
    table = power_table(n_cut, s)
    ph = phase_table(n_cut, alpha)
    acc = mpc(0)
    block = mpc(0)
    for n in range(1, n_cut + 1):
        a = co[n]
        if a:
            block += a * ph[n] * table[n] * mp_exp(mpf(-n) / big_x)
        if n % 4096 == 0:
            acc += block
            block = mpc(0)
    acc += block
    return SmoothedTwist(acc, n_cut, tail_bound(n_cut))
