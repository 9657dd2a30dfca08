"""Expansion apparatus: C_{mu,ell}, R_nu, V_mu, A_{mu,nu}, Q_nu.

C tables are exact rationals (observed integers, asserted); the polynomial
families live in PolyC at working precision. Every approximate identity in
the chain has a numeric residual oracle here: the falling-factorial
expansion of 1/w^mu, the exp/V generating identity, and the assembled Q
form. Growth constants demanded by the bounds (c' for R, A for Q) are
calibrated on a seeded sample once and persisted with the tables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Optional

from mpmath import mp, mpf, mpc, exp as mp_exp, fabs

from .bernoulli import bernoulli_poly, bernoulli_poly_coeffs
from .gamma_data import GammaFactorData, h_invariant, invariants
from .polynomials import PolyC
from .precision import mpf_to_token, token_to_mpf

__all__ = [
    "CTable", "compute_C", "ctable_series_oracle", "compute_A", "compute_R",
    "compute_V", "compute_Q", "ExpansionTables", "build_tables",
    "asymptotic_residual_C", "asymptotic_residual_expV", "q_assembly_residual",
    "lemma_tail_radius", "falling_product", "calibrate_growth",
    "save_tables", "load_tables",
]


@dataclass(frozen=True)
class CTable:
    """Triangular exact-rational table C_{mu,ell}, 1 <= mu <= ell <= M."""

    m_max: int
    entries: dict  # (mu, ell) -> Fraction

    def __getitem__(self, key) -> Fraction:
        mu, ell = key
        if not (1 <= mu <= ell <= self.m_max):
            raise KeyError(f"C index out of range: {key}")
        return self.entries[(mu, ell)]

    def assert_unitriangular_integral(self) -> None:
        for mu in range(1, self.m_max + 1):
            if self.entries[(mu, mu)] != 1:
                raise AssertionError(f"C_({mu},{mu}) != 1")
            for ell in range(mu, self.m_max + 1):
                if self.entries[(mu, ell)].denominator != 1:
                    raise AssertionError(f"C_({mu},{ell}) not integral")


def compute_C(m_max: int) -> CTable:
    """Exact C table from the one-step lowering recurrence.

    1/(w(w-1)...(w-ell)) = sum_{n>ell} (-1)^(n-ell-1) (n-1)!/ell! /((w-1)...(w-n)),
    so C_{1,ell} = (-1)^(ell-1) (ell-1)! and each extra power of 1/w maps
    through the same kernel.
    """
    if not 1 <= m_max <= 64:
        raise ValueError("compute_C supports 1 <= M <= 64")
    entries = {}
    for ell in range(1, m_max + 1):
        entries[(1, ell)] = Fraction((-1) ** (ell - 1) * math.factorial(ell - 1))
    for mu in range(1, m_max):
        for n in range(mu + 1, m_max + 1):
            acc = Fraction(0)
            for ell in range(mu, n):
                acc += entries[(mu, ell)] * ((-1) ** (n - ell - 1)
                                             * math.factorial(n - 1)
                                             // math.factorial(ell))
            entries[(mu + 1, n)] = acc
    table = CTable(m_max, entries)
    table.assert_unitriangular_integral()
    return table


def ctable_series_oracle(m_max: int) -> CTable:
    """Independent C table: expand falling denominators into 1/w powers.

    1/((w-1)...(w-ell)) = sum_{n>=ell} h_{n-ell}(1..ell) w^{-n} with complete
    homogeneous sums h; matching powers of 1/w gives a unitriangular solve.
    """
    # h[k][ell] = h_k(1..ell), h_k(1..ell) = h_k(1..ell-1) + ell*h_{k-1}(1..ell)
    h = [[1] * (m_max + 1)]
    for k in range(1, m_max + 1):
        row = [0] * (m_max + 1)
        for ell in range(1, m_max + 1):
            row[ell] = row[ell - 1] + ell * h[k - 1][ell]
        h.append(row)
    entries = {}
    for mu in range(1, m_max + 1):
        entries[(mu, mu)] = Fraction(1)
        for n in range(mu + 1, m_max + 1):
            acc = Fraction(0)
            for ell in range(mu, n):
                acc += entries[(mu, ell)] * h[n - ell][ell]
            entries[(mu, n)] = -acc
    return CTable(m_max, entries)


def compute_R(g: GammaFactorData, nu: int) -> PolyC:
    """R_nu(s) = B_{nu+1}(1-2s-2i theta) + B_{nu+1}(1)
    + (1/2) sum_k C(nu+1,k) [(-1)^nu H(k) s^{nu+1-k} - conj(H(k)) (1-s)^{nu+1-k}]."""
    if nu < 1:
        raise ValueError("compute_R needs nu >= 1")
    theta = invariants(g).theta
    n1 = nu + 1
    poly = PolyC.from_rational_coeffs(bernoulli_poly_coeffs(n1)).compose_affine(
        mpc(1, 0) - 2j * theta, mpc(-2))
    b_at_1 = sum(bernoulli_poly_coeffs(n1), Fraction(0))
    poly = poly + PolyC.constant(b_at_1)
    one_minus_s = PolyC([mpc(1), mpc(-1)])
    sign = (-1) ** nu
    half = mpf(1) / 2
    for k in range(n1 + 1):
        hk = h_invariant(g, k)
        binom = math.comb(n1, k)
        term = PolyC([mpc(0)] * (n1 - k) + [sign * hk]) - one_minus_s ** (n1 - k) * PolyC.constant(mpc(hk.real, -hk.imag))
        poly = poly + term * PolyC.constant(half * binom)
    return poly


def _compositions(total: int, cap: int):
    """Ordered tuples of parts in [1, cap] summing to total."""
    if total == 0:
        yield ()
        return
    for first in range(1, min(total, cap) + 1):
        for rest in _compositions(total - first, cap):
            yield (first,) + rest


def compute_V(g: GammaFactorData, mu: int, n_cutoff: int,
              r_polys: Optional[list] = None) -> PolyC:
    """V_{mu,N}(s): literal composition sum over exp of the R series.

    V_{mu,N} = (-1)^mu sum_m (1/m!) sum_{nu_1+..+nu_m=mu, 1<=nu_i<=N}
               prod R_{nu_i}/(nu_i (nu_i+1)); equals V_mu whenever mu <= N.
    """
    if mu < 1 or n_cutoff < 1:
        raise ValueError("compute_V needs mu >= 1 and N >= 1")
    if mu > 12:
        raise ValueError("compute_V caps mu at 12 (composition blowup)")
    if r_polys is None:
        r_polys = [None] + [compute_R(g, nu) for nu in range(1, min(mu, n_cutoff) + 1)]
    scaled = {nu: r_polys[nu] * PolyC.constant(mpf(1) / (nu * (nu + 1)))
              for nu in range(1, min(mu, n_cutoff) + 1)}
    acc = PolyC.constant(mpc(0))
    for comp in _compositions(mu, n_cutoff):
        m = len(comp)
        prod = PolyC.constant(mpf(1) / math.factorial(m))
        for nu_i in comp:
            prod = prod * scaled[nu_i]
        acc = acc + prod
    return acc * PolyC.constant(mpc((-1) ** mu))


def compute_A(g: GammaFactorData, c_table: CTable, mu: int, nu: int) -> PolyC:
    """A_{mu,nu}(s) = sum_{k=0}^{nu-mu} C(-mu,k) C_{mu+k,nu} eta^k, eta = 2s-1+2i theta."""
    if not (1 <= mu <= nu <= c_table.m_max):
        raise ValueError("compute_A needs 1 <= mu <= nu <= table size")
    theta = invariants(g).theta
    eta = PolyC([mpc(-1, 0) + 2j * theta, mpc(2)])
    acc = PolyC.constant(mpc(0))
    for k in range(nu - mu + 1):
        binom = (-1) ** k * math.comb(mu + k - 1, k)
        coeff = Fraction(binom) * c_table[(mu + k, nu)]
        acc = acc + eta ** k * PolyC.constant(coeff)
    return acc


@dataclass
class ExpansionTables:
    """Immutable-after-build bundle of the expansion polynomials."""

    name: str
    n_cutoff: int
    c_table: CTable
    r_polys: list                 # index 1..N
    v_polys: list                 # index 1..N, the V_{mu,N} builds
    a_polys: dict                 # (mu, nu) -> PolyC
    q_polys: list                 # index 0..N
    gamma: Optional[GammaFactorData] = None
    calib: dict = field(default_factory=dict)


def compute_Q(g: GammaFactorData, tables: ExpansionTables, nu: int) -> PolyC:
    """Q_0 = 1; Q_nu = sum_{mu<=nu} V_mu A_{mu,nu}."""
    if nu == 0:
        return PolyC.constant(mpc(1))
    if nu > tables.n_cutoff:
        raise ValueError("nu exceeds table cutoff")
    acc = PolyC.constant(mpc(0))
    for mu in range(1, nu + 1):
        acc = acc + tables.v_polys[mu] * tables.a_polys[(mu, nu)]
    return acc


def build_tables(g: GammaFactorData, name: str, n_cutoff: int,
                 calibrate: bool = True) -> ExpansionTables:
    c_table = compute_C(n_cutoff)
    r_polys = [None] + [compute_R(g, nu) for nu in range(1, n_cutoff + 1)]
    v_polys = [None] + [compute_V(g, mu, n_cutoff, r_polys) for mu in range(1, n_cutoff + 1)]
    a_polys = {(mu, nu): compute_A(g, c_table, mu, nu)
               for nu in range(1, n_cutoff + 1) for mu in range(1, nu + 1)}
    tables = ExpansionTables(name, n_cutoff, c_table, r_polys, v_polys,
                             a_polys, [], gamma=g)
    tables.q_polys = [compute_Q(g, tables, nu) for nu in range(n_cutoff + 1)]
    if calibrate:
        tables.calib = calibrate_growth(tables)
    return tables


def falling_product(w, n: int) -> mpc:
    """(w-1)(w-2)...(w-n); empty product for n = 0."""
    acc = mpc(1)
    for j in range(1, n + 1):
        acc *= w - j
    return acc


def asymptotic_residual_C(c_table: CTable, mu: int, m_used: int, w) -> mpf:
    """|1/w^mu - sum_{ell=mu}^{M} C_{mu,ell}/((w-1)...(w-ell))|, |w| >= 2M."""
    if not (1 <= mu <= m_used <= c_table.m_max):
        raise ValueError("need 1 <= mu <= M <= table size")
    w = mpc(w)
    if abs(w) < 2 * m_used:
        raise ValueError("asymptotic regime needs |w| >= 2M")
    acc = mpc(0)
    fall = mpc(1)
    for ell in range(1, m_used + 1):
        fall *= w - ell
        if ell >= mu:
            num = c_table[(mu, ell)]
            acc += mpc(num.numerator) / num.denominator / fall
    return fabs(w ** (-mu) - acc)


def lemma_tail_radius(mu: int, m_used: int, w, safety: int = 10) -> mpf:
    """Certified envelope 2^M M!/(mu-1)! / |w (w-1)...(w-M)| with a safety factor."""
    w = mpc(w)
    denom = abs(w * falling_product(w, m_used))
    return mpf(safety) * mpf(2) ** m_used * math.factorial(m_used) / math.factorial(mu - 1) / denom


def exp_generating_side(tables: ExpansionTables, s, w) -> mpc:
    """exp(sum_{nu=1}^{N} (-1)^nu R_nu(s) / (nu (nu+1) (w+eta)^nu)), eta = 2s-1+2i theta."""
    s = mpc(s)
    theta = tables.calib.get("theta", None)
    if tables.gamma is not None:
        theta = invariants(tables.gamma).theta
    if theta is None:
        raise ValueError("tables carry no gamma data or recorded theta")
    eta = 2 * s - 1 + 2j * mpf(theta)
    u = 1 / (w + eta)
    arg = mpc(0)
    for nu in range(1, tables.n_cutoff + 1):
        arg += (-1) ** nu * tables.r_polys[nu](s) * u ** nu / (nu * (nu + 1))
    return mp_exp(arg)


def asymptotic_residual_expV(tables: ExpansionTables, m_used: int, s, w) -> mpf:
    """|exp side - 1 - sum_{mu<=M} V_{mu,N}(s) (w+eta)^{-mu}| in the wide regime."""
    if m_used > tables.n_cutoff:
        raise ValueError("M exceeds table cutoff")
    s = mpc(s)
    w = mpc(w)
    theta = invariants(tables.gamma).theta if tables.gamma is not None else mpf(0)
    eta = 2 * s - 1 + 2j * theta
    cprime = tables.calib.get("cprime")
    if cprime is not None and abs(w + eta) < 2 * (mpf(cprime) * (abs(s) + 1)) ** 2:
        raise ValueError("asymptotic regime needs |w+eta| >= 2 (c'(|s|+1))^2")
    u = 1 / (w + eta)
    rhs = mpc(1)
    for mu in range(1, m_used + 1):
        rhs += tables.v_polys[mu](s) * u ** mu
    return fabs(exp_generating_side(tables, s, w) - rhs)


def q_assembly_residual(tables: ExpansionTables, m_used: int, s, w) -> mpf:
    """|exp side - sum_{nu=0}^{M} Q_nu(s)/((w-1)...(w-nu))|."""
    if m_used > tables.n_cutoff:
        raise ValueError("M exceeds table cutoff")
    s = mpc(s)
    w = mpc(w)
    rhs = mpc(0)
    for nu in range(m_used + 1):
        rhs += tables.q_polys[nu](s) / falling_product(w, nu)
    return fabs(exp_generating_side(tables, s, w) - rhs)


def calibrate_growth(tables: ExpansionTables, n_samples: int = 100,
                     radius: float = 20.0, seed: int = 20260813) -> dict:
    """Record c' with |R_nu(s)| <= (c'(|s|+1))^{nu+1} and A with
    |Q_nu(s)| <= (A(|s|+1))^{2nu}/nu! over a seeded sample disc."""
    rng = Random(seed)
    cprime = mpf(0)
    a_const = mpf(0)
    for _ in range(n_samples):
        re = rng.uniform(-radius, radius)
        im = rng.uniform(-radius, radius)
        if re * re + im * im > radius * radius:
            continue
        s = mpc(re, im)
        base = abs(s) + 1
        for nu in range(1, tables.n_cutoff + 1):
            rv = fabs(tables.r_polys[nu](s))
            if rv > 0:
                cprime = max(cprime, rv ** (mpf(1) / (nu + 1)) / base)
            qv = fabs(tables.q_polys[nu](s)) * math.factorial(nu)
            if qv > 0:
                a_const = max(a_const, qv ** (mpf(1) / (2 * nu)) / base)
    margin = mpf("1.05")
    theta = invariants(tables.gamma).theta if tables.gamma is not None else mpf(0)
    return {"cprime": cprime * margin, "A": a_const * margin, "theta": theta}


# -- cache format --------------------------------------------------------------
#
#   # exptable v1
#   ctable M=<M>
#   <mu> <ell> <numerator> <denominator>
#   poly <name> <index> deg=<d>          name in {R, V, Q, A}, A index "mu,nu"
#   <k> <re> <im>                        re/im as exact base-2 tokens
#   calib A=<token> cprime=<token> theta=<token>
#
# Saved tables are treated as immutable: save refuses to overwrite, and a
# round-trip at fixed precision is bit-identical.

def _poly_lines(name: str, index: str, poly: PolyC) -> list:
    lines = [f"poly {name} {index} deg={len(poly.coeffs) - 1}"]
    for k, c in enumerate(poly.coeffs):
        lines.append(f"{k} {mpf_to_token(c.real)} {mpf_to_token(c.imag)}")
    return lines


def save_tables(path: str, tables: ExpansionTables) -> None:
    import os
    if os.path.exists(path):
        raise FileExistsError(f"refusing to overwrite existing table cache: {path}")
    lines = ["# exptable v1", f"ctable M={tables.c_table.m_max}"]
    for mu in range(1, tables.c_table.m_max + 1):
        for ell in range(mu, tables.c_table.m_max + 1):
            fr = tables.c_table[(mu, ell)]
            lines.append(f"{mu} {ell} {fr.numerator} {fr.denominator}")
    for nu in range(1, tables.n_cutoff + 1):
        lines.extend(_poly_lines("R", str(nu), tables.r_polys[nu]))
    for mu in range(1, tables.n_cutoff + 1):
        lines.extend(_poly_lines("V", str(mu), tables.v_polys[mu]))
    for (mu, nu) in sorted(tables.a_polys):
        lines.extend(_poly_lines("A", f"{mu},{nu}", tables.a_polys[(mu, nu)]))
    for nu in range(tables.n_cutoff + 1):
        lines.extend(_poly_lines("Q", str(nu), tables.q_polys[nu]))
    if tables.calib:
        lines.append("calib A={} cprime={} theta={}".format(
            mpf_to_token(tables.calib["A"]),
            mpf_to_token(tables.calib["cprime"]),
            mpf_to_token(tables.calib.get("theta", mpf(0)))))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_tables(path: str) -> ExpansionTables:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != "# exptable v1":
        raise ValueError(f"{path}: missing exptable v1 header")
    if len(lines) < 2 or not lines[1].startswith("ctable M="):
        raise ValueError(f"{path}: missing ctable header")
    m_max = int(lines[1].split("=", 1)[1])
    entries: dict = {}
    i = 2
    while i < len(lines) and lines[i] and not lines[i].startswith(("poly", "calib")):
        mu_s, ell_s, num, den = lines[i].split()
        entries[(int(mu_s), int(ell_s))] = Fraction(int(num), int(den))
        i += 1
    c_table = CTable(m_max, entries)
    polys: dict = {"R": {}, "V": {}, "Q": {}, "A": {}}
    calib: dict = {}
    while i < len(lines):
        ln = lines[i]
        if not ln:
            i += 1
            continue
        if ln.startswith("calib "):
            for item in ln[len("calib "):].split():
                key, tok = item.split("=", 1)
                calib[key if key != "A" else "A"] = token_to_mpf(tok)
            i += 1
            continue
        if not ln.startswith("poly "):
            raise ValueError(f"{path}: unexpected line {i + 1}: {ln!r}")
        _, name, index, deg_part = ln.split()
        deg = int(deg_part.split("=", 1)[1])
        coeffs = []
        for k in range(deg + 1):
            i += 1
            k_s, re_tok, im_tok = lines[i].split()
            if int(k_s) != k:
                raise ValueError(f"{path}: coefficient index mismatch at line {i + 1}")
            coeffs.append(mpc(token_to_mpf(re_tok), token_to_mpf(im_tok)))
        polys[name][index] = PolyC(coeffs)
        i += 1
    n_cutoff = max(int(k) for k in polys["Q"])
    r_polys = [None] + [polys["R"][str(nu)] for nu in range(1, n_cutoff + 1)]
    v_polys = [None] + [polys["V"][str(mu)] for mu in range(1, n_cutoff + 1)]
    a_polys = {tuple(map(int, key.split(","))): p for key, p in polys["A"].items()}
    q_polys = [polys["Q"][str(nu)] for nu in range(n_cutoff + 1)]
    return ExpansionTables("loaded", n_cutoff, c_table, r_polys, v_polys,
                           a_polys, q_polys, gamma=None, calib=calib)
