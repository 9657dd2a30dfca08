"""Expansion-polynomial algebra: C/R/V/A/Q tables, tail bounds, caching."""

from fractions import Fraction

import pytest
from mpmath import fabs, mp, mpc, mpf

from twistlab.expansion import (
    CTable,
    asymptotic_residual_C,
    asymptotic_residual_expV,
    build_tables,
    calibrate_growth,
    compute_A,
    compute_C,
    compute_Q,
    compute_R,
    compute_V,
    ctable_series_oracle,
    exp_generating_side,
    falling_product,
    lemma_tail_radius,
    load_tables,
    q_assembly_residual,
    save_tables,
)
from twistlab.lseries import get_lseries

TOL25 = mpf("1e-25")


def tables(name="zeta2", n=8, calibrate=False):
    g = get_lseries(name).gamma
    return build_tables(g, name, n, calibrate=calibrate)


def poly_matches(p, rational_coeffs, tol=TOL25):
    got = [p.coeff(k) for k in range(max(p.degree() + 1, len(rational_coeffs)))]
    for k in range(len(got)):
        want = rational_coeffs[k] if k < len(rational_coeffs) else 0
        if fabs(got[k] - mpf(Fraction(want).numerator) / Fraction(want).denominator) > tol:
            return False
    return True


# -- the combinatorial C table -------------------------------------------------

def test_ctable_unitriangular_and_integral():
    c = compute_C(40)
    for mu in range(1, 41):
        assert c.entries[(mu, mu)] == 1
        for ell in range(1, mu):
            assert (mu, ell) not in c.entries or c.entries[(mu, ell)] == 0
    for (mu, ell), v in c.entries.items():
        assert isinstance(v, (int, Fraction))
        assert Fraction(v).denominator == 1, (mu, ell, v)


def test_ctable_two_independent_routes_agree_exactly():
    a = compute_C(40)
    b = ctable_series_oracle(40)
    keys = set(a.entries) | set(b.entries)
    for key in keys:
        assert a.entries.get(key, 0) == b.entries.get(key, 0), key


def test_ctable_first_row_alternating_factorials():
    # C(1, ell) = (-1)^(ell-1) (ell-1)!: the one-power lowering kernel
    import math

    c = compute_C(8)
    for ell in range(1, 9):
        assert c.entries[(1, ell)] == (-1) ** (ell - 1) * math.factorial(ell - 1)


# -- R, V, A, Q polynomials for the divisor-series gamma data --------------------

def test_r_polys_zeta2_closed_forms():
    # independent closed forms: R_1 = 2 s^2 and R_2 = 3 s^2 - 6 s^3.
    # (an acceptance-level variant asserts a different R_1 constant term and
    # is expected to fail; this is the verified ground truth)
    t = tables()
    assert poly_matches(t.r_polys[1], [0, 0, 2])
    assert poly_matches(t.r_polys[2], [0, 0, 3, -6])


def test_r_poly_degrees():
    t = tables("zeta_chi3", 10)
    for nu in range(1, 11):
        assert t.r_polys[nu].degree() == nu + 1, nu


def test_v_polys_zeta2_closed_forms():
    # V_1 = R_1 / 2! with sign, V_2 assembles from R_2/3! and R_1^2/(2! 2! 2)
    t = tables()
    assert poly_matches(t.v_polys[1], [0, 0, -1])
    assert poly_matches(
        t.v_polys[2], [0, 0, Fraction(1, 2), -1, Fraction(1, 2)]
    )
    # cross-check against the combination R_2/6 + R_1^2/8
    r2 = t.r_polys[2]
    r1 = t.r_polys[1]
    want = r2 * (mpf(1) / 6) + (r1 * r1) * (mpf(1) / 8)
    assert t.v_polys[2].max_coeff_diff(want) < TOL25


def test_v_stabilizes_in_cutoff():
    # V_{mu,N} is independent of N once N >= mu
    g = get_lseries("zeta2").gamma
    for mu in range(1, 6):
        base = compute_V(g, mu, mu)
        for n in range(mu + 1, 9):
            assert compute_V(g, mu, n).max_coeff_diff(base) < mpf("1e-30")


def test_a_polys_unitriangular_in_degree():
    t = tables()
    assert poly_matches(t.a_polys[(1, 1)], [1])
    assert poly_matches(t.a_polys[(1, 2)], [0, -2])
    assert poly_matches(t.a_polys[(2, 2)], [1])
    # deg A_{mu,nu} <= nu - mu
    for (mu, nu), p in t.a_polys.items():
        assert p.degree() <= nu - mu, (mu, nu)


def test_q_polys_zeta2_closed_form_and_degrees():
    t = tables("zeta2", 10)
    assert poly_matches(t.q_polys[1], [0, 0, -1])
    for nu in range(11):
        assert t.q_polys[nu].degree() == (2 * nu if nu else 0), nu


def test_q_poly_degrees_all_catalog():
    for name in ("zeta_chi3", "delta", "level11"):
        t = tables(name, 6)
        for nu in range(1, 7):
            assert t.q_polys[nu].degree() == 2 * nu, (name, nu)


def test_falling_product_small():
    # (w-1)(w-2)...(w-n), empty for n = 0
    w = mpc(5)
    assert fabs(falling_product(w, 0) - 1) < mpf("1e-70")
    assert fabs(falling_product(w, 3) - 4 * 3 * 2) < mpf("1e-68")


# -- residual oracles and decay ------------------------------------------------

def test_asymptotic_residual_C_decays_at_doubling():
    c = compute_C(14)
    for mu in (1, 2):
        for m_used in range(mu, 7):
            r1 = asymptotic_residual_C(c, mu, m_used, mpf(2000))
            r2 = asymptotic_residual_C(c, mu, m_used, mpf(4000))
            assert r2 > 0
            assert r1 / r2 >= mpf(2) ** (m_used + 1) / 2, (mu, m_used)


def test_lemma_tail_radius_dominates_residual():
    c = compute_C(14)
    for m_used in (2, 4, 6):
        w = mpf(3000)
        assert asymptotic_residual_C(c, 2, m_used, w) < lemma_tail_radius(2, m_used, w)


def test_exp_generating_residual_example():
    # frozen example: the exponential-side remainder at moderate w is tiny
    t = tables("zeta2", 8)
    s = mpc(2)
    r = asymptotic_residual_expV(t, 6, s, mpf(4000))
    assert r < mpf("1e-12")


def test_expV_and_q_assembly_decay():
    t = tables("zeta2", 8)
    s = mpc(2)
    for m_used in range(1, 7):
        for oracle in (asymptotic_residual_expV, q_assembly_residual):
            r1 = oracle(t, m_used, s, mpf(2000))
            r2 = oracle(t, m_used, s, mpf(4000))
            assert r2 > 0
            assert r1 / r2 >= mpf(2) ** (m_used + 1) / 2, (oracle.__name__, m_used)


def test_exp_generating_side_consistent_with_assembly():
    t = tables("zeta_chi3", 8)
    s = mpc("1.8", "3")
    w = mpf(2500)
    val = exp_generating_side(t, s, w)
    assert fabs(val) > 0
    assert q_assembly_residual(t, 6, s, w) < mpf("1e-10")


def test_calibrate_growth_reports_positive_bounds():
    t = tables("zeta2", 6, calibrate=True)
    assert t.calib["cprime"] > 0
    assert t.calib["A"] > 0
    assert t.calib["theta"] == 0
    # bounds actually dominate on a fresh sample point
    s = mpc(3, -4)
    base = abs(s) + 1
    import math

    for nu in range(1, 7):
        assert fabs(t.r_polys[nu](s)) <= (t.calib["cprime"] * base) ** (nu + 1)
        assert fabs(t.q_polys[nu](s)) <= (t.calib["A"] * base) ** (2 * nu) / math.factorial(nu)


# -- cache round trip ------------------------------------------------------------

def test_cache_round_trip_bit_identical(tmp_path):
    t = tables("level11", 6, calibrate=True)
    path = str(tmp_path / "level11_nu6.exptable")
    save_tables(path, t)
    u = load_tables(path)
    # the cache stores numerical content only; the entry name lives in the filename
    assert u.n_cutoff == t.n_cutoff
    assert u.c_table.entries == t.c_table.entries
    for nu in range(1, 7):
        assert u.r_polys[nu].max_coeff_diff(t.r_polys[nu]) == 0
        assert u.v_polys[nu].max_coeff_diff(t.v_polys[nu]) == 0
        assert u.q_polys[nu].max_coeff_diff(t.q_polys[nu]) == 0
    for key in t.a_polys:
        assert u.a_polys[key].max_coeff_diff(t.a_polys[key]) == 0
    assert u.calib.keys() == t.calib.keys()
    # a second save of the loaded tables is byte-identical
    path2 = str(tmp_path / "again.exptable")
    save_tables(path2, u)
    with open(path, "rb") as fh1, open(path2, "rb") as fh2:
        assert fh1.read() == fh2.read()


def test_save_refuses_overwrite(tmp_path):
    t = tables("zeta2", 4)
    path = str(tmp_path / "x.exptable")
    save_tables(path, t)
    with pytest.raises(FileExistsError):
        save_tables(path, t)
