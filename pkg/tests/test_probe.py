"""Main-term defect probe: telescoping exactness and the collapse cross-check."""

from fractions import Fraction

import pytest
from mpmath import fabs, mp, mpc, mpf

from twistlab.probe import collapse_check, probe_tables, theorem2_probe


def test_probe_tables_cached_and_sized():
    t1 = probe_tables("zeta2", 4)
    t2 = probe_tables("zeta2", 4)
    assert t1 is t2
    assert t1.n_cutoff >= 6


def test_telescoping_at_rounding_level():
    rep = theorem2_probe("zeta2", Fraction(1, 3), (2,), [mpc(2, 1), mpc(2, 5)],
                         8192, run_collapse=False)
    assert rep.telescoping_max < mpf(2) ** (-mp.prec // 2)
    for pt in rep.points:
        for K, defect in pt.telescoping.items():
            assert defect < mpf(2) ** (-mp.prec // 2), (pt.s, K)


def test_h_values_consistent_with_term_ledger():
    # H_K = F - sum_{nu<=K} term_nu, re-assembled here from the report's own
    # term ledger with an independent summation order
    rep = theorem2_probe("zeta2", Fraction(1, 3), (2, 4), [mpc(2, 2)],
                         8192, run_collapse=False)
    pt = rep.points[0]
    for K in (2, 4):
        acc = pt.f_value
        for nu in range(K, -1, -1):
            acc -= pt.terms[nu]
        assert fabs(acc - pt.h_values[K]) < mpf(2) ** (-mp.prec + 40)


def test_growth_fit_reported_per_order():
    grid = [mpc(2, t) for t in (1, 2, 5, 10, 20)]
    rep = theorem2_probe("zeta2", Fraction(1, 3), (2, 4), grid, 8192,
                         run_collapse=False)
    assert set(rep.fits) == {2, 4}
    for K, (slope, intercept) in rep.fits.items():
        assert slope == slope  # not NaN
        # calibrated envelope exponent dominates the measured slope
        assert slope < rep.calibrated_exponent[K]
    assert rep.calibrated_exponent[2] == pytest.approx(4 + rep.a_calibrated, abs=1e-9)
    assert rep.calibrated_exponent[4] == pytest.approx(8 + rep.a_calibrated, abs=1e-9)


def test_alpha_one_collapse_small():
    resid = collapse_check("zeta2", 2, mpc(6), 8192)
    assert resid < mpf("1e-12")


def test_collapse_requires_conductor_one_square():
    with pytest.raises(ValueError):
        collapse_check("zeta_chi3", 2, mpc(6), 2048)


def test_probe_sigma_floor():
    with pytest.raises(ValueError):
        theorem2_probe("zeta2", Fraction(1, 3), (2,), [mpc("1.5", 1)], 2048,
                       run_collapse=False)


def test_probe_integer_k_normalized():
    rep = theorem2_probe("zeta2", Fraction(1), 2, [mpc(2, 1)], 4096,
                         run_collapse=False)
    assert rep.k_list == (2,)
    assert rep.alpha == Fraction(1)


def test_twist_series_reduces_alpha_mod_one():
    # the twisted series sees only alpha mod 1; the main-term expansion keeps
    # the given alpha (a genuinely different asymptotic regime), so only the
    # F values coincide
    r1 = theorem2_probe("zeta2", Fraction(1, 3), (2,), [mpc(2, 1)], 4096,
                        run_collapse=False)
    r2 = theorem2_probe("zeta2", Fraction(4, 3), (2,), [mpc(2, 1)], 4096,
                        run_collapse=False)
    assert fabs(r1.points[0].f_value - r2.points[0].f_value) < mpf("1e-70")
    assert fabs(r1.points[0].terms[1] - r2.points[0].terms[1]) > mpf("1e-6")


def test_report_passes_property():
    rep = theorem2_probe("zeta2", Fraction(1), (2,), [mpc(2, 1)], 4096,
                        collapse_s=mpc(6), run_collapse=True)
    assert rep.collapse_residual is not None
    assert rep.collapse_residual < mpf("1e-12")
    assert rep.passes
