#!/usr/bin/env python3
"""Expansion-polynomial algebra: the exact C table and the R, V, A, Q chain.

Builds the exact rational C table two independent ways, assembles the
R/V/A/Q polynomial tables for zeta2, prints the small cases against their
closed forms, and shows the order-(M + 1) shrink of the remainder oracles
when the expansion point w doubles. Finishes with a cache round trip.
"""

import os
import tempfile

from mpmath import mp, mpc, mpf

from twistlab.expansion import (
    asymptotic_residual_C,
    asymptotic_residual_expV,
    build_tables,
    compute_C,
    ctable_series_oracle,
    load_tables,
    q_assembly_residual,
    save_tables,
)
from twistlab.lseries import get_lseries

mp.prec = 256


def poly_str(p):
    terms = []
    for k in range(p.degree(), -1, -1):
        c = p.coeff(k)
        if abs(c) < mpf("1e-40"):
            continue
        terms.append(f"({mp.nstr(c, 6)})*s^{k}" if k else f"({mp.nstr(c, 6)})")
    return " + ".join(terms) if terms else "0"


if __name__ == "__main__":
    # ----- exact C table, two routes -----
    table = compute_C(12)
    oracle = ctable_series_oracle(12)
    agree = all(table[(m, l)] == oracle[(m, l)]
                for m in range(1, 13) for l in range(m, 13))
    table.assert_unitriangular_integral()
    print("C table, recurrence vs series oracle, M = 12:",
          "identical" if agree else "MISMATCH")
    print("first column C(1, l):",
          [table[(1, l)] for l in range(1, 7)], "(alternating factorials)")
    print()

    # ----- R, V, Q tables for zeta2 -----
    g = get_lseries("zeta2").gamma
    tables = build_tables(g, "zeta2", 6)
    print("zeta2 polynomial tables, nu <= 6")
    for nu in (1, 2):
        print(f"  R_{nu} = {poly_str(tables.r_polys[nu])}")
        print(f"  V_{nu} = {poly_str(tables.v_polys[nu])}")
        print(f"  Q_{nu} = {poly_str(tables.q_polys[nu])}")
    degs_r = [tables.r_polys[nu].degree() for nu in range(1, 7)]
    degs_q = [tables.q_polys[nu].degree() for nu in range(1, 7)]
    print(f"  deg R_nu for nu=1..6: {degs_r} (law: nu + 1)")
    print(f"  deg Q_nu for nu=1..6: {degs_q} (law: 2 nu)")
    print()

    # ----- asymptotic decay under w doubling -----
    c_big = compute_C(14)
    s = mpc(2)
    print("remainder shrink when w doubles (2000 -> 4000), target 2^(M+1)/2")
    for m_used in (2, 4, 6):
        rc = asymptotic_residual_C(c_big, 1, m_used, mpf(2000)) / \
            asymptotic_residual_C(c_big, 1, m_used, mpf(4000))
        rv = asymptotic_residual_expV(tables, m_used, s, mpf(2000)) / \
            asymptotic_residual_expV(tables, m_used, s, mpf(4000))
        rq = q_assembly_residual(tables, m_used, s, mpf(2000)) / \
            q_assembly_residual(tables, m_used, s, mpf(4000))
        tgt = mpf(2) ** (m_used + 1) / 2
        print(f"  M={m_used}: C ratio {mp.nstr(rc, 6)}, expV ratio "
              f"{mp.nstr(rv, 6)}, Q ratio {mp.nstr(rq, 6)}, "
              f"target >= {mp.nstr(tgt, 5)}")
    print()

    # ----- cache round trip -----
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "zeta2.exptable")
        save_tables(path, tables)
        back = load_tables(path)
        worst = max(tables.r_polys[nu].max_coeff_diff(back.r_polys[nu])
                    for nu in range(1, 7))
        print(f"cache round trip: wrote {os.path.getsize(path)} bytes, "
              f"max R coefficient drift {mp.nstr(worst, 3)}")
