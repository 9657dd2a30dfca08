#!/usr/bin/env python3
"""Residue-class sum identity and prime-modulus twist decomposition.

Two finite identities that hold at any shared truncation, so their residuals
sit at rounding level rather than series-tail level. The first splits a
Dirichlet series over residue classes mod q and compares against a
multiplier polynomial times the full sum; the second rebuilds an additive
twist e(n/p) from multiplicative character twists.
"""

from mpmath import mp, mpc, mpf

from twistlab.lseries import get_lseries
from twistlab.twists import (
    multiplier_value,
    sum_lemma_check,
    twist_decomposition_check,
)

mp.prec = 256

if __name__ == "__main__":
    n_terms = 1 << 14

    print(f"residue-class sum identity, n_terms = {n_terms}")
    for name, q in (("zeta2", 2), ("zeta_chi3", 6), ("level11", 11)):
        f = get_lseries(name)
        for s in (mpc(2), mpc(mpf("1.8"), 3)):
            res = sum_lemma_check(f, q, s, n_terms)
            print(f"  {name:10s} q={q:2d} s={mp.nstr(s, 4):12s} "
                  f"residual {mp.nstr(res.residual, 4):12s} "
                  f"rounding radius {mp.nstr(res.tail_radius, 3)}")
    print()

    # the multiplier for zeta2 at q = 2 is a Dirichlet polynomial in 2^{-s};
    # at s = 3 it takes the rational value -17/32
    m = multiplier_value(get_lseries("zeta2"), 2, mpc(3))
    print(f"multiplier zeta2, q=2, s=3: {mp.nstr(m, 10)} "
          f"(vs -17/32 = {mp.nstr(mpf(-17) / 32, 10)}, "
          f"gap {mp.nstr(abs(m + mpf(17) / 32), 3)})")
    print()

    print(f"prime-modulus twist decomposition, n_terms = {n_terms}")
    for name in ("zeta2", "zeta_chi3"):
        f = get_lseries(name)
        for p in (2, 3, 5, 7):
            res = twist_decomposition_check(f, p, mpc(2), n_terms)
            print(f"  {name:10s} p={p}: residual {mp.nstr(res.residual, 4)}")
