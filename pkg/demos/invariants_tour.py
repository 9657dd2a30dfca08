#!/usr/bin/env python3
"""Tour of the catalog: gamma data, conductors, root numbers, H-series.

Walks the four built-in degree-2 series and prints the invariants that the
rest of the toolkit consumes: degree, conductor, xi, eta, theta, the root
number omega, its dual variant omega*, and the first few values of the
H-series whose anchors are H(0) = degree and H(1) = xi.
"""

from mpmath import mp, mpc

from twistlab.gamma_data import h_invariant, invariants
from twistlab.lseries import catalog_names, get_lseries

mp.prec = 256


def show(name):
    f = get_lseries(name)
    inv = invariants(f.gamma)
    print(f"--- {name} ---")
    print(f"  degree     {mp.nstr(inv.degree, 6)}")
    print(f"  conductor  {mp.nstr(inv.conductor, 6)}")
    print(f"  xi         {mp.nstr(inv.xi, 8)}")
    print(f"  eta        {mp.nstr(inv.eta, 8)}")
    print(f"  theta      {mp.nstr(inv.theta, 8)}   tau {mp.nstr(inv.tau, 8)}")
    print(f"  omega      {mp.nstr(inv.omega, 8)}  |omega| = "
          f"{mp.nstr(abs(inv.omega), 8)}")
    print(f"  omega*     {mp.nstr(inv.omega_star, 8)}")
    for n in range(4):
        print(f"  H({n})       {mp.nstr(h_invariant(f.gamma, n), 8)}")
    # anchor checks: H(0) reproduces the degree, H(1) reproduces xi
    print(f"  |H(0) - d|  {mp.nstr(abs(h_invariant(f.gamma, 0) - inv.degree), 3)}")
    print(f"  |H(1) - xi| {mp.nstr(abs(h_invariant(f.gamma, 1) - inv.xi), 3)}")
    print()


if __name__ == "__main__":
    print(f"working precision: {mp.prec} bits\n")
    for name in catalog_names():
        show(name)
    w = invariants(get_lseries("zeta2").gamma).omega_star
    print(f"zeta2 dual root number omega* = {mp.nstr(w, 10)} "
          f"(distance to i: {mp.nstr(abs(w - mpc(0, 1)), 3)})")
