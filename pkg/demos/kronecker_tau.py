#!/usr/bin/env python3
"""Finding heights tau where p^{-i tau} hits prescribed unit targets.

For a squarefree modulus q with prime factors p_1 < ... < p_r, tau_search
scans the lattice of near-solutions to the simultaneous approximation
problem p_j^{-i tau} ~ eps_j and returns the first height passing the
quality bound max_j |p_j^{-i tau} - eps_j| < 1/k. One prime is exact
(closed formula); two primes ride a continued-fraction window.
"""

from mpmath import exp as mp_exp, expj, fabs, log as mp_log, mp, mpc, mpf

from twistlab.arith import prime_factors
from twistlab.kronecker import SearchBoundExceeded, TauSearchSpec, tau_search, verify_witness

mp.prec = 256


def report(spec, w):
    print(f"  q={spec.q}, k={spec.k}: tau = {mp.nstr(w.tau, 12)} "
          f"(lattice index {w.lattice_index}, scanned {w.scanned})")
    for p in prime_factors(spec.q):
        val = mp_exp(mpc(0, -w.tau) * mp_log(p))
        print(f"    p={p:2d}: p^(-i tau) = {mp.nstr(val, 8)}, target "
              f"{mp.nstr(mpc(spec.targets[p]), 8)}, error "
              f"{mp.nstr(fabs(val - mpc(spec.targets[p])), 3)}")
    re_w = verify_witness(spec, w.tau)
    print(f"    definitional recheck: max error {mp.nstr(re_w.max_error, 4)} "
          f"(bound 1/k = {mp.nstr(mpf(1) / spec.k, 3)})")


if __name__ == "__main__":
    # one prime: exact
    spec1 = TauSearchSpec(q=3, targets={3: expj(mpf("0.4"))}, k=1000)
    print("single prime, exact formula")
    report(spec1, tau_search(spec1))
    print()

    # two primes, increasing quality
    print("two primes, quality ladder")
    for k in (10, 100, 1000):
        spec = TauSearchSpec(q=6, targets={2: expj(mpf(1) / 3),
                                           3: expj(-mpf(2) / 5)}, k=k)
        report(spec, tau_search(spec))
    print()

    # a hopeless bound: the search gives up and reports its best candidate
    print("bound exceeded: best candidate is carried in the exception")
    tight = TauSearchSpec(q=6, targets={2: 1, 3: 1}, k=10, bound=300)
    try:
        tau_search(tight)
        print("  unexpectedly found a witness")
    except SearchBoundExceeded as exc:
        best = exc.best
        print(f"  gave up after scanning {best.scanned} lattice points; best "
              f"tau {mp.nstr(best.tau, 8)} with error {mp.nstr(best.max_error, 4)}")
