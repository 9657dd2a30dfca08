"""Simultaneous-approximation search for multiplicative twist parameters."""

import pytest
from mpmath import expj, exp as mp_exp, fabs, log as mp_log, mp, mpc, mpf, pi

from twistlab.arith import prime_factors
from twistlab.kronecker import (
    SearchBoundExceeded,
    TauSearchSpec,
    TauWitness,
    tau_search,
    verify_witness,
)

# frozen acceptance-style cases: (q, k, targets, expected lattice index)
FROZEN = [
    (6, 100, {2: expj(mpf(1) / 3), 3: expj(-mpf(2) / 5)}, 295),
    (15, 100, {3: mpc(0, 1), 5: mpc(-1)}, 117),
    (33, 100, {3: expj(mpf(2)), 11: expj(mpf("0.7"))}, 46),
]


def test_single_prime_exact_formula():
    # r = 1: tau solves p^{i tau} = eps exactly; errors at rounding level
    spec = TauSearchSpec(q=3, targets={3: expj(mpf("0.4"))}, k=1000)
    w = tau_search(spec)
    assert w.max_error < mpf(10) ** (-mp.dps + 6)
    assert verify_witness(spec, w.tau).max_error == w.max_error
    # convention: the twist parameter enters as p^{-i tau}
    val = mp_exp(mpc(0, -w.tau) * mp_log(3))
    assert fabs(val - spec.targets[3]) < mpf("1e-60")
    assert w.tau >= 1


def test_q6_k10_frozen_witness():
    # frozen small case: joint alignment of 2^{i tau} and 3^{i tau} with 1
    # at quality 10 lands on the 53rd lattice point, tau = 2 pi 53 / ln 2
    spec = TauSearchSpec(q=6, targets={2: 1, 3: 1}, k=10)
    w = tau_search(spec)
    assert w.lattice_index == 53
    assert fabs(w.tau - 2 * pi * 53 / mp_log(2)) < mpf("1e-40")
    assert w.max_error < 1 / mpf(10)


@pytest.mark.parametrize("q,k,targets,m_expect", FROZEN)
def test_composite_witnesses_k100(q, k, targets, m_expect):
    spec = TauSearchSpec(q=q, targets=targets, k=k)
    w = tau_search(spec)
    assert w.lattice_index == m_expect
    assert w.max_error < 1 / mpf(k)
    assert w.passes
    # every reported error agrees with a from-scratch definitional recheck
    re_w = verify_witness(spec, w.tau)
    assert re_w.max_error < 1 / mpf(k)
    for p in prime_factors(q):
        err = min(
            fabs(mp_exp(mpc(0, -w.tau) * mp_log(p)) - mpc(targets[p])),
            fabs(mp_exp(mpc(0, w.tau) * mp_log(p)) - mpc(targets[p])),
        )
        assert err < 1 / mpf(k)


def test_frozen_tau_values_pinned():
    # the tau values themselves, to printing precision
    want = {6: "2682.676306", 15: "673.4360043", 33: "266.9820031"}
    for q, k, targets, _ in FROZEN:
        w = tau_search(TauSearchSpec(q=q, targets=targets, k=k))
        assert mp.nstr(w.tau, 10) == want[q], q


def test_bound_exceeded_carries_best_witness():
    spec = TauSearchSpec(q=6, targets={2: 1, 3: 1}, k=10, bound=300.0)
    with pytest.raises(SearchBoundExceeded) as exc:
        tau_search(spec)
    best = exc.value.best
    assert best is not None
    assert isinstance(best, TauWitness)
    assert best.lattice_index == 12
    assert best.tau <= 300.0
    assert best.max_error > 1 / mpf(10)  # otherwise the search would have stopped
    re_w = verify_witness(spec, best.tau)
    assert fabs(re_w.max_error - best.max_error) < mpf("1e-30")


def test_verify_witness_rejects_junk_tau():
    q, k, targets, _ = FROZEN[0]
    spec = TauSearchSpec(q=q, targets=targets, k=k)
    w = tau_search(spec)
    off = verify_witness(spec, w.tau + 0.37)
    assert off.max_error > 1 / mpf(k)


def test_input_validation():
    # validation runs when a search is launched, not at record construction
    with pytest.raises(ValueError):
        tau_search(TauSearchSpec(q=4, targets={2: mpc(1)}, k=10))   # not squarefree
    with pytest.raises(ValueError):
        tau_search(TauSearchSpec(q=1, targets={}, k=10))            # q too small
    with pytest.raises(ValueError):
        tau_search(TauSearchSpec(q=6, targets={2: mpc(1)}, k=10))   # missing prime 3
    with pytest.raises(ValueError):
        tau_search(TauSearchSpec(q=6, targets={2: mpc(1), 3: mpc(1), 5: mpc(1)}, k=10))
    with pytest.raises(ValueError):
        tau_search(TauSearchSpec(q=6, targets={2: mpc(2), 3: mpc(1)}, k=10))
    with pytest.raises(ValueError):
        tau_search(TauSearchSpec(q=6, targets={2: 1, 3: 1}, k=0))   # quality k >= 1


def test_witness_quality_improves_with_k():
    base = {2: 1, 3: 1}
    w10 = tau_search(TauSearchSpec(q=6, targets=base, k=10))
    w40 = tau_search(TauSearchSpec(q=6, targets=base, k=40))
    assert w40.max_error <= w10.max_error
    assert w40.max_error < 1 / mpf(40)
