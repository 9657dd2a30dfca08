"""Double-precision Euler-Maclaurin zeta used as the fast contour oracle."""

import pytest
from mpmath import fabs, mp, mpc, mpf, zeta

from twistlab.zetafast import dp_relative_error, l_chi3, zeta2_dp, zeta_dp


def test_zeta_dp_on_real_axis():
    for sigma in (1.5, 2.0, 2.5, 3.0, 6.0):
        got = zeta_dp(complex(sigma, 0.0))
        want = zeta(mpf(sigma))
        assert fabs(mpc(got) - want) / fabs(want) < mpf("2e-15"), sigma


@pytest.mark.parametrize("sigma", [2.0, 2.5, 2.75, 3.0])
def test_zeta_dp_moderate_heights(sigma):
    worst = 0.0
    for t in (0.5, 3.0, 17.0, 101.5, 999.25, 4096.0, 20000.0):
        worst = max(worst, dp_relative_error(complex(sigma, t)))
    assert worst < 1e-13, (sigma, worst)


@pytest.mark.parametrize("t", [-20000.0, -1234.5, -7.25])
def test_zeta_dp_negative_heights(t):
    assert dp_relative_error(complex(2.0, t)) < 1e-13
    # conjugate symmetry on the real-coefficient series
    up = zeta_dp(complex(2.3, -t))
    down = zeta_dp(complex(2.3, t))
    assert abs(up - down.conjugate()) / abs(up) < 1e-13


def test_zeta_dp_phase_reduction_large_imag():
    # beyond |Im w| = 128 the phases go through the double-double path;
    # spot-check continuity across that boundary
    for t in (127.5, 128.5, 300.0):
        assert dp_relative_error(complex(2.0, t)) < 1e-13


def test_zeta2_dp_is_square():
    w = complex(1.8, 33.0)
    assert abs(zeta2_dp(w) - zeta_dp(w) ** 2) == 0.0


def test_l_chi3_matches_series():
    # L(s, chi3) against a long partial sum with alternating chi3 pattern
    s = mpc(3)
    acc = mp.mpf(0)
    n = 1
    acc = mpc(0)
    for n in range(1, 20001):
        r = n % 3
        if r == 1:
            acc += mpf(n) ** (-3)
        elif r == 2:
            acc -= mpf(n) ** (-3)
    assert fabs(l_chi3(s) - acc) < mpf("1e-8")


def test_l_chi3_euler_product_spot():
    # partial Euler product converges toward the same value
    from twistlab.arith import primes_up_to

    s = mpc(4)
    prod = mpc(1)
    for p in primes_up_to(2000):
        chi = 0 if p == 3 else (1 if p % 3 == 1 else -1)
        prod /= (1 - chi * mpf(p) ** (-4))
    assert fabs(l_chi3(s) - prod) < mpf("1e-10")
