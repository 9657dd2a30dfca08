"""Functional-equation invariants for the catalog and for synthetic gamma data."""

import pytest
from mpmath import mp, mpc, mpf, pi, sqrt, exp, fabs

from twistlab.gamma_data import GammaFactorData, Invariants, h_invariant, invariants
from twistlab.lseries import catalog

TIGHT = mpf("1e-20")


def close(a, b, tol=TIGHT):
    return fabs(mpc(a) - mpc(b)) < tol


# expected (degree, conductor) per catalog entry
CONDUCTORS = {"zeta2": 1, "zeta_chi3": 3, "delta": 1, "level11": 11}


@pytest.mark.parametrize("name", sorted(CONDUCTORS))
def test_catalog_degree_and_conductor(name):
    f = catalog()[name]
    inv = invariants(f.gamma)
    assert close(inv.degree, 2)
    assert close(inv.conductor, CONDUCTORS[name])


@pytest.mark.parametrize("name", sorted(CONDUCTORS))
def test_h_invariant_anchors(name):
    # H(0) recovers the degree, H(1) recovers xi
    f = catalog()[name]
    inv = invariants(f.gamma)
    assert close(h_invariant(f.gamma, 0), inv.degree)
    assert close(h_invariant(f.gamma, 1), inv.xi)


def test_zeta2_specific_invariants():
    g = catalog()["zeta2"].gamma
    inv = invariants(g)
    assert close(inv.omega_star, mpc(0, 1))
    assert close(inv.xi, -2)
    assert close(inv.eta, -2)
    assert close(inv.theta, 0)
    assert close(inv.tau, 0)


def test_delta_eta_and_level11_xi():
    inv_d = invariants(catalog()["delta"].gamma)
    assert close(inv_d.eta, 10)
    inv_11 = invariants(catalog()["level11"].gamma)
    assert close(inv_11.xi, 0)
    assert close(inv_11.eta, 0)


def test_root_numbers_unit_modulus():
    for name in CONDUCTORS:
        inv = invariants(catalog()[name].gamma)
        assert close(abs(inv.omega), 1)
        assert close(abs(inv.omega_star), 1)


def test_synthetic_complex_shift_theta():
    # one factor Gamma(s/2 + (1/4 + 5i)/1) style data: theta and tau nonzero
    mu = mpc(mpf(1) / 4, 5)
    g = GammaFactorData(
        bigq=mpf(1) / sqrt(pi),
        factors=((mpf(1) / 2, mu),),
        omega=mpc(1),
    )
    inv = invariants(g)
    assert close(inv.degree, 1)
    # xi = 2(mu - 1/2) = -1/2 + 10i, so eta = -1/2, theta = Im(xi)/d = 10
    assert close(inv.xi, mpc(mpf(-1) / 2, 10))
    assert close(inv.eta, mpf(-1) / 2)
    assert close(inv.theta, 10)
    # tau = |Im mu| / lambda = 5 / (1/2)
    assert close(inv.tau, 10)
    # omega_F picks up lambda^(-2i Im mu)
    assert close(inv.omega, exp(mpc(0, -10) * mp.log(mpf(1) / 2)))


def test_synthetic_conductor_formula():
    lam = mpf(1) / 2
    g = GammaFactorData(bigq=mpf(3), factors=((lam, mpc(0)), (lam, mpc(0))), omega=mpc(1))
    inv = invariants(g)
    want = (2 * pi) ** 2 * 9 * lam ** (2 * lam) * lam ** (2 * lam)
    assert close(inv.conductor, want, tol=mpf("1e-40") * want)


def test_h_invariant_matches_bernoulli_direct():
    g = catalog()["zeta_chi3"].gamma
    # H(2) = 2 sum B_2(mu_j) / lambda_j, B_2(x) = x^2 - x + 1/6
    acc = mpc(0)
    for lam, mu in g.factors:
        acc += 2 * (mu**2 - mu + mpf(1) / 6) / lam
    assert close(h_invariant(g, 2), acc)


def test_validation_errors():
    half = mpf(1) / 2
    with pytest.raises(ValueError):
        GammaFactorData(bigq=mpf(0), factors=((half, mpc(0)),), omega=mpc(1))
    with pytest.raises(ValueError):
        GammaFactorData(bigq=mpf(1), factors=(), omega=mpc(1))
    with pytest.raises(ValueError):
        GammaFactorData(bigq=mpf(1), factors=((mpf(-1), mpc(0)),), omega=mpc(1))
    with pytest.raises(ValueError):
        GammaFactorData(bigq=mpf(1), factors=((half, mpc(-1)),), omega=mpc(1))
    with pytest.raises(ValueError):
        GammaFactorData(bigq=mpf(1), factors=((half, mpc(0)),), omega=mpc(2))
    with pytest.raises(ValueError):
        h_invariant(catalog()["zeta2"].gamma, -1)


def test_invariants_is_frozen_record():
    inv = invariants(catalog()["zeta2"].gamma)
    assert isinstance(inv, Invariants)
    with pytest.raises(Exception):
        inv.degree = 3
