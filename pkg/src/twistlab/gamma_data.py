"""Functional-equation gamma data and the invariants derived from it.

A completed L-function is described by gamma(s) = Q^s prod_j Gamma(lambda_j s
+ mu_j) together with a root number omega, |omega| = 1. From this the standard
invariants follow:

    degree       d = 2 sum_j lambda_j
    conductor    q = (2 pi)^d Q^2 prod_j lambda_j^(2 lambda_j)
    omega        omega * prod_j lambda_j^(-2i Im mu_j)
    xi           2 sum_j (mu_j - 1/2) = eta + i d theta   (eta, theta real)
    omega_star   omega_inv * exp(-i pi (eta+1)/2) * (q / (2 pi)^2)^(i theta)
    tau          max_j |Im mu_j| / lambda_j

and the H-invariants H(n) = 2 sum_j B_n(mu_j) / lambda_j^(n-1), so that
H(0) = d and H(1) = xi.
"""
from __future__ import annotations

from dataclasses import dataclass

from mpmath import mpc, mpf, fabs, pi, exp

from .bernoulli import bernoulli_poly

__all__ = ["GammaFactorData", "Invariants", "invariants", "h_invariant"]

_UNIT_TOL_BITS = 40  # |omega| may be off by rounding in user-supplied data


@dataclass(frozen=True)
class GammaFactorData:
    """Q, the (lambda_j, mu_j) pairs, the root number and the pole order at s=1."""

    bigq: mpf
    factors: tuple[tuple[mpf, mpc], ...]
    omega: mpc
    pole_order: int = 0

    def __post_init__(self):
        object.__setattr__(self, "bigq", mpf(self.bigq))
        facs = tuple((mpf(l), mpc(m)) for l, m in self.factors)
        object.__setattr__(self, "factors", facs)
        object.__setattr__(self, "omega", mpc(self.omega))
        if not self.bigq > 0:
            raise ValueError("Q must be positive")
        if not facs:
            raise ValueError("at least one gamma factor is required")
        for l, m in facs:
            if not l > 0:
                raise ValueError("lambda_j must be positive")
            if m.real < -mpf(2) ** (-_UNIT_TOL_BITS):
                raise ValueError("Re mu_j must be >= 0")
        if fabs(abs(self.omega) - 1) > mpf(2) ** (-_UNIT_TOL_BITS):
            raise ValueError("omega must lie on the unit circle")

    def beta(self) -> mpf:
        """prod_j lambda_j^(2 lambda_j), the conductor's lambda part."""
        b = mpf(1)
        for l, _ in self.factors:
            b *= l ** (2 * l)
        return b


@dataclass(frozen=True)
class Invariants:
    degree: mpf
    conductor: mpf
    omega: mpc        # the invariant root number omega_F
    xi: mpc
    eta: mpf
    theta: mpf
    omega_star: mpc
    tau: mpf          # max_j |Im mu_j| / lambda_j


def invariants(g: GammaFactorData) -> Invariants:
    """All shift/conductor invariants of the gamma data at working precision."""
    d = 2 * sum(l for l, _ in g.factors)
    q = (2 * pi) ** d * g.bigq**2 * g.beta()
    om = g.omega
    for l, m in g.factors:
        om *= l ** (-2j * m.imag)
    xi = 2 * sum(m - mpf(1) / 2 for _, m in g.factors)
    xi = mpc(xi)
    eta = xi.real
    theta = xi.imag / d
    om_star = om * exp(-1j * pi * (eta + 1) / 2) * (q / (2 * pi) ** 2) ** (1j * theta)
    tau = max(fabs(m.imag) / l for l, m in g.factors)
    return Invariants(degree=d, conductor=q, omega=om, xi=xi,
                      eta=eta, theta=theta, omega_star=om_star, tau=tau)


def h_invariant(g: GammaFactorData, n: int) -> mpc:
    """H(n) = 2 sum_j B_n(mu_j) / lambda_j^(n-1)."""
    if n < 0:
        raise ValueError("H-invariant index must be >= 0")
    acc = mpc(0)
    for l, m in g.factors:
        acc += bernoulli_poly(n, m) * l ** (1 - n)
    return 2 * acc
