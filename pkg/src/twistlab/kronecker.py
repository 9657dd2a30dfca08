"""Witness search for simultaneous phase targets p^{-i tau} ~ eps_p.

One prime is exact: tau = 2 pi (m + phi)/log p solves the single phase
congruence on the nose. Two primes reduce to an inhomogeneous rotation
problem for gamma = log p2/log p1; continued-fraction convergents of gamma
bound the search window (three-distance theorem) before a vectorized scan.
Three or more primes fall back to the chunked grid scan directly. Every
returned tau is re-verified against its definitional bound at working
precision; the search is never trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np
from mpmath import mp, mpf, mpc, asin as mp_asin, atan2, exp as mp_exp, fabs, floor as mp_floor, log as mp_log, pi

from .arith import is_squarefree, prime_factors

__all__ = ["TauSearchSpec", "TauWitness", "SearchBoundExceeded", "tau_search",
           "verify_witness"]

_CHUNK = 1 << 21
_MIN_TAU = mpf(1)


@dataclass(frozen=True)
class TauSearchSpec:
    q: int
    targets: dict                 # p -> unit-modulus complex target eps_p
    k: int
    bound: float = 1e9


@dataclass
class TauWitness:
    tau: mpf
    errors: dict                  # p -> |p^{-i tau} - eps_p|
    max_error: mpf
    k: int
    q: int
    lattice_index: int            # m along the leading prime
    scanned: int
    window: int = 0               # CF-certified window for r = 2, 0 otherwise

    @property
    def passes(self) -> bool:
        return self.max_error < mpf(1) / self.k


class SearchBoundExceeded(RuntimeError):
    """Search bound exhausted; carries the best witness reached."""

    def __init__(self, message: str, best: TauWitness):
        super().__init__(message)
        self.best = best


def _normalized_targets(spec: TauSearchSpec) -> dict:
    primes = prime_factors(spec.q)
    if not is_squarefree(spec.q) or spec.q < 2:
        raise ValueError("tau_search needs a square-free q >= 2")
    if set(spec.targets) != set(primes):
        raise ValueError(f"targets must cover exactly the primes {primes}")
    out = {}
    for p in primes:
        t = mpc(spec.targets[p])
        m = abs(t)
        if fabs(m - 1) > mpf("1e-6"):
            raise ValueError(f"target for p={p} is not on the unit circle")
        out[p] = t / m
    return out


def _phase_fraction(eps: mpc) -> mpf:
    """phi in [0,1) with eps = e(-phi), i.e. the target of frac(tau log p / 2 pi)."""
    ang = atan2(eps.imag, eps.real)
    phi = -ang / (2 * pi)
    return phi - mp_floor(phi)


def verify_witness(spec: TauSearchSpec, tau, scanned: int = 0,
                   lattice_index: int = 0, window: int = 0) -> TauWitness:
    """Definitional recheck at working precision."""
    targets = _normalized_targets(spec)
    errors = {}
    for p, eps in targets.items():
        val = mp_exp(-1j * mpf(tau) * mp_log(p))
        errors[p] = abs(val - eps)
    return TauWitness(tau=mpf(tau), errors=errors, max_error=max(errors.values()),
                      k=spec.k, q=spec.q, lattice_index=lattice_index,
                      scanned=scanned, window=window)


def _cf_window(gamma: mpf, half_tol: mpf, cap: int) -> int:
    """Smallest CF-based window q_j + q_{j+1} with ||q_j gamma|| <= half_tol.

    Within any interval of that many consecutive m the orbit {m gamma} enters
    every arc of length 2*half_tol (three-distance theorem), so a scan of the
    window is guaranteed to contain a hit when the tolerance arc has length
    >= 2*half_tol.
    """
    x = gamma
    p_prev, p_cur = 1, int(mp_floor(x))
    q_prev, q_cur = 0, 1
    for _ in range(200):
        frac = x - mp_floor(x)
        dist = min(fabs(q_cur * gamma - round(q_cur * gamma)), mpf(1))
        if dist <= half_tol:
            return q_cur + q_prev
        if frac == 0 or q_cur > cap:
            break
        x = 1 / frac
        a = int(mp_floor(x))
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    return cap


def tau_search(spec: TauSearchSpec) -> TauWitness:
    """Find tau <= bound with max_p |p^{-i tau} - eps_p| < 1/k, verified."""
    if spec.k < 1:
        raise ValueError("quality k must be >= 1")
    targets = _normalized_targets(spec)
    primes = sorted(targets)
    phis = {p: _phase_fraction(targets[p]) for p in primes}
    p1 = primes[0]
    log_p1 = mp_log(p1)
    two_pi = 2 * pi

    def tau_of(m: int) -> mpf:
        return two_pi * (m + phis[p1]) / log_p1

    m_min = 1
    while tau_of(m_min) < _MIN_TAU:
        m_min += 1
    m_max = int(mp_floor(mpf(spec.bound) * log_p1 / two_pi - phis[p1]))
    if m_max < m_min:
        raise ValueError("search bound excludes even the smallest lattice point")

    if len(primes) == 1:
        wit = verify_witness(spec, tau_of(m_min), scanned=1, lattice_index=m_min)
        if not wit.passes:
            raise SearchBoundExceeded("exact single-prime witness failed recheck", wit)
        return wit

    # fractional tolerance: |angle| < 2 asin(1/2k) <-> dist < delta
    delta = 2 * mp_asin(mpf(1) / (2 * spec.k)) / two_pi
    gammas = []
    offsets = []
    for p in primes[1:]:
        g = mp_log(p) / log_p1
        c = phis[p1] * g - phis[p]
        gammas.append(g)
        offsets.append(c - mp_floor(c))
    window = 0
    if len(primes) == 2:
        window = _cf_window(gammas[0], delta / 2, m_max)

    g_f = np.array([float(g) for g in gammas])
    c_f = np.array([float(c) for c in offsets])
    loose = float(delta) * 1.05 + 1e-7
    best: TauWitness | None = None
    scanned = 0
    lo = m_min
    while lo <= m_max:
        hi = min(lo + _CHUNK, m_max + 1)
        ms = np.arange(lo, hi, dtype=np.float64)
        dist_max = np.zeros(len(ms))
        for g, c in zip(g_f, c_f):
            y = ms * g + c
            d = np.abs(y - np.rint(y))
            np.maximum(dist_max, d, out=dist_max)
        scanned += len(ms)
        hits = np.nonzero(dist_max < loose)[0]
        for idx in hits:
            m = lo + int(idx)
            wit = verify_witness(spec, tau_of(m), scanned=scanned,
                                 lattice_index=m, window=window)
            if wit.passes:
                return wit
            if best is None or wit.max_error < best.max_error:
                best = wit
        if best is None or (len(ms) and float(best.max_error) > dist_max.min() * 6.3):
            m = lo + int(np.argmin(dist_max))
            wit = verify_witness(spec, tau_of(m), scanned=scanned,
                                 lattice_index=m, window=window)
            if best is None or wit.max_error < best.max_error:
                best = wit
        lo = hi
    assert best is not None
    raise SearchBoundExceeded(
        f"no tau <= {spec.bound} met quality 1/{spec.k}; best error {best.max_error}",
        best)
