"""The degree-2 L-function catalog and its coefficient plumbing.

Catalog entries (all analytically normalized, absolutely convergent for
sigma > 1, coefficients a(n) << n^(1/2)):

    zeta2      zeta(s)^2               a(n) = d(n)
    zeta_chi3  zeta(s) L(s, chi3)      a(n) = sum_{d|n} chi3(d)
    delta      Ramanujan Delta         a(n) = tau(n) / n^(11/2)
    level11    weight-2 newform, 11    a(n) = b(n) / sqrt(n),
                                       b(n) from q prod (1-q^n)^2 (1-q^11n)^2

Integer coefficient layers are exact and grown on demand; the normalized mpf
view is materialized per working precision. Local Euler data is stored as the
inverse-factor polynomial in x = p^(-s), which every downstream identity
consumes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from mpmath import mp, mpf, mpc, sqrt, zeta

from . import qexpansion
from .gamma_data import GammaFactorData

__all__ = [
    "LSeries", "catalog", "get_lseries", "catalog_names",
    "euler_inverse_coeffs", "log_euler_coeffs", "prime_power_coeffs",
    "lseries_from_file", "lseries_to_file", "LSeriesFormatError",
]

_GROWTH_PAD = 4096  # round coefficient requests up to amortize regeneration


class LSeriesFormatError(ValueError):
    """Raised on malformed coefficient files, carrying the offending line."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class LSeries:
    """One Dirichlet series with optional gamma data and Euler-local rules.

    integer_coeffs(n)  -> exact 1-indexed integer layer (or None if the entry
                          is float-native, e.g. file-ingested data)
    normalizer         -> exponent c with a(n) = integer_coeffs[n] * n^(-c)
    local_poly(p)      -> exact inverse local factor coefficients, as a list
                          of (integer m, half-integer exponent e) meaning
                          m * p^e, so values are exact at any precision
    """

    name: str
    gamma: Optional[GammaFactorData]
    integer_gen: Optional[Callable[[int], list[int]]]
    normalizer: Fraction = Fraction(0)
    local_poly: Optional[Callable[[int], list[list[tuple[int, Fraction]]]]] = None
    real_coeffs: bool = True
    fast_value: Optional[Callable] = None
    explicit: Optional[list] = None  # file-ingested coefficient list, 1-indexed
    _int_cache: list = field(default_factory=list, repr=False)
    _norm_cache: dict = field(default_factory=dict, repr=False)

    # -- coefficient access -------------------------------------------------

    def integer_coeffs(self, n_max: int) -> Sequence[int]:
        if self.integer_gen is None:
            raise ValueError(f"{self.name}: no exact integer coefficient layer")
        if len(self._int_cache) <= n_max:
            grow = max(n_max, len(self._int_cache) * 2, _GROWTH_PAD)
            self._int_cache = self.integer_gen(grow)
        return self._int_cache

    def coefficients(self, n_max: int) -> Sequence:
        """1-indexed a(n) for n <= n_max at the current working precision."""
        if self.explicit is not None:
            if n_max >= len(self.explicit):
                raise ValueError(
                    f"{self.name}: only {len(self.explicit) - 1} coefficients ingested")
            return self.explicit
        ints = self.integer_coeffs(n_max)
        if self.normalizer == 0:
            return ints
        key = (mp.prec, self.normalizer)
        cached = self._norm_cache.get(key)
        if cached is None or len(cached) <= n_max:
            c = self.normalizer
            half_integer = c.denominator == 2
            vals = [mpf(0)] * (n_max + 1)
            for n in range(1, n_max + 1):
                if half_integer:
                    # n^(-k/2) via one sqrt keeps the integer layer exact
                    vals[n] = ints[n] / sqrt(mpf(n) ** c.numerator)
                else:
                    vals[n] = ints[n] * mpf(n) ** mpf(-c)
            self._norm_cache = {key: vals}
            cached = vals
        return cached

    def kappa(self, n_probe: int = 20000) -> mpf:
        """Recorded growth constant: max |a(n)|/sqrt(n) over the probed range.

        The catalog entries satisfy |a(n)| <= kappa sqrt(n) globally (divisor
        bound / Deligne); the constant is calibrated on the generated range
        and the maximum sits at small n for every entry.
        """
        a = self.coefficients(n_probe)
        best = 0.0
        for n in range(1, n_probe + 1):
            v = abs(float(a[n])) / float(n) ** 0.5
            if v > best:
                best = v
        return mpf(best) * (1 + mpf(2) ** -20)

    # -- Euler-local data ----------------------------------------------------

    def has_local_data(self) -> bool:
        return self.local_poly is not None

    def local_inverse_values(self, p: int) -> list[mpc]:
        """Inverse local factor 1 + sum_m c(p^m) x^m evaluated at precision."""
        if self.local_poly is None:
            raise ValueError(f"{self.name}: no Euler-product data")
        out = []
        for term in self.local_poly(p):
            acc = mpf(0)
            for m_int, e in term:
                if m_int:
                    acc += m_int * _half_power(p, e)
            out.append(acc)
        return out


def _half_power(p: int, e: Fraction) -> mpf:
    """Exact-at-precision p^e for integer or half-integer e."""
    if e.denominator == 1:
        return mpf(p) ** int(e)
    num = e.numerator  # denominator 2
    return sqrt(mpf(p)) ** num if num >= 0 else 1 / sqrt(mpf(p)) ** (-num)


# -- catalog construction ----------------------------------------------------

def _chi3(n: int) -> int:
    return qexpansion.chi3(n)


def _zeta2_local(p: int):
    # (1 - x)^(-2): inverse factor 1 - 2x + x^2
    one = Fraction(0)
    return [[(1, one)], [(-2, one)], [(1, one)]]


def _zeta_chi3_local(p: int):
    one = Fraction(0)
    if p == 3:
        return [[(1, one)], [(-1, one)]]
    c = _chi3(p)
    return [[(1, one)], [(-(1 + c), one)], [(c, one)]]


class _EtaLocal:
    """Inverse local factors for the eta-product entries.

     1 - a(p) x + x^2 away from the level, 1 - a(p) x at p | level; a(p) is
    the exact integer coefficient divided by p^normalizer.
    """

    def __init__(self, owner: Callable[[], LSeries], level: int):
        self.owner = owner
        self.level = level

    def __call__(self, p: int):
        f = self.owner()
        bp = f.integer_coeffs(max(p, 16))[p]
        e = -f.normalizer
        if p == self.level:
            return [[(1, Fraction(0))], [(-bp, e)]]
        return [[(1, Fraction(0))], [(-bp, e)], [(1, Fraction(0))]]


def _fast_zeta2(s):
    z = zeta(s)
    return z * z


def _fast_zeta_chi3(s):
    from . import zetafast
    return zeta(s) * zetafast.l_chi3(s)


_CATALOG: dict[str, LSeries] = {}


def _build_catalog() -> dict[str, LSeries]:
    half = mpf(1) / 2
    entries = {}
    entries["zeta2"] = LSeries(
        name="zeta2",
        gamma=GammaFactorData(bigq=1 / mp.pi, factors=((half, mpc(0)), (half, mpc(0))),
                              omega=mpc(1), pole_order=2),
        integer_gen=qexpansion.divisor_count_sieve,
        local_poly=_zeta2_local,
        fast_value=_fast_zeta2,
    )
    entries["zeta_chi3"] = LSeries(
        name="zeta_chi3",
        gamma=GammaFactorData(bigq=sqrt(mpf(3)) / mp.pi,
                              factors=((half, mpc(0)), (half, mpc(half))),
                              omega=mpc(1), pole_order=1),
        integer_gen=qexpansion.chi3_divisor_sieve,
        local_poly=_zeta_chi3_local,
        fast_value=_fast_zeta_chi3,
    )
    entries["delta"] = LSeries(
        name="delta",
        gamma=GammaFactorData(bigq=1 / (2 * mp.pi), factors=((mpf(1), mpc(mpf(11) / 2)),),
                              omega=mpc(1), pole_order=0),
        integer_gen=qexpansion.delta_integer_coeffs,
        normalizer=Fraction(11, 2),
    )
    entries["level11"] = LSeries(
        name="level11",
        gamma=GammaFactorData(bigq=sqrt(mpf(11)) / (2 * mp.pi),
                              factors=((mpf(1), mpc(half)),),
                              omega=mpc(1), pole_order=0),
        integer_gen=qexpansion.level11_integer_coeffs,
        normalizer=Fraction(1, 2),
    )
    entries["delta"].local_poly = _EtaLocal(lambda: entries["delta"], level=1)
    entries["level11"].local_poly = _EtaLocal(lambda: entries["level11"], level=11)
    return entries


def catalog() -> dict[str, LSeries]:
    if not _CATALOG:
        _CATALOG.update(_build_catalog())
    return _CATALOG


def catalog_names() -> list[str]:
    return list(catalog().keys())


def get_lseries(name: str) -> LSeries:
    try:
        return catalog()[name]
    except KeyError:
        raise ValueError(f"unknown L-series {name!r}; catalog: {catalog_names()}")


# -- per-prime-power coefficients and local expansions ------------------------

def prime_power_coeffs(f: LSeries, p: int, m_max: int) -> list:
    """a(p^k) for k = 0..m_max by the entry's own coefficient rule.

    Uses the generated coefficient range while p^k fits, and the stored local
    recursion beyond it (needed only for large prime powers, e.g. 47^8; the
    recursion is validated against the generated range elsewhere).
    """
    if f.name == "zeta2":
        return [k + 1 for k in range(m_max + 1)]
    if f.name == "zeta_chi3":
        out = []
        for k in range(m_max + 1):
            out.append(sum(_chi3(p) ** i if p != 3 else (1 if i == 0 else 0)
                           for i in range(k + 1)))
        return out
    limit = 200000
    vals = []
    k_fit = 0
    pk = 1
    while pk * p <= limit and k_fit < m_max:
        pk *= p
        k_fit += 1
    coeffs = f.coefficients(pk)
    vals = [coeffs[p**k] if k else mpf(1) for k in range(k_fit + 1)]
    if k_fit < m_max:
        inv = f.local_inverse_values(p)  # 1 + sum c_m x^m, short polynomial
        for k in range(k_fit + 1, m_max + 1):
            # a(p^k) = -sum_{m>=1} c(p^m) a(p^(k-m))
            acc = mpf(0)
            for m_i in range(1, len(inv)):
                if k - m_i >= 0:
                    acc += inv[m_i] * vals[k - m_i]
            vals.append(-acc)
    return vals


def euler_inverse_coeffs(f: LSeries, p: int, m_max: int) -> list:
    """c(p^m), m = 0..m_max, from power-series inversion of the a(p^k) series.

    F_p(s)^(-1) = 1 + sum_m c(p^m) p^(-ms); for polynomial Euler products the
    sequence terminates (numerically: |c| below the zero threshold).
    """
    a = prime_power_coeffs(f, p, m_max)
    c = [mpf(1) if not isinstance(a[0], int) else 1]
    for m in range(1, m_max + 1):
        acc = 0
        for j in range(1, m + 1):
            acc = acc + a[j] * c[m - j]
        c.append(-acc)
    return c


def log_euler_coeffs(f: LSeries, p: int, k_max: int) -> list:
    """b(p^k), k = 1..k_max, the formal log of the local factor.

    k b_k = k a_k - sum_{j=1}^{k-1} j b_j a_{k-j}; values are Fractions for
    integer entries and mpf for the eta-product entries.
    """
    a = prime_power_coeffs(f, p, k_max)
    exact = all(isinstance(x, int) for x in a)
    b = [Fraction(0) if exact else mpf(0)]
    for k in range(1, k_max + 1):
        acc = (Fraction(k) if exact else mpf(k)) * a[k]
        for j in range(1, k):
            acc -= j * b[j] * a[k - j]
        b.append(acc / k)
    return b[1:]


# -- file format --------------------------------------------------------------
#
#   # lseries v1
#   name=<identifier>
#   real=<true|false>
#   <n> <re> [<im>]          n strictly consecutive from 1
#
def lseries_from_file(path: str) -> LSeries:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != "# lseries v1":
        raise LSeriesFormatError("missing '# lseries v1' header", 1)
    name = None
    real = None
    coeffs: list = [mpc(0)]
    expected_n = 1
    for idx, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("name="):
            name = line[5:].strip()
            continue
        if line.startswith("real="):
            flag = line[5:].strip().lower()
            if flag not in ("true", "false"):
                raise LSeriesFormatError(f"real= must be true or false, got {flag!r}", idx)
            real = flag == "true"
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise LSeriesFormatError(f"expected '<n> <re> [<im>]', got {raw!r}", idx)
        try:
            n = int(parts[0])
            re_v = mpf(parts[1])
            im_v = mpf(parts[2]) if len(parts) == 3 else mpf(0)
        except (ValueError, TypeError):
            raise LSeriesFormatError(f"malformed numeric literal in {raw!r}", idx)
        if n < expected_n:
            raise LSeriesFormatError(f"duplicate or decreasing index n={n}", idx)
        if n > expected_n:
            raise LSeriesFormatError(f"gap in coefficient indices: expected n={expected_n}, got n={n}", idx)
        if real is True and im_v != 0:
            raise LSeriesFormatError("imaginary part in a real=true series", idx)
        coeffs.append(mpc(re_v, im_v) if not real else re_v)
        expected_n += 1
    if name is None or real is None:
        raise LSeriesFormatError("name= and real= headers are required", len(lines))
    if expected_n == 1:
        raise LSeriesFormatError("no coefficient rows", len(lines))
    return LSeries(name=name, gamma=None, integer_gen=None, real_coeffs=real,
                   explicit=coeffs)


def lseries_to_file(path: str, name: str, coeffs: Sequence, real: bool) -> None:
    """Inverse of lseries_from_file for 1-indexed coefficient sequences."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# lseries v1\n")
        fh.write(f"name={name}\n")
        fh.write(f"real={'true' if real else 'false'}\n")
        for n in range(1, len(coeffs)):
            v = coeffs[n]
            if real:
                fh.write(f"{n} {mp.nstr(mpf(v), 30)}\n")
            else:
                v = mpc(v)
                fh.write(f"{n} {mp.nstr(v.real, 30)} {mp.nstr(v.imag, 30)}\n")
