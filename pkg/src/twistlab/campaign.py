"""Campaign runner: config-driven check grids with a CSV verdict table.

Config files are plain `key = value` lines.  Top-level keys: precision_bits,
cache_dir, checks (comma list of check kinds); everything else must be a
dotted per-check parameter `<check>.<param> = value`.  Parse errors carry
line numbers.  Each check job is pure given (params, precision); jobs run
in a worker pool (sequential by default) and rows are folded into the
report in deterministic job order regardless of completion order.

Report rows share one schema:
    check,fname,q_or_p,s_re,s_im,n_terms,residual,tail_radius,pass
For mellin rows q_or_p holds the smoothing scale X; for tau_search rows the
residual is the worst witness error and tail_radius the quality bound 1/k;
for probe rows the residual is the telescoping defect.  The exit code is 0
iff every row passes.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf, mpc, nstr

__all__ = ["CampaignConfig", "CampaignError", "CampaignReport", "CheckRow",
           "parse_config", "parse_config_text", "default_config",
           "run_campaign", "rows_to_csv", "CSV_HEADER"]

CSV_HEADER = "check,fname,q_or_p,s_re,s_im,n_terms,residual,tail_radius,pass"

_KNOWN_CHECKS = ("invariants", "kluyver", "sum_lemma", "twist_decomp",
                 "expansion", "decay", "tau_search", "extraction", "gk",
                 "probe", "mellin")
_TOP_KEYS = ("precision_bits", "cache_dir", "checks")


class CampaignError(ValueError):
    def __init__(self, message: str, line_no: int = 0):
        where = f" (line {line_no})" if line_no else ""
        super().__init__(f"{message}{where}")
        self.line_no = line_no


@dataclass
class CampaignConfig:
    precision_bits: int = 256
    cache_dir: str = ""
    checks: list = field(default_factory=list)
    params: dict = field(default_factory=dict)   # check -> {param: raw string}

    def get(self, check: str, param: str, fallback=None):
        return self.params.get(check, {}).get(param, fallback)


@dataclass
class CheckRow:
    check: str
    fname: str
    q_or_p: str
    s: mpc
    n_terms: int
    residual: mpf
    tail_radius: mpf
    ok: bool

    def as_csv(self) -> str:
        return ",".join([
            self.check, self.fname, str(self.q_or_p),
            nstr(mpf(self.s.real), 17), nstr(mpf(self.s.imag), 17),
            str(self.n_terms), nstr(mpf(self.residual), 17),
            nstr(mpf(self.tail_radius), 17), "1" if self.ok else "0"])


@dataclass
class CampaignReport:
    config: CampaignConfig
    rows: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_pass else 1


def rows_to_csv(rows) -> str:
    return "\n".join([CSV_HEADER] + [r.as_csv() for r in rows]) + "\n"


# -- config parsing ----------------------------------------------------------

def parse_config_text(text: str, path: str = "<config>") -> CampaignConfig:
    cfg = CampaignConfig()
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CampaignError(f"{path}: expected 'key = value', got {line!r}",
                                line_no)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise CampaignError(f"{path}: empty key", line_no)
        if key in seen:
            raise CampaignError(f"{path}: duplicate key {key!r}", line_no)
        seen.add(key)
        if key == "precision_bits":
            try:
                cfg.precision_bits = int(value)
            except ValueError:
                raise CampaignError(f"{path}: precision_bits must be an "
                                    f"integer, got {value!r}", line_no)
            if cfg.precision_bits < 64:
                raise CampaignError(f"{path}: precision_bits must be >= 64",
                                    line_no)
        elif key == "cache_dir":
            cfg.cache_dir = value
        elif key == "checks":
            names = [v.strip() for v in value.split(",") if v.strip()]
            for name in names:
                if name not in _KNOWN_CHECKS:
                    raise CampaignError(
                        f"{path}: unknown check {name!r}; known checks: "
                        f"{', '.join(_KNOWN_CHECKS)}", line_no)
            cfg.checks = names
        elif "." in key:
            check, _, param = key.partition(".")
            if check not in _KNOWN_CHECKS:
                raise CampaignError(f"{path}: parameter {key!r} names an "
                                    f"unknown check {check!r}", line_no)
            if not param:
                raise CampaignError(f"{path}: empty parameter name in {key!r}",
                                    line_no)
            cfg.params.setdefault(check, {})[param] = value
        else:
            raise CampaignError(f"{path}: unknown key {key!r}; top-level keys "
                                f"are {', '.join(_TOP_KEYS)}", line_no)
    return cfg


def parse_config(path: str) -> CampaignConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read(), path=path)


def default_config() -> CampaignConfig:
    """The full verification suite at its published parameters."""
    return parse_config_text(DEFAULT_CONFIG_TEXT, path="<default>")


DEFAULT_CONFIG_TEXT = """\
# full verification campaign (roughly 15 minutes at 256 bits)
precision_bits = 256
checks = invariants, kluyver, sum_lemma, twist_decomp, expansion, decay, tau_search, gk, extraction, probe, mellin
sum_lemma.entries = zeta2:2, zeta2:6, zeta_chi3:3, zeta_chi3:6, level11:11
sum_lemma.s_grid = 2, 3, 1.8+3j, 2+50j
sum_lemma.n_terms = 65536
twist_decomp.entries = zeta2, zeta_chi3
twist_decomp.p_list = 2, 3, 5, 7
twist_decomp.s_grid = 2, 1.8+3j
twist_decomp.n_terms = 65536
tau_search.q_list = 6, 15, 33
tau_search.k = 100
gk.examples = level11:11:2:480.4:100000, zeta_chi3:3:2+1j:1000:100000
extraction.targets = zeta_chi3:3:1, zeta_chi3:3:2, level11:11:1
extraction.grid = 64
extraction.k = 50
extraction.s = 2
extraction.n_terms = 65536
probe.alphas = 1, 1/3
probe.k_orders = 2, 4
probe.t_grid = 1, 2, 5, 10, 20, 35, 50
probe.n_terms = 65536
mellin.s = 1.5
mellin.alpha = 1/3
mellin.x_list = 1, 10, 100
"""


# -- value parsing helpers ---------------------------------------------------

def _parse_complex(tok: str) -> mpc:
    tok = tok.strip().replace("i", "j")
    try:
        return mpc(complex(tok))
    except ValueError:
        raise CampaignError(f"cannot parse {tok!r} as a number")


def _parse_list(raw: str) -> list:
    return [t.strip() for t in raw.split(",") if t.strip()]


def _require_catalog(name: str, key: str):
    from .lseries import catalog_names
    if name not in catalog_names():
        raise CampaignError(f"unknown catalog name {name!r} in {key}; "
                            f"known names: {', '.join(catalog_names())}")


# -- job construction --------------------------------------------------------

def _jobs_for(cfg: CampaignConfig):
    """Expand the config into (kind, params) tuples, validating names."""
    jobs = []
    for check in cfg.checks:
        if check == "invariants":
            jobs.append(("invariants", {}))
        elif check == "kluyver":
            jobs.append(("kluyver", {"limit": int(cfg.get(check, "limit", "200"))}))
        elif check == "sum_lemma":
            entries = _parse_list(cfg.get(check, "entries",
                                          "zeta2:2, zeta2:6, zeta_chi3:3, zeta_chi3:6, level11:11"))
            s_grid = _parse_list(cfg.get(check, "s_grid", "2, 3, 1.8+3j, 2+50j"))
            n_terms = int(cfg.get(check, "n_terms", "65536"))
            for ent in entries:
                name, _, q = ent.partition(":")
                _require_catalog(name.strip(), "sum_lemma.entries")
                for s_tok in s_grid:
                    jobs.append(("sum_lemma", {"name": name.strip(),
                                               "q": int(q), "s": s_tok,
                                               "n_terms": n_terms}))
        elif check == "twist_decomp":
            entries = _parse_list(cfg.get(check, "entries", "zeta2, zeta_chi3"))
            p_list = [int(p) for p in _parse_list(cfg.get(check, "p_list", "2, 3, 5, 7"))]
            s_grid = _parse_list(cfg.get(check, "s_grid", "2, 1.8+3j"))
            n_terms = int(cfg.get(check, "n_terms", "65536"))
            for name in entries:
                _require_catalog(name, "twist_decomp.entries")
                for p in p_list:
                    for s_tok in s_grid:
                        jobs.append(("twist_decomp", {"name": name, "p": p,
                                                      "s": s_tok,
                                                      "n_terms": n_terms}))
        elif check == "expansion":
            name = cfg.get(check, "name", "zeta2")
            _require_catalog(name, "expansion.name")
            jobs.append(("expansion", {"name": name,
                                       "nu_max": int(cfg.get(check, "nu_max", "8")),
                                       "cache_dir": cfg.cache_dir}))
        elif check == "decay":
            name = cfg.get(check, "name", "zeta2")
            _require_catalog(name, "decay.name")
            jobs.append(("decay", {"name": name,
                                   "m_max": int(cfg.get(check, "m_max", "6"))}))
        elif check == "tau_search":
            q_list = [int(q) for q in _parse_list(cfg.get(check, "q_list", "6, 15, 33"))]
            k = int(cfg.get(check, "k", "100"))
            for q in q_list:
                jobs.append(("tau_search", {"q": q, "k": k}))
        elif check == "gk":
            examples = _parse_list(cfg.get(
                check, "examples",
                "level11:11:2:480.4:100000, zeta_chi3:3:2+1j:1000:100000"))
            for ex in examples:
                parts = ex.split(":")
                if len(parts) != 5:
                    raise CampaignError(
                        f"gk.examples entry {ex!r} needs name:q:s:tau:n_terms")
                _require_catalog(parts[0], "gk.examples")
                jobs.append(("gk", {"name": parts[0], "q": int(parts[1]),
                                    "s": parts[2], "tau": parts[3],
                                    "n_terms": int(parts[4])}))
        elif check == "extraction":
            targets = _parse_list(cfg.get(
                check, "targets", "zeta_chi3:3:1, zeta_chi3:3:2, level11:11:1"))
            grid = int(cfg.get(check, "grid", "64"))
            k = int(cfg.get(check, "k", "50"))
            s_tok = cfg.get(check, "s", "2")
            n_terms = int(cfg.get(check, "n_terms", "65536"))
            for tgt in targets:
                parts = tgt.split(":")
                if len(parts) != 3:
                    raise CampaignError(
                        f"extraction.targets entry {tgt!r} needs name:p:m")
                _require_catalog(parts[0], "extraction.targets")
                jobs.append(("extraction", {"name": parts[0], "p": int(parts[1]),
                                            "m": int(parts[2]), "s": s_tok,
                                            "grid": grid, "k": k,
                                            "n_terms": n_terms}))
        elif check == "probe":
            name = cfg.get(check, "name", "zeta2")
            _require_catalog(name, "probe.name")
            alphas = _parse_list(cfg.get(check, "alphas", "1, 1/3"))
            k_orders = [int(k) for k in _parse_list(cfg.get(check, "k_orders", "2, 4"))]
            t_grid = [float(t) for t in _parse_list(cfg.get(check, "t_grid",
                                                            "1, 2, 5, 10, 20, 35, 50"))]
            n_terms = int(cfg.get(check, "n_terms", "65536"))
            for alpha in alphas:
                jobs.append(("probe", {"name": name, "alpha": alpha,
                                       "k_orders": k_orders, "t_grid": t_grid,
                                       "n_terms": n_terms}))
        elif check == "mellin":
            name = cfg.get(check, "name", "zeta2")
            _require_catalog(name, "mellin.name")
            s_tok = cfg.get(check, "s", "1.5")
            alpha = cfg.get(check, "alpha", "1/3")
            x_list = _parse_list(cfg.get(check, "x_list", "1, 10, 100"))
            for x_tok in x_list:
                jobs.append(("mellin", {"name": name, "s": s_tok,
                                        "alpha": alpha, "big_x": x_tok}))
    return jobs


# -- job execution (pure given params + precision) ---------------------------

def _frac(tok: str) -> Fraction:
    return Fraction(tok)


def run_job(kind: str, params: dict, precision_bits: int) -> list:
    """Execute one check job and return its CheckRow list."""
    mp.prec = precision_bits
    zero = mpf(0)
    rows = []
    if kind == "invariants":
        from .gamma_data import invariants, h_invariant
        from .lseries import catalog
        expected_q = {"zeta2": 1, "zeta_chi3": 3, "delta": 1, "level11": 11}
        for name, f in sorted(catalog().items()):
            inv = invariants(f.gamma)
            defect = abs(inv.degree - 2) + abs(inv.conductor - expected_q[name])
            defect += abs(h_invariant(f.gamma, 0) - inv.degree)
            defect += abs(h_invariant(f.gamma, 1) - inv.xi)
            if name == "zeta2":
                defect += abs(inv.omega_star - mpc(0, 1))
            rows.append(CheckRow("invariants", name, str(expected_q[name]),
                                 mpc(0), 0, defect, mpf("1e-20"),
                                 defect < mpf("1e-20")))
    elif kind == "kluyver":
        from .characters import ramanujan_sum
        from .dirichlet import unit_roots
        from math import gcd
        limit = params["limit"]
        worst = zero
        for q in range(1, limit + 1):
            roots = unit_roots(q)
            for n in range(1, limit + 1):
                direct = sum(roots[(a * n) % q] for a in range(1, q + 1)
                             if gcd(a, q) == 1)
                worst = max(worst, abs(direct - ramanujan_sum(q, n)))
        rows.append(CheckRow("kluyver", "-", str(limit), mpc(0), 0, worst,
                             mpf("1e-20"), worst < mpf("1e-20")))
    elif kind == "sum_lemma":
        from .lseries import get_lseries
        from .twists import sum_lemma_check
        res = sum_lemma_check(get_lseries(params["name"]), params["q"],
                              _parse_complex(params["s"]), params["n_terms"])
        rows.append(CheckRow("sum_lemma", params["name"], str(params["q"]),
                             mpc(res.s), res.n_terms, res.residual,
                             res.tail_radius,
                             res.residual < mpf("1e-12") and
                             res.tail_radius < mpf("1e-15")))
    elif kind == "twist_decomp":
        from .lseries import get_lseries
        from .twists import twist_decomposition_check
        res = twist_decomposition_check(get_lseries(params["name"]),
                                        params["p"],
                                        _parse_complex(params["s"]),
                                        params["n_terms"])
        rows.append(CheckRow("twist_decomp", params["name"], str(params["p"]),
                             mpc(res.s), res.n_terms, res.residual,
                             res.tail_radius, res.residual < mpf("1e-12")))
    elif kind == "expansion":
        from .lseries import get_lseries
        from .expansion import (build_tables, compute_C, ctable_series_oracle,
                                compute_V, save_tables, load_tables)
        f = get_lseries(params["name"])
        tables = build_tables(f.gamma, params["name"], params["nu_max"],
                              calibrate=False)
        c_a = compute_C(20)
        c_b = ctable_series_oracle(20)
        defect = mpf(max(abs(c_a[m, n] - c_b[m, n])
                         for m in range(1, 21) for n in range(m, 21)))
        c_a.assert_unitriangular_integral()
        deg_ok = all(len(tables.q_polys[nu].coeffs) - 1 == 2 * nu
                     for nu in range(1, params["nu_max"] + 1))
        cache_ok = True
        if params.get("cache_dir"):
            os.makedirs(params["cache_dir"], exist_ok=True)
            path = os.path.join(params["cache_dir"],
                                f"{params['name']}_nu{params['nu_max']}.exptable")
            if not os.path.exists(path):
                save_tables(path, tables)
            loaded = load_tables(path)
            cache_ok = all(loaded.q_polys[nu].coeffs == tables.q_polys[nu].coeffs
                           for nu in range(1, params["nu_max"] + 1))
        rows.append(CheckRow("expansion", params["name"], "0", mpc(0), 0,
                             defect, mpf(0),
                             defect == 0 and deg_ok and cache_ok))
    elif kind == "decay":
        from .lseries import get_lseries
        from .expansion import (build_tables, compute_C, asymptotic_residual_C,
                                asymptotic_residual_expV, q_assembly_residual)
        f = get_lseries(params["name"])
        tables = build_tables(f.gamma, params["name"],
                              max(params["m_max"], 6), calibrate=True)
        c_table = tables.c_table
        w = mpf(4000)
        s0 = mpc(2)
        shortfall = zero
        for m in range(1, params["m_max"] + 1):
            need = mpf(2) ** (m + 1) / 2
            r1 = asymptotic_residual_C(c_table, 1, m, w) / \
                asymptotic_residual_C(c_table, 1, m, 2 * w)
            r2 = asymptotic_residual_expV(tables, m, s0, w) / \
                asymptotic_residual_expV(tables, m, s0, 2 * w)
            r3 = q_assembly_residual(tables, m, s0, w) / \
                q_assembly_residual(tables, m, s0, 2 * w)
            for r in (r1, r2, r3):
                shortfall = max(shortfall, max(zero, (need - r) / need))
        rows.append(CheckRow("decay", params["name"], str(params["m_max"]),
                             s0, 0, shortfall, mpf(0), shortfall == 0))
    elif kind == "tau_search":
        from .kronecker import TauSearchSpec, tau_search
        from .arith import prime_factors
        from .dirichlet import unit_roots
        q, k = params["q"], params["k"]
        primes = prime_factors(q)
        roots = unit_roots(max(len(primes) * 3, 5))
        targets = {p: roots[i + 1] for i, p in enumerate(primes)}
        wit = tau_search(TauSearchSpec(q=q, targets=targets, k=k))
        rows.append(CheckRow("tau_search", "-", str(q), mpc(wit.tau), 0,
                             wit.max_error, mpf(1) / k, wit.passes))
    elif kind == "gk":
        from .extraction import gk_identity_check
        res = gk_identity_check(params["name"], params["q"],
                                _parse_complex(params["s"]),
                                mpf(params["tau"]), params["n_terms"])
        rows.append(CheckRow("gk", params["name"], str(params["q"]), res.s,
                             res.n_terms, res.residual, res.tail_radius,
                             res.passes))
    elif kind == "extraction":
        from .extraction import ExtractionSpec, extract_euler
        spec = ExtractionSpec(name=params["name"], p=params["p"],
                              m=params["m"],
                              s=complex(_parse_complex(params["s"])),
                              grid=params["grid"], k=params["k"],
                              n_terms=params["n_terms"])
        rep = extract_euler(spec)
        rows.append(CheckRow("extraction", params["name"], str(params["p"]),
                             mpc(spec.s), spec.n_terms, rep.error,
                             rep.gk_residual_max, rep.error < mpf("5e-2")))
    elif kind == "probe":
        from .probe import theorem2_probe
        alpha = _frac(params["alpha"])
        grid = [mpc(2, t) for t in params["t_grid"]]
        rep = theorem2_probe(params["name"], alpha, tuple(params["k_orders"]),
                             grid, params["n_terms"])
        q_tag = f"{alpha.numerator}/{alpha.denominator}"
        gate = mpf(2) ** -128
        rows.append(CheckRow("probe", params["name"], q_tag,
                             grid[-1], params["n_terms"],
                             rep.telescoping_max, gate,
                             rep.telescoping_max <= gate))
        if rep.collapse_residual is not None:
            rows.append(CheckRow("probe", params["name"], q_tag + ":collapse",
                                 mpc(6), params["n_terms"],
                                 rep.collapse_residual, mpf("1e-12"),
                                 rep.collapse_residual < mpf("1e-12")))
    elif kind == "mellin":
        from .mellin import mellin_smoothing_check
        fr = _frac(params["alpha"])
        res = mellin_smoothing_check(params["name"],
                                     _parse_complex(params["s"]),
                                     mpf(fr.numerator) / fr.denominator,
                                     mpf(params["big_x"]))
        rows.append(CheckRow("mellin", params["name"], params["big_x"], res.s,
                             res.nodes_used, res.residual,
                             res.tail_bound + res.doubling_shift, res.passes))
    else:
        raise CampaignError(f"unknown job kind {kind!r}")
    return rows


def _pool_entry(args):
    kind, params, precision_bits = args
    return run_job(kind, params, precision_bits)


def run_campaign(cfg: CampaignConfig, workers: int = 1) -> CampaignReport:
    """Run all configured checks; rows keep deterministic job order."""
    jobs = _jobs_for(cfg)
    report = CampaignReport(config=cfg)
    if workers <= 1:
        results = [run_job(kind, params, cfg.precision_bits)
                   for kind, params in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(
                _pool_entry,
                [(kind, params, cfg.precision_bits) for kind, params in jobs]))
    for rows in results:
        report.rows.extend(rows)
    return report
