"""Command-line front end.

Every numeric report starts with a precision-tagged header; all values are
printed in decimal at the working precision.  Exit codes: 0 on success (and
all checks passing), 1 on a failed check, 2 on usage or config errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from mpmath import mp, mpf, mpc, nstr

from . import __version__


def _header(title: str) -> str:
    digits = mp.dps
    return (f"# {title}\n"
            f"# precision: {mp.prec} bits (~{digits} decimal digits)")


def _num(x, digits=None) -> str:
    return nstr(x, digits or min(mp.dps, 40))


def _parse_s(tok: str) -> mpc:
    """Accept 're,im', plain real, or 'a+bi' forms."""
    tok = tok.strip()
    if "," in tok:
        re_part, _, im_part = tok.partition(",")
        return mpc(mpf(re_part.strip()), mpf(im_part.strip()))
    return mpc(complex(tok.replace("i", "j")))


def _cmd_invariants(args) -> int:
    from .gamma_data import invariants, h_invariant
    from .lseries import get_lseries
    f = get_lseries(args.name)
    inv = invariants(f.gamma)
    print(_header(f"invariants: {args.name}"))
    print(f"degree      = {_num(inv.degree)}")
    print(f"conductor   = {_num(inv.conductor)}")
    print(f"omega       = {_num(inv.omega)}")
    print(f"omega_star  = {_num(inv.omega_star)}")
    print(f"xi          = {_num(inv.xi)}")
    print(f"eta         = {_num(inv.eta)}")
    print(f"theta       = {_num(inv.theta)}")
    print(f"tau_gamma   = {_num(inv.tau)}")
    for n in range(0, args.h_max + 1):
        print(f"H({n})        = {_num(h_invariant(f.gamma, n))}")
    return 0


def _cmd_check(args) -> int:
    from .campaign import run_job, rows_to_csv
    kind = args.what.replace("-", "_")
    params = {"name": args.name, "n_terms": args.n_terms}
    if kind == "sum_lemma":
        params.update(q=args.q, s=args.s)
    elif kind == "twist_decomp":
        params.update(p=args.p if args.p else args.q, s=args.s)
    elif kind == "gk":
        params.update(q=args.q, s=args.s, tau=args.tau)
    elif kind == "mellin":
        params.update(s=args.s, alpha=args.alpha, big_x=args.big_x)
    rows = run_job(kind, params, mp.prec)
    print(_header(f"check {args.what}"))
    print(rows_to_csv(rows), end="")
    return 0 if all(r.ok for r in rows) else 1


def _cmd_expansion(args) -> int:
    from .expansion import build_tables, save_tables
    from .lseries import get_lseries
    f = get_lseries(args.name)
    tables = build_tables(f.gamma, args.name, args.nu_max)
    print(_header(f"expansion tables: {args.name}, nu <= {args.nu_max}"))
    if args.emit == "cache":
        path = args.out or f"{args.name}_nu{args.nu_max}.exptable"
        save_tables(path, tables)
        print(f"# wrote {path}")
        return 0
    if args.emit == "csv":
        print("kind,index,coeff_index,re,im")
        # r_polys and v_polys are 1-indexed with a None placeholder at 0
        for label, polys in (("R", tables.r_polys), ("V", tables.v_polys)):
            for i, poly in enumerate(polys[1:], start=1):
                for j, coef in enumerate(poly.coeffs):
                    print(f"{label},{i},{j},{_num(mpf(coef.real), 30)},"
                          f"{_num(mpf(coef.imag), 30)}")
        for i, poly in enumerate(tables.q_polys):
            for j, coef in enumerate(poly.coeffs):
                print(f"Q,{i},{j},{_num(mpf(coef.real), 30)},"
                      f"{_num(mpf(coef.imag), 30)}")
        return 0
    for i, poly in enumerate(tables.r_polys[1:], start=1):
        print(f"R_{i}: degree {len(poly.coeffs) - 1}")
    for i, poly in enumerate(tables.q_polys):
        print(f"Q_{i}: degree {len(poly.coeffs) - 1}")
    if tables.calib:
        print(f"calibration: c' = {_num(tables.calib['cprime'], 8)}, "
              f"A = {_num(tables.calib['A'], 8)}")
    return 0


def _cmd_tau_search(args) -> int:
    from .arith import prime_factors
    from .kronecker import SearchBoundExceeded, TauSearchSpec, tau_search
    primes = prime_factors(args.q)
    eps_tokens = [t.strip() for t in args.eps.split(",") if t.strip()]
    if len(eps_tokens) != len(primes):
        print(f"error: q={args.q} has primes {primes}; --eps needs "
              f"{len(primes)} comma-separated values", file=sys.stderr)
        return 2
    targets = {p: mpc(complex(t.replace("i", "j")))
               for p, t in zip(primes, eps_tokens)}
    spec = TauSearchSpec(q=args.q, targets=targets, k=args.k,
                         bound=args.bound)
    print(_header(f"tau-search: q={args.q}, k={args.k}"))
    try:
        wit = tau_search(spec)
    except SearchBoundExceeded as exc:
        wit = exc.best
        print(f"# search bound exhausted; best witness follows")
        _print_witness(wit, primes)
        return 1
    _print_witness(wit, primes)
    return 0


def _print_witness(wit, primes) -> None:
    print(f"tau          = {_num(wit.tau)}")
    print(f"lattice m    = {wit.lattice_index}")
    if wit.window:
        print(f"cf window    = {wit.window}")
    for p in primes:
        print(f"error at {p:>3} = {_num(wit.errors[p], 8)}")
    print(f"max error    = {_num(wit.max_error, 8)}  "
          f"(bound 1/k = {_num(mpf(1) / wit.k, 8)})")


def _cmd_extract_euler(args) -> int:
    from .extraction import ExtractionSpec, extract_euler
    spec = ExtractionSpec(name=args.name, p=args.p, m=args.m,
                          s=complex(_parse_s(args.s)), grid=args.grid,
                          k=args.k, n_terms=args.n_terms)
    rep = extract_euler(spec)
    print(_header(f"extract-euler: {args.name}, p={args.p}, m={args.m}"))
    print(f"estimate    = {_num(rep.estimate)}")
    print(f"reference   = {_num(rep.truth)}")
    print(f"error       = {_num(rep.error, 8)}")
    print(f"tau quality = {_num(rep.tau_quality, 8)}")
    print(f"gk residual = {_num(rep.gk_residual_max, 8)}")
    print(f"elapsed     = {rep.elapsed:.2f}s")
    return 0 if rep.error < mpf("5e-2") else 1


def _cmd_probe(args) -> int:
    from .probe import theorem2_probe
    alpha = Fraction(args.alpha)
    t_grid = [t for t in (1, 2, 5, 10, 20, 35, 50) if t <= args.t_max]
    if len(t_grid) < 2:
        t_grid = [args.t_max / 2, args.t_max]
    grid = [mpc(args.sigma, t) for t in t_grid]
    rep = theorem2_probe(args.name, alpha, (args.K,), grid, args.n_terms)
    print(_header(f"probe-theorem2: {args.name}, alpha={alpha}, K={args.K}"))
    print(f"telescoping max = {_num(rep.telescoping_max, 8)}  "
          f"(gate 2^-128 = {_num(mpf(2) ** -128, 4)})")
    for k, (slope, intercept) in sorted(rep.fits.items()):
        print(f"growth fit K={k}: |H_K| ~ (1+t)^{slope:.3f}, "
              f"calibrated bound exponent {rep.calibrated_exponent[k]:.3f}")
    if rep.collapse_residual is not None:
        print(f"collapse residual = {_num(rep.collapse_residual, 8)}")
    for pt in rep.points:
        print(f"  s = {_num(pt.s, 8)}: |H_K| = {_num(abs(pt.h_values[args.K]), 8)}")
    return 0 if rep.passes else 1


def _cmd_campaign(args) -> int:
    from .campaign import (CampaignError, default_config, parse_config,
                           run_campaign, rows_to_csv)
    try:
        cfg = parse_config(args.config) if args.config else default_config()
    except CampaignError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    mp.prec = cfg.precision_bits
    try:
        report = run_campaign(cfg, workers=args.workers)
    except CampaignError as exc:
        print(f"campaign error: {exc}", file=sys.stderr)
        return 2
    csv = rows_to_csv(report.rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv)
        print(_header("campaign"))
        print(f"# wrote {args.out}: {len(report.rows)} rows, "
              f"all_pass={report.all_pass}")
    else:
        print(_header("campaign"))
        print(csv, end="")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="twistlab",
        description="High-precision invariants, expansion polynomials and "
                    "twist identities for degree-2 L-functions.")
    ap.add_argument("--bits", type=int, default=256,
                    help="working precision in bits (default 256)")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="print the invariant suite")
    p.add_argument("name")
    p.add_argument("--h-max", type=int, default=4)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("check", help="run one identity check")
    p.add_argument("what", choices=["sum-lemma", "twist-decomp", "gk", "mellin"])
    p.add_argument("--name", required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--s", default="2")
    p.add_argument("--tau", default="0")
    p.add_argument("--alpha", default="1/3")
    p.add_argument("--big-x", default="10")
    p.add_argument("--n-terms", type=int, default=1 << 16)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("expansion", help="build expansion tables")
    p.add_argument("--name", required=True)
    p.add_argument("--nu-max", type=int, required=True)
    p.add_argument("--emit", choices=["csv", "cache"], default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_expansion)

    p = sub.add_parser("tau-search", help="find a simultaneous phase witness")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--eps", required=True,
                   help="comma list of unit-circle targets, one per prime of q")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bound", type=float, default=1e9)
    p.set_defaults(func=_cmd_tau_search)

    p = sub.add_parser("extract-euler", help="torus-average an Euler coefficient")
    p.add_argument("--name", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", default="2,0", help="complex s as 're,im'")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--k", type=int, default=50)
    p.add_argument("--n-terms", type=int, default=1 << 16)
    p.set_defaults(func=_cmd_extract_euler)

    p = sub.add_parser("probe-theorem2", help="main-term defect probe")
    p.add_argument("--name", required=True)
    p.add_argument("--alpha", required=True, help="rational alpha as p/q")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--sigma", type=float, default=2.0)
    p.add_argument("--n-terms", type=int, default=1 << 16)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("campaign", help="run a configured check campaign")
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_campaign)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    mp.prec = args.bits
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
