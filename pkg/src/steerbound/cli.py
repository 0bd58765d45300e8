"""Command-line front end: ``steerbound {validate,beta0,bound,lhs,grid,case,lemma-check}``."""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import cases
from .bounds import corrected_bound, corrected_bound_equal_eps
from .config import ENUMERATION_CAP
from .dominance import dominance_sweep
from .io import SpecError, load_grid, load_inequality
from .scenario import EnumerationInfeasible, beta0_exact, chi
from .seesaw import seesaw_lower_bound
from .targets import check_mub

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_MISMATCH = 0, 2, 3, 4


def _fmt(v):
    # repr keeps full precision and always uses '.' as decimal separator
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


def emit(records, fmt, out=None):
    out = out or sys.stdout
    if isinstance(records, dict):
        records = [records]
    if fmt == "json":
        out.write(json.dumps(records[0] if len(records) == 1 else records, indent=2) + "\n")
        return
    keys = list(records[0])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    for r in records:
        w.writerow([json.dumps(r[k]) if isinstance(r[k], (list, dict)) else _fmt(r[k]) for k in keys])
    out.write(buf.getvalue())


def _load(path):
    spec = load_inequality(path)
    return spec, spec.functional(), spec.target_measurements()


def cmd_validate(args):
    try:
        spec = load_inequality(args.spec)
        f = spec.functional()
        print("ok: coefficients nonnegative, indices in range")
        t = spec.target_measurements()
        t.check_compatible(f)
        print("ok: targets unit norm and cover every weighted (b, y)")
        spec.imprecision()
        print("ok: imprecisions in [0, 1]")
    except (SpecError, ValueError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if spec.claims_mub():
        if not check_mub(_family_of(t)):
            print("invalid: targets are labelled MUB but fail the unbiasedness check", file=sys.stderr)
            return EXIT_INVALID
        print("valid; MUB check passed")
    else:
        print("valid")
    return EXIT_OK


def _family_of(t):
    from .targets import BasisFamily
    return BasisFamily(t.dim, tuple(tuple(row) for row in t.kets))


def cmd_beta0(args):
    spec, f, t = _load(args.spec)
    res = beta0_exact(f, t, cap=args.cap)
    rec = res.as_record()
    if f.back_map:
        rec["correlator_value"] = f.to_correlator(res.value)
    emit(rec, args.output)
    return EXIT_OK


def _beta0_for(spec, f, t, cap):
    return spec.beta0 if spec.beta0 is not None else beta0_exact(f, t, cap=cap).value


def cmd_bound(args):
    spec, f, t = _load(args.spec)
    eps = spec.imprecision()
    beta0 = _beta0_for(spec, f, t, args.cap)
    res = corrected_bound(f, beta0, eps)
    rec = res.as_record()
    mask = f.support()
    if eps.is_uniform_on(mask):
        closed = corrected_bound_equal_eps(beta0, chi(f), float(eps.eps[mask][0]))
        rec["closed_form_value"] = closed.value
    if f.back_map:
        rec["correlator_value"] = f.to_correlator(res.value)
    emit(rec, args.output)
    return EXIT_OK


def cmd_lhs(args):
    spec, f, t = _load(args.spec)
    s = seesaw_lower_bound(f, t, spec.imprecision(), restarts=args.restarts, seed=args.seed,
                           cap=args.cap, heuristic=args.heuristic, projective=args.projective)
    rec = s.as_record()
    if f.back_map:
        rec["correlator_value"] = f.to_correlator(s.value)
    emit(rec, args.output)
    return EXIT_OK


def cmd_grid(args):
    grid = load_grid(args.grid)
    rows = cases.grid_rows(grid, seed=args.seed, restarts=args.restarts)
    emit([dict(zip(("eps1", "eps2", "upper", "lower", "gap"), r)) for r in rows], args.output)
    return EXIT_OK


def cmd_case(args):
    kwargs = {"seed": args.seed, "restarts": args.restarts}
    if args.name == "grid-d3-7-11" and args.size:
        kwargs["size"] = args.size
    rows = cases.CASES[args.name](**kwargs)
    failed = [r for r in rows if not r[4]]
    print(f"{'check':<58} {'reference':>14} {'computed':>22} {'tol':>8}  result")
    for label, ref, comp, tol, ok in rows:
        ref_s = "-" if ref is None else f"{ref:.6g}"
        print(f"{label:<58} {ref_s:>14} {comp:>22.15g} {tol:>8.0e}  {'PASS' if ok else 'FAIL'}")
    if failed:
        print(f"FAILED: {failed[0][0]}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_lemma_check(args):
    worst, res = dominance_sweep(args.samples, seed=args.seed)
    emit({"samples": args.samples, "worst_min_eig": worst, "worst_witness_residual": res,
          "passed": worst >= -1e-9 and res <= 1e-9}, args.output)
    return EXIT_OK if worst >= -1e-9 and res <= 1e-9 else EXIT_MISMATCH


def build_parser():
    p = argparse.ArgumentParser(prog="steerbound",
                                description="Steering bounds with imprecise trusted measurements.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv"), default=None,
                        help="record format (default: csv for grid, json otherwise)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int, default=20)
    common.add_argument("--cap", type=int, default=ENUMERATION_CAP)
    common.add_argument("--heuristic", action="store_true",
                        help="greedy search over Alice responses when enumeration exceeds --cap")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check an inequality file")
    s.add_argument("spec")
    s.set_defaults(func=cmd_validate)
    for name, func, help_ in (("beta0", cmd_beta0, "exact ideal LHS bound"),
                              ("bound", cmd_bound, "imprecision-corrected upper bound"),
                              ("lhs", cmd_lhs, "seesaw lower bound from an explicit strategy")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("spec")
        if name == "lhs":
            s.add_argument("--projective", action="store_true",
                           help="complete projective qubit lab measurements")
        s.set_defaults(func=func)
    s = sub.add_parser("grid", parents=[common], help="upper/lower bounds over an (eps1, eps2) grid")
    s.add_argument("grid")
    s.set_defaults(func=cmd_grid, default_output="csv")
    s = sub.add_parser("case", parents=[common], help="run a scripted case study")
    s.add_argument("name", choices=sorted(cases.CASES))
    s.add_argument("--size", type=int, default=None, help="grid points per axis for grid-d3-7-11")
    s.set_defaults(func=cmd_case)
    s = sub.add_parser("lemma-check", parents=[common], help="random dominance-bound sweep")
    s.add_argument("--samples", type=int, default=1000)
    s.set_defaults(func=cmd_lemma_check)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.output is None:
        args.output = getattr(args, "default_output", "json")
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EnumerationInfeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
