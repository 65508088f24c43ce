"""Command-line entry point: analyze, reduce, scalarize, monodromy, bounds, verify, generate."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bounds
from .gauge import SplittingType
from .generate import InstanceProfile, default_profile, generate_instance
from .serialize import (
    SCHEMA,
    InputError,
    complex_to_json,
    dumps,
    matrix_to_json,
    point_from_json,
    point_to_json,
    system_from_json,
    system_to_json,
)
from .verify import VerifyOptions, run_verification, scalarization_json, tolerances

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_seeds(text: str) -> list[int]:
    """'0..99' (inclusive), '1,4,9' or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError("empty range")
            return list(range(lo, hi + 1))
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError as e:
        raise InputError(f"bad seed list {text!r}: {e}") from None


def _int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise InputError(f"expected comma separated integers, got {text!r}") from None


def _frac_list(text: str | None) -> list[Fraction]:
    if not text:
        return []
    try:
        return [Fraction(s) for s in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"expected comma separated rationals, got {text!r}") from None


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e}") from None


def _load_system(path: str):
    return system_from_json(_load_json(path))


def _options(args) -> VerifyOptions:
    return VerifyOptions(monodromy=getattr(args, "monodromy", False), tol=args.tol, precision=args.precision,
                         trunc=args.trunc)


def cmd_analyze(args) -> tuple[object, int]:
    rep = run_verification(_load_system(args.file), _options(args))
    return rep, EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_reduce(args):
    from .gauge import apply_gauge
    from .local import minimal_poincare_rank, moser_reduce

    S = _load_system(args.file)
    points = [point_from_json(args.point)] if args.point is not None else list(S.singular_locus)
    out = []
    ok = True
    for a in points:
        if not S.is_singular(a):
            raise InputError(f"{point_to_json(a)} is not a singular point")
        S2, G = moser_reduce(S, a)
        rank = S2.poincare_rank(a) if S2.is_singular(a) else 0
        minimal = minimal_poincare_rank(S, a)
        exact = apply_gauge(S, G) == S2
        ok = ok and exact and rank == minimal
        out.append({"point": point_to_json(a), "rank_before": S.poincare_rank(a), "rank_after": rank,
                    "minimal_rank": minimal, "gauge": matrix_to_json(G.gamma), "gauge_exact": exact,
                    "B": matrix_to_json(S2.B)})
    return {"schema": SCHEMA, "reductions": out}, EXIT_OK if ok else EXIT_FAIL


def cmd_scalarize(args):
    from .scalarize import scalarize_and_count

    rep = scalarize_and_count(_load_system(args.file), args.trunc)
    doc = {"schema": SCHEMA, **scalarization_json(rep), "findings": rep.findings}
    return doc, EXIT_OK if rep.bound_satisfied else EXIT_FAIL


def _complex_arg(text: str) -> complex:
    try:
        re, im = (float(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"base point must be 're,im', got {text!r}") from None
    return complex(re, im)


def cmd_monodromy(args):
    from .algebra.points import is_infinity
    from .numeric.monodromy import monodromy_rep

    S = _load_system(args.file)
    base = _complex_arg(args.base) if args.base else None
    rep = monodromy_rep(S, base=base, tol=args.tol, precision=args.precision)
    opts = VerifyOptions(tol=args.tol, precision=args.precision, relation_tol=args.relation_tol)
    doc = {
        "schema": SCHEMA,
        "tolerances": tolerances(opts),
        "base": complex_to_json(rep.base),
        "convention": rep.convention,
        "points": ["inf" if is_infinity(a) else complex_to_json(a) for a in rep.points],
        "matrices": [[[complex_to_json(x) for x in row] for row in G] for G in rep.matrices],
        "conditions": rep.conditions,
        "relation_residual": rep.residual,
    }
    return doc, EXIT_OK if rep.residual <= args.relation_tol else EXIT_FAIL


def cmd_bounds(args):
    ranks = _int_list(args.ranks)
    katz = _frac_list(args.katz)
    n = args.n if args.n is not None else len(ranks or katz)
    if args.p is None:
        raise InputError("--p is required")
    inp = bounds.BoundInputs(args.p, n, ranks, katz, args.M)
    if args.theorem1:
        return bounds.theorem1_bound(inp), EXIT_OK
    if args.remark2:
        return bounds.remark2_bound(inp), EXIT_OK
    if args.theorem2:
        return bounds.theorem2_bound(inp), EXIT_OK
    split = _int_list(args.splitting)
    if args.prop1:
        if not split:
            raise InputError("--prop1 needs --splitting")
        return bounds.prop1_check(SplittingType(tuple(split)), n, inp.R, args.M), EXIT_OK
    if args.formsO:
        if not split or args.r1 is None:
            raise InputError("--formsO needs --r1 and --splitting")
        return bounds.formsO_rank_bound(args.r1, SplittingType(tuple(split))), EXIT_OK
    if args.corollary1:
        if args.r0 is None or args.r is None:
            raise InputError("--corollary1 needs --r0 and --r")
        return bounds.corollary1_predicate(args.r0, args.r, args.p), EXIT_OK
    raise InputError("choose one of --theorem1 --remark2 --theorem2 --prop1 --formsO --corollary1")


def _verify_seed(job):
    seed, profile, options = job
    prof = InstanceProfile.from_json(profile, seed) if profile is not None else default_profile(seed)
    S = generate_instance(prof)
    rep = run_verification(S, options)
    return {"seed": seed, "profile": prof.to_json(), "passed": rep["passed"],
            "properties": rep["properties"], "findings": rep["findings"],
            "m": rep.get("scalarization", {}).get("m"), "report": rep}


def cmd_verify(args):
    seeds = parse_seeds(args.seeds)
    profile = _load_json(args.profile) if args.profile else None
    if profile is not None:
        try:
            InstanceProfile.from_json(profile, 0)
        except (TypeError, ValueError) as e:
            raise InputError(f"bad profile: {e}") from None
    options = _options(args)
    jobs = [(s, profile, options) for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_verify_seed, jobs))
    else:
        results = [_verify_seed(j) for j in jobs]
    results.sort(key=lambda r: r["seed"])
    if not args.full:
        for r in results:
            del r["report"]
    failed = [r["seed"] for r in results if not r["passed"]]
    doc = {"schema": SCHEMA, "tolerances": tolerances(options),
           "summary": {"total": len(results), "passed": len(results) - len(failed), "failed_seeds": failed},
           "instances": results}
    return doc, EXIT_OK if not failed else EXIT_FAIL


def cmd_generate(args):
    if args.profile:
        try:
            prof = InstanceProfile.from_json(_load_json(args.profile), args.seed)
        except (TypeError, ValueError) as e:
            raise InputError(f"bad profile: {e}") from None
    else:
        prof = default_profile(args.seed)
    S = generate_instance(prof)
    return {**system_to_json(S), "profile": prof.to_json()}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="singular-forge", description="Exact analysis of linear ODE systems with irregular singularities.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, numeric=False):
        p.add_argument("--json", action="store_true", help="JSON output (the default)")
        p.add_argument("--trunc", type=int, default=None, help="series truncation order")
        p.add_argument("--tol", type=float, default=None,
                       help="local truncation tolerance for numeric transport (default depends on precision)")
        p.add_argument("--precision", choices=("dd", "double"), default="dd",
                       help="working precision of numeric transport")
        if numeric:
            p.add_argument("--relation-tol", type=float, default=1e-8)

    p = sub.add_parser("analyze", help="full report for one system")
    p.add_argument("file")
    p.add_argument("--monodromy", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("reduce", help="Moser reduction at one or all singular points")
    p.add_argument("file")
    p.add_argument("--point", default=None, help="exact point such as '0', '1/2' or 'inf'")
    common(p)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("scalarize", help="cyclic vector, scalar equation and apparent points")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_scalarize)

    p = sub.add_parser("monodromy", help="numeric monodromy representation")
    p.add_argument("file")
    p.add_argument("--base", default=None, help="base point 're,im'")
    common(p, numeric=True)
    p.set_defaults(fn=cmd_monodromy)

    p = sub.add_parser("bounds", help="closed-form bound calculators")
    for flag in ("--theorem1", "--remark2", "--theorem2", "--prop1", "--formsO", "--corollary1"):
        p.add_argument(flag, action="store_true")
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--ranks", help="comma separated Poincare ranks, first point first")
    p.add_argument("--katz", help="comma separated Katz ranks (rationals)")
    p.add_argument("--splitting", help="comma separated splitting type, weakly decreasing")
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--r1", type=int)
    p.add_argument("--r0", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("verify", help="run the verification pipeline over seeded instances")
    p.add_argument("--seeds", default="0..99")
    p.add_argument("--profile", default=None, help="InstanceProfile JSON; seeds override its seed")
    p.add_argument("--monodromy", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--full", action="store_true", help="embed full per-instance reports")
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("generate", help="emit a seeded instance as JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_generate)
    return ap


def _error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def main(argv=None) -> int:
    from .bounds import PreconditionError

    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        _error("usage", str(e))
        return EXIT_INPUT
    try:
        doc, code = args.fn(args)
    except (InputError, PreconditionError) as e:
        _error(type(e).__name__, str(e))
        return EXIT_INPUT
    except ValueError as e:
        _error("ValueError", str(e))
        return EXIT_INPUT
    sys.stdout.write(dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
