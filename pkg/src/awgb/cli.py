"""Command-line front end.

    awgb relations --n N [--aw] [--format text|json]
    awgb gb build --n N --max-degree D [--aw]
    awgb reduce --n N --expr S [--aw] [--max-degree D]
    awgb verify --n N --suite SUITE [--max-degree D] [--format text|json]
    awgb parse-check --n N --expr S [--aw]

Exit status: 0 verified / in the ideal, 2 inconclusive, 1 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import __version__
from .errors import AwgbError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

SUITES = ("freealg", "lemmas", "morphisms", "braid", "inverse", "iso")
DEFAULT_MAXDEG = {"lemmas": 5, "morphisms": 6, "braid": 6, "inverse": 6, "iso": 6, "freealg": 6}
DEFAULT_CAP = 8
DEFAULT_CACHE = ".awgb"


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_positive, required=True, help="matrix size / rank")
    common.add_argument("--aw", action="store_true", help="use the aw(n) presentation on C[..] letters")
    common.add_argument("--budget-seconds", type=float, default=None, help="wall-clock budget for completion")
    common.add_argument("--cache-dir", default=None,
                        help=f"rewrite-system cache (default $AWGB_CACHE or {DEFAULT_CACHE})")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")

    p = argparse.ArgumentParser(prog="awgb", description="Exact computations in the algebra A(n) and aw(n).")
    p.add_argument("--version", action="version", version=f"awgb {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    r = sub.add_parser("relations", parents=[common], help="print the defining relations")
    r.add_argument("--format", choices=("text", "json"), default="text")

    gb = sub.add_parser("gb", help="rewrite-system management")
    gbsub = gb.add_subparsers(dest="action", required=True)
    b = gbsub.add_parser("build", parents=[common], help="complete through a degree and cache the result")
    b.add_argument("--max-degree", type=_positive, required=True)

    red = sub.add_parser("reduce", parents=[common], help="normal form and membership verdict of an expression")
    red.add_argument("--expr", required=True)
    red.add_argument("--max-degree", type=_positive, default=6)
    red.add_argument("--cap", type=_positive, default=None, help="escalation cap (default: no escalation)")

    v = sub.add_parser("verify", parents=[common], help="run a verification battery")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--max-degree", type=_positive, default=None)
    v.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="escalation cap")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--no-timings", action="store_true", help="report 0 seconds for every item")
    v.add_argument("--residuals", action="store_true", help="include residuals in JSON output")
    v.add_argument("--seed", type=int, default=0, help="seed for the freealg samples")
    v.add_argument("--boundary", choices=("unit", "zero"), default="unit",
                   help="reading of entries a[k,k-1] in the lemma fixtures")
    v.add_argument("--moved-only", action="store_true",
                   help="braid: check distant pairs only on generators one of the maps moves")
    v.add_argument("--distant-only", action="store_true", help="braid: skip the adjacent relations")

    pc = sub.add_parser("parse-check", parents=[common], help="parse, print canonically and reparse")
    pc.add_argument("--expr", required=True)
    return p


def _cache_dir(args) -> Optional[str]:
    if args.no_cache:
        return None
    return args.cache_dir or os.environ.get("AWGB_CACHE") or DEFAULT_CACHE


def _relations(args):
    if args.aw:
        from .awside import aw_relations
        return aw_relations(args.n)
    from .presentation import relations
    return relations(args.n)


def _alphabet(args):
    from .ncpoly import alphabet
    return alphabet("C" if args.aw else "A", args.n)


def cmd_relations(args, out) -> int:
    rels = _relations(args)
    if args.format == "json":
        doc = {"n": args.n, "relations": [{"name": name, "degree": p.degree(), "text": str(p)} for name, p in rels]}
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        for name, p in rels:
            out.write(f"{name}: {p}\n")
    return EXIT_OK


def cmd_gb_build(args, out) -> int:
    import time
    from .errors import BudgetExhausted
    from .ideal import cache_path, cached_system, save_to_cache

    cache = _cache_dir(args)
    rels = _relations(args)
    deadline = time.monotonic() + args.budget_seconds if args.budget_seconds is not None else None
    try:
        s = cached_system(rels, args.max_degree, cache, deadline=deadline)
    except BudgetExhausted as e:
        s = e.system
        if cache is not None and s is not None:
            save_to_cache(s, cache)
        out.write(f"budget exhausted: complete_upto={s.complete_upto if s else 0}\n")
        return EXIT_INCONCLUSIVE
    out.write(f"rules {len(s)}  complete_upto {s.complete_upto}  pending {s.pending_degrees()[:5]}\n")
    if cache is not None:
        out.write(f"cached at {cache_path(cache, rels.alph.kind, rels.alph.n, rels.provenance())}\n")
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    from .ideal import IdealOracle
    from .parser import parse_expr

    p = parse_expr(args.expr, _alphabet(args))
    oracle = IdealOracle(_relations(args), args.max_degree, cap=args.cap, budget=args.budget_seconds,
                         cache_dir=_cache_dir(args))
    v = oracle.member(p)
    out.write(f"normal form: {v.residual}\n")
    out.write(f"verdict: {v.status} (complete_upto {oracle.complete_upto})\n")
    return EXIT_OK if v.in_ideal else EXIT_INCONCLUSIVE


def cmd_parse_check(args, out) -> int:
    from .parser import parse_expr

    alph = _alphabet(args)
    p = parse_expr(args.expr, alph)
    text = str(p)
    again = parse_expr(text, alph)
    out.write(text + "\n")
    if again != p:
        sys.stderr.write("error: canonical form does not reparse to the same polynomial\n")
        return EXIT_ERROR
    return EXIT_OK


def run_suite(suite: str, n: int, maxdeg: int, cap: int = DEFAULT_CAP, budget: Optional[float] = None,
              cache_dir=None, seed: int = 0, boundary: str = "unit", moved_only: bool = False,
              distant_only: bool = False):
    """Run one battery and return its Report."""
    from .ideal import IdealOracle
    from .presentation import relations

    if suite == "freealg":
        from .identities import check_free_algebra
        return check_free_algebra(seed=seed, n=max(n, 2))
    if suite == "iso":
        from .awside import check_isomorphism
        return check_isomorphism(n, maxdeg, budget=budget, cap=cap, cache_dir=cache_dir)
    if suite == "braid":
        from .morphisms import check_braid
        return check_braid(n, maxdeg, budget=budget, cap=cap, adjacent=not distant_only, inverses=False,
                           moved_only=moved_only, cache_dir=cache_dir)
    oracle = IdealOracle(relations(n), maxdeg, cap=cap, budget=budget, cache_dir=cache_dir)
    if suite == "lemmas":
        from .presentation import check_lemmas
        return check_lemmas(n, oracle, boundary)
    if suite == "inverse":
        from .morphisms import check_inverses
        return check_inverses(n, oracle)
    if suite == "morphisms":
        from .morphisms import check_homomorphism, maps_for
        from .report import Report
        rels = relations(n)
        rep = Report("morphisms", n, maxdeg)
        for d, dp in maps_for(n):
            rep.extend(check_homomorphism(d, rels, oracle, "delta_i is an endomorphism"))
            rep.extend(check_homomorphism(dp, rels, oracle, "delta_i' is an endomorphism"))
        rep.maxdeg = oracle.sys.maxdeg
        rep.complete_upto = oracle.complete_upto
        return rep
    raise ValueError(f"unknown suite {suite!r}")


def cmd_verify(args, out) -> int:
    if args.aw:
        raise AwgbError("verify works on A(n); the iso suite covers aw(n)")
    maxdeg = args.max_degree or DEFAULT_MAXDEG[args.suite]
    rep = run_suite(args.suite, args.n, maxdeg, cap=max(args.cap, maxdeg), budget=args.budget_seconds,
                    cache_dir=_cache_dir(args), seed=args.seed, boundary=args.boundary,
                    moved_only=args.moved_only, distant_only=args.distant_only)
    if args.format == "json":
        out.write(rep.to_json(timings=not args.no_timings, residuals=args.residuals))
    else:
        out.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_INCONCLUSIVE


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; 2 means inconclusive here
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR
    handlers = {"relations": cmd_relations, "reduce": cmd_reduce, "verify": cmd_verify,
                "parse-check": cmd_parse_check}
    try:
        if args.verb == "gb":
            return cmd_gb_build(args, out)
        return handlers[args.verb](args, out)
    except (AwgbError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
