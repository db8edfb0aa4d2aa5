"""Command-line front end.

Exit codes: 0 ok, 2 invalid input, 3 budget refusal, 4 audit discrepancy.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time

from . import __version__
from .census import CheckpointError, census_run, scan_high_multiplicity
from .counter import DEFAULT_BUDGET, BudgetExceeded, count_exact, order_classes, sum_via_counts, sum_via_simplex
from .propositions import AUDITS, CONFIRMED

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_AUDIT = 0, 2, 3, 4


class UsageError(ValueError):
    pass


def natural(text: str) -> int:
    """Parse an exact nonnegative decimal integer of any length."""
    text = text.strip().replace("_", "")
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"not a nonnegative integer: {text!r}")
    return int(text)


def default_budget() -> int:
    env = os.environ.get("SIMPLEX_CENSUS_BUDGET")
    return natural(env) if env else DEFAULT_BUDGET


def _parts(w) -> str:
    return " ".join(map(str, w.parts))


def cmd_count(args):
    if args.a <= 1:
        raise UsageError(
            f"a must be > 1; a = 1 occurs infinitely often as a multinomial coefficient"
            if args.a == 1 else "a must be > 1"
        )
    rep = count_exact(args.a, args.k, args.budget, args.jobs)
    rows = [{"a": str(rep.a), "k": rep.k, "N": rep.total,
             "witnesses": ";".join(f"{_parts(w)}:{w.orbit}" for w in rep.witnesses)}]
    return {"a": str(args.a), "k": args.k}, rep.as_dict(), rows, EXIT_OK


def cmd_census(args):
    h = census_run(
        args.k, args.layers, jobs=args.jobs, checkpoint_dir=args.checkpoint_dir,
        resume=args.resume, checkpoint_every=args.checkpoint_every, budget=args.budget,
    )
    rows = [{"multiplicity": m, "count": c} for m, c in sorted(h.by_multiplicity.items())]
    return {"k": args.k, "layers": args.layers}, h.as_dict(), rows, EXIT_OK


def cmd_scan(args):
    hits = scan_high_multiplicity(args.k, args.cap, args.threshold, args.budget)
    result = [
        {"a": str(h.a), "multiplicity": h.multiplicity,
         "witnesses": [{"parts": list(w.parts), "orbit": w.orbit} for w in h.witnesses]}
        for h in hits
    ]
    rows = [{"a": str(h.a), "multiplicity": h.multiplicity,
             "witnesses": ";".join(_parts(w) for w in h.witnesses)} for h in hits]
    params = {"k": args.k, "cap": str(args.cap), "threshold": args.threshold}
    return params, result, rows, EXIT_OK


def cmd_sumcheck(args):
    by_counts = sum_via_counts(args.M, args.k, args.budget)
    sc = sum_via_simplex(args.M, args.k, args.budget)
    result = {
        "sum_via_counts": str(by_counts),
        "sum_via_simplex": str(sc.total),
        "agree": by_counts == sc.total,
        "trivial_family": str(sc.trivial_family),
        "nontrivial": str(sc.nontrivial),
        "main_term": str(sc.main_term),
        "residual": str(sc.residual),
    }
    code = EXIT_OK if by_counts == sc.total else EXIT_AUDIT
    return {"M": str(args.M), "k": args.k}, result, [result], code


def cmd_orders(args):
    oc = order_classes(args.M, args.k, args.budget)
    result = {"f": oc.f, "g": oc.g, "h": oc.h}
    return {"M": str(args.M), "k": args.k}, result, [result], EXIT_OK


def cmd_audit(args):
    name = args.name
    if name == "prop2":
        params = {"k": args.k or 4, "x": args.x or 10**6}
        rep = AUDITS[name](params["k"], params["x"], budget=args.budget)
    elif name in ("prop3", "prop4"):
        params = {"k": args.k or (4 if name == "prop3" else 7),
                  "m": args.m or (28 if name == "prop3" else 72)}
        if args.extras:
            params["extras"] = [int(e) for e in args.extras.split(",")]
        try:
            rep = AUDITS[name](budget=args.budget, **params)
        except ValueError as e:
            raise UsageError(str(e)) from e
    elif name == "fibonacci":
        params = {"up_to": args.i or 4}
        rep = AUDITS[name](**params)
    elif name == "large-values":
        params = {}
        rep = AUDITS[name](budget=args.budget)
    else:
        params = {}
        rep = AUDITS[name]()
    d = rep.as_dict()
    rows = [{"name": rep.name, "status": rep.status,
             "claimed_bound": rep.claimed_bound, "achieved_bound": rep.achieved_bound,
             "findings": ";".join(rep.findings)}]
    code = EXIT_OK if rep.status == CONFIRMED else EXIT_AUDIT
    return {"name": name, **{k: str(v) if isinstance(v, int) else v for k, v in params.items()}}, d, rows, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=natural, default=None,
                        help="node budget (default 10^9, or $SIMPLEX_CENSUS_BUDGET)")
    common.add_argument("--checkpoint-dir", default=None)
    common.add_argument("--resume", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ksimplex", description="Repetitions of multinomial coefficients")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="exact N_k(a) with witnesses")
    p.add_argument("--a", type=natural, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("census", parents=[common], help="multiplicity histogram of layers 0..n-1")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--layers", type=int, required=True)
    p.add_argument("--checkpoint-every", type=int, default=None)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("scan", parents=[common], help="values up to a cap with N_k(a) >= threshold")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=natural, required=True)
    p.add_argument("--threshold", type=int, required=True)
    p.set_defaults(func=cmd_scan)

    for name, func in (("sumcheck", cmd_sumcheck), ("orders", cmd_orders)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--M", type=natural, required=True)
        p.add_argument("--k", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("audit", parents=[common], help="verify a construction")
    p.add_argument("name", choices=sorted(AUDITS))
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--x", type=natural)
    p.add_argument("--i", type=int, help="fibonacci: check indices 1..i")
    p.add_argument("--extras", help="comma-separated extra parts")
    p.set_defaults(func=cmd_audit)
    return parser


def _emit(args, params, result, rows, elapsed_ms, out) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        fields = list(rows[0]) if rows else ["result"]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
        return
    doc = {
        "command": args.command,
        "params": params,
        "result": result,
        "elapsed_ms": elapsed_ms,
        "version": __version__,
    }
    out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    if args.budget is None:
        args.budget = default_budget()
    if getattr(args, "k", None) is not None and args.k < 2:
        print("error: k must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        params, result, rows, code = args.func(args)
    except BudgetExceeded as e:
        print(f"budget refused: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, CheckpointError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    _emit(args, params, result, rows, elapsed_ms, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
