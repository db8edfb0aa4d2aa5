#!/usr/bin/env python3
"""Recompute every numerical claim checked by the package and write a JSON summary.

Usage:
    python scripts/reproduce_claims.py                 # prints summary
    python scripts/reproduce_claims.py --out claims.json --jobs 4
"""
import argparse
import json
import time

from ksimplex.census import census_run, scan_high_multiplicity
from ksimplex.counter import count_exact, order_classes, sum_via_counts, sum_via_simplex
from ksimplex.propositions import AUDITS


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, round(time.perf_counter() - t, 3)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="write JSON here instead of stdout")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    summary = {}
    h, s = timed(census_run, 2, 1000, jobs=args.jobs)
    summary["triangle_1000"] = {**h.as_dict(), "seconds": s}
    h, s = timed(census_run, 3, 250, jobs=args.jobs)
    summary["pyramid_250"] = {**h.as_dict(), "seconds": s}

    hits, s = timed(scan_high_multiplicity, 2, 10**5, 6)
    summary["six_fold_up_to_1e5"] = {"values": [x.a for x in hits], "seconds": s}
    summary["N_2(3003)"] = count_exact(3003, 2).total

    for M, k in ((10**4, 2), (10**4, 3)):
        sc = sum_via_simplex(M, k)
        oc = order_classes(M, k)
        summary[f"sums_M{M}_k{k}"] = {
            "via_counts": sum_via_counts(M, k),
            "via_simplex": sc.total,
            "residual": sc.residual,
            "average": sc.total / M,
            "f": oc.f, "g": oc.g, "h": oc.h,
        }

    for name in ("identities", "prop2", "prop3", "prop4", "large-values", "fibonacci"):
        rep, s = timed(AUDITS[name])
        d = rep.as_dict()
        if name == "prop2":
            d["details"].pop("members")
        summary[f"audit_{name}"] = {**d, "seconds": s}

    text = json.dumps(summary, indent=2, default=str, ensure_ascii=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    main()
