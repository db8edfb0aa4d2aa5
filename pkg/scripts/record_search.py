#!/usr/bin/env python3
"""List the values up to a cap with the largest N_k(a), for a few k.

Usage:
    python scripts/record_search.py --cap 1e12 --k 2 3 4 --top 10
"""
import argparse

from ksimplex.census import scan_high_multiplicity


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cap", type=float, default=1e9)
    parser.add_argument("--k", type=int, nargs="+", default=[2, 3, 4])
    parser.add_argument("--top", type=int, default=10)
    args = parser.parse_args()
    cap = int(args.cap)

    for k in args.k:
        hits = scan_high_multiplicity(k, cap, k * (k - 1) + 1)
        hits.sort(key=lambda h: (-h.multiplicity, h.a))
        print(f"k={k}, a <= {cap}: {len(hits)} values above the generic k(k-1) = {k * (k - 1)}")
        for h in hits[: args.top]:
            parts = "  ".join("(" + ",".join(map(str, w.parts)) + ")" for w in h.witnesses)
            print(f"  N={h.multiplicity:<5d} a={h.a}  {parts}")


if __name__ == "__main__":
    main()
