"""Run the full verification suite and write one JSON report per line.

    python3 scripts/run_verification.py --seed 42 --out reports.jsonl
"""

import argparse
import json
import sys
import time

from simplexslice import verify
from simplexslice.cli import dump_json


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--size", type=int, default=200, help="corpus size")
    ap.add_argument("--vector-sample", type=int, default=24,
                    help="directions used by the grid checks")
    ap.add_argument("--out", default="reports.jsonl")
    args = ap.parse_args()

    t0 = time.perf_counter()
    corpus = verify.build_corpus(args.seed, args.size)
    reports = verify.run_suite(seed=args.seed, corpus=corpus, vector_sample=args.vector_sample)
    with open(args.out, "w", encoding="utf-8") as fh:
        for r in reports:
            fh.write(dump_json({"command": "verify", **r.to_json()}) + "\n")
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.check_name:<24} worst {r.worst_residual:10.3e} "
              f"tol {r.tolerance:7.1e}  {r.grid_spec}")
    print(f"# {len(corpus)} directions, {time.perf_counter() - t0:.1f}s, reports in {args.out}")
    sys.exit(0 if all(r.passed for r in reports) else 1)


if __name__ == "__main__":
    main()
