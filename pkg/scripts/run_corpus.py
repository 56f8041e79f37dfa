#!/usr/bin/env python3
"""Sweep the full corpus (rational field + all fundamental discriminants up
to a bound) and print the verification table plus a summary line.

Usage:
    python scripts/run_corpus.py [--bound N] [--tol T] [--json PATH] [--jobs J]
"""

import argparse
import sys

from zetachi.cli import RunConfig, run
from zetachi.number_field import RATIONAL_FIELD


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--bound", type=int, default=300,
                   help="discriminant bound |d| <= N (default 300)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", default=None, metavar="PATH")
    p.add_argument("--jobs", type=int, default=1)
    args = p.parse_args()
    config = RunConfig(targets=[RATIONAL_FIELD], range_bound=args.bound,
                       tolerance=args.tol, json_path=args.json,
                       jobs=args.jobs)
    status, _ = run(config)
    return status


if __name__ == "__main__":
    sys.exit(main())
