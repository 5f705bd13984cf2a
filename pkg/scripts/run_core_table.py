#!/usr/bin/env python3
"""Reproduce the core complexity table for K x 2 x 2 x 2 models.

Writes one JSON report per model plus summary.csv under --out (default
results/core_table) and prints the summary.  Equivalent to
``hiergraver table --suite core``.
"""

import argparse
import sys

from hiergraver.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/core_table")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--suite", choices=["core", "extended"], default="core")
    args = parser.parse_args()
    return cli_main(
        ["table", "--suite", args.suite, "--jobs", str(args.jobs),
         "--out", args.out]
    )


if __name__ == "__main__":
    sys.exit(main())
