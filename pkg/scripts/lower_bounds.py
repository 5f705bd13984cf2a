#!/usr/bin/env python3
"""Lower bounds on Markov complexity for the three-cycle model on 3 x K tables.

For each K the bound is the maximum 1-norm over the Graver basis of the
doubled matrix built from the semi-conformal-free set of the link factor.
K=3 and K=4 finish in seconds/minutes; K=5 takes much longer.
"""

import argparse
import sys
import time

from hiergraver.complexes import parse_complex
from hiergraver.complexity import ResourceCaps, markov_lower_bound
from hiergraver.modelmatrix import lift_factors


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-k", type=int, default=4)
    parser.add_argument("--time-limit", type=float, default=None)
    args = parser.parse_args()

    caps = ResourceCaps(time_limit_s=args.time_limit)
    delta = parse_complex("[12][13][23]", n=3)
    for k in range(3, args.max_k + 1):
        a, b = lift_factors(delta, (3, k))
        t0 = time.perf_counter()
        lb, gamma = markov_lower_bound(a, b, caps=caps)
        dt = time.perf_counter() - t0
        print(f"3 x {k}: lower bound {lb}  "
              f"(witness 1-norm {gamma.norm1()}, {dt:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
