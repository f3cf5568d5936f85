#!/usr/bin/env python3
"""Sampled check of the iterated-revision laws at three atoms.

Draws seeded random rank functions and runs the three iterated-revision
clauses in sampled mode. Every run is replayable from the base seed
printed at the end.
"""

import argparse
import sys
import time

from rankedrev import (
    PostulateId,
    RankedRevision,
    Signature,
    random_rank_function,
    run_suite,
)

IDS = (PostulateId.P_PHIANDPSI, PostulateId.P_PSI, PostulateId.P_GEN)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--functions", type=int, default=500)
    parser.add_argument("--samples", type=int, default=120, help="bindings per clause")
    parser.add_argument("--seed", type=int, default=20260810)
    args = parser.parse_args()

    sig = Signature(("p", "q", "r"))
    start = time.perf_counter()
    bad = 0
    for i in range(args.functions):
        seed = args.seed + i
        rank = random_rank_function(sig, levels=(i % sig.num_valuations) + 1, seed=seed)
        report = run_suite(RankedRevision(rank), IDS, mode="sampled",
                           seed=seed, samples=args.samples)
        if not report.all_pass:
            bad += 1
            for pid, violation in report.results:
                if violation is not None:
                    print(f"seed {seed}: {pid.name} FAIL {violation.describe()}")
    elapsed = time.perf_counter() - start
    print(
        f"{args.functions} rank functions, {args.samples} samples per clause, "
        f"base seed {args.seed}: {bad} failures ({elapsed:.2f}s)"
    )
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
