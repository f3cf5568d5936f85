#!/usr/bin/env python3
"""Sweep the whole postulate catalogue over every normalized rank
function at two atoms and summarize which clauses hold universally.

The K1-K9 block and the derived clauses pass on every rank-induced
revision; U8, U8.1 and C2 fail on every one of them (witnesses exist by
the impossibility results). Exits nonzero if that picture is disturbed.
"""

import argparse
import sys
import time
from collections import Counter

from rankedrev import (
    PostulateId,
    RankedRevision,
    Signature,
    enumerate_rank_functions,
    run_suite,
)

EXPECTED_TO_FAIL = {PostulateId.U8, PostulateId.U8_1, PostulateId.C2}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--atoms", default="p,q", help="comma-separated atom names")
    args = parser.parse_args()

    sig = Signature(tuple(args.atoms.split(",")))
    start = time.perf_counter()
    fail_counts: Counter = Counter()
    total = 0
    for rank in enumerate_rank_functions(sig):
        total += 1
        report = run_suite(RankedRevision(rank), list(PostulateId))
        for pid, violation in report.results:
            if violation is not None:
                fail_counts[pid] += 1
    elapsed = time.perf_counter() - start

    print(f"{total} rank functions over atoms {args.atoms} ({elapsed:.2f}s)")
    ok = True
    for pid in PostulateId:
        failures = fail_counts.get(pid, 0)
        if pid in EXPECTED_TO_FAIL:
            status = "fails everywhere (as it must)" if failures == total else "UNEXPECTED"
            ok = ok and failures == total
        else:
            status = "holds everywhere" if failures == 0 else "UNEXPECTED"
            ok = ok and failures == 0
        print(f"  {pid.name:12} {failures:4}/{total} violations  {status}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
