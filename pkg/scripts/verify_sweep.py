#!/usr/bin/env python3
"""Sweep the theorem and corollary verifiers and tabulate the results.

Usage:
    python scripts/verify_sweep.py [--max-n 8] [--max-k 12] [--oracle D]

Runs the full certificate for every n up to --max-n and every dihedral
index k up to --max-k, printing one row per run with timings.  With
--oracle D every fixed-point decision is additionally cross-checked by
brute force at denominator D (keep D small; the grid has D^(4n+2) points
before quotienting).  Exits nonzero if any certificate fails.
"""

from __future__ import annotations

import argparse
import sys
import time

from dihedral_torus import (
    analyze_group,
    realified_action,
    torsion_fixed_points_bruteforce,
    verify_corollary,
    verify_theorem,
)


def sweep_theorem(max_n: int, oracle: int | None) -> bool:
    print(f"{'n':>3} {'dim':>4} {'order':>6} {'free':>5} {'verified':>9} {'ms':>8}")
    ok = True
    for n in range(1, max_n + 1):
        t0 = time.perf_counter()
        cert = verify_theorem(n)
        ms = (time.perf_counter() - t0) * 1000.0
        ok &= cert.theorem_verified
        print(
            f"{n:>3} {cert.dimension:>4} {cert.group_order_actual:>6} "
            f"{str(cert.is_free):>5} {str(cert.theorem_verified):>9} {ms:>8.1f}"
        )
        if oracle is not None:
            rotation, reflection = realified_action(n)
            analysis = analyze_group([rotation, reflection])
            bad = [
                rep.word
                for elem, rep in zip(analysis.elements, analysis.reports)
                if bool(torsion_fixed_points_bruteforce(elem.auto, oracle))
                != rep.has_fixed_point
            ]
            ok &= not bad
            verdict = "all agree" if not bad else f"DISAGREE on {bad}"
            print(f"    oracle D={oracle}: {verdict}")
    return ok


def sweep_corollary(max_k: int) -> bool:
    print(f"\n{'k':>3} {'n':>3} {'dim':>4} {'order':>6} {'verified':>9} {'ms':>8}")
    ok = True
    for k in range(1, max_k + 1):
        t0 = time.perf_counter()
        cert = verify_corollary(k)
        ms = (time.perf_counter() - t0) * 1000.0
        ok &= cert.verified
        print(
            f"{k:>3} {cert.n:>3} {cert.ambient_dimension:>4} "
            f"{cert.group_order_actual:>6} {str(cert.verified):>9} {ms:>8.1f}"
        )
    return ok


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--max-k", type=int, default=12)
    parser.add_argument("--oracle", type=int, default=None, metavar="D")
    args = parser.parse_args()
    ok = sweep_theorem(args.max_n, args.oracle)
    ok &= sweep_corollary(args.max_k)
    print("\nall certificates verified" if ok else "\nFAILURES present")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
