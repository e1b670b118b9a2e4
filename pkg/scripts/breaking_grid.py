#!/usr/bin/env python3
"""Sweep the breaking-exclusion certificate over a grid of rotation numbers."""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cch import sweep_no_bad_break


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=200)
    parser.add_argument("--max-denominator", type=int, default=50)
    parser.add_argument("--theta-upper", type=int, default=10)
    args = parser.parse_args()

    started = time.monotonic()
    result = sweep_no_bad_break(args.max_degree, args.max_denominator, args.theta_upper)
    elapsed = time.monotonic() - started
    print(f"certificates: {result.certificates_checked}")
    print(f"counterexamples: {len(result.counterexamples)}")
    for theta, d in result.counterexamples:
        print(f"counterexample: theta={theta} degree={d}")
    print(f"verdict: {'A-and-B-unsatisfiable' if result.ok else 'counterexample-found'}")
    print(f"elapsed: {elapsed:.1f}s")
    return 0 if result.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
