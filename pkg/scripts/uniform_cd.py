"""Measure the contraction depth of U_{n-1,n} and compare it with n + 1.

The recursion contracts one element of a connected matroid and recurses on
the components of what is left.  For the n-circuit U_{n-1,n} each contraction
leaves a shorter circuit, ending at a single loop of depth 1, so the measured
value is n.  This script prints the measured values next to n + 1.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from branchdepth.matroid import contraction_depth, uniform


@dataclass
class UniformConfig:
    max_n: int = 6


def measure(cfg: UniformConfig) -> list:
    rows = []
    for n in range(2, cfg.max_n + 1):
        res = contraction_depth(uniform(n - 1, n), cap=max(10, n))
        rows.append({"n": n, "cd": res.value, "n_plus_1": n + 1, "witness": [op for _, op in res.sequence()]})
    return rows


def main() -> int:
    p = argparse.ArgumentParser(description="cd(U_{n-1,n}) for n = 2..max_n")
    p.add_argument("--max-n", type=int, default=6)
    args = p.parse_args()
    rows = measure(UniformConfig(args.max_n))
    for r in rows:
        print(f"n={r['n']}: cd={r['cd']}  n+1={r['n_plus_1']}", file=sys.stderr)
    json.dump(rows, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
