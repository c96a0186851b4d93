"""Run every verification suite and write one JSON summary.

    python3 scripts/run_suites.py --seed 0 --out results/suites.json
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from branchdepth.suites import SUITES, run_suite


@dataclass
class RunConfig:
    suites: List[str] = field(default_factory=lambda: sorted(SUITES))
    seed: int = 0
    max_size: Optional[int] = None
    out: Optional[Path] = None


def run(cfg: RunConfig) -> bool:
    results = [run_suite(name, cfg.max_size, cfg.seed) for name in cfg.suites]
    for r in results:
        print(f"{r.name:<10} {'pass' if r.ok else 'FAIL'}  {r.checked:>5} checks  {r.seconds:>7.2f}s", file=sys.stderr)
    if cfg.out is not None:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text(json.dumps([r.to_dict() for r in results], indent=2) + "\n")
    return all(r.ok for r in results)


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("suites", nargs="*", help=f"any of {', '.join(sorted(SUITES))} (default: all)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--out", type=Path, default=None)
    args = p.parse_args()
    unknown = [s for s in args.suites if s not in SUITES]
    if unknown:
        p.error(f"unknown suite(s): {', '.join(unknown)}")
    cfg = RunConfig(seed=args.seed, max_size=args.max_size, out=args.out)
    if args.suites:
        cfg.suites = args.suites
    return 0 if run(cfg) else 1


if __name__ == "__main__":
    sys.exit(main())
