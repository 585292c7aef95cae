#!/usr/bin/env python3
"""Run the full verification suite and print the report.

Equivalent to `pbracket verify paper`, kept as a script so the suite can be
run straight from a checkout without installing the console entry point.
"""

import argparse
import json
import sys

from pbracket.config import EngineConfig
from pbracket.verify import run_verify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--dof", type=int, default=1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    cfg = EngineConfig.default()
    if args.dof != cfg.dof:
        cfg = EngineConfig(cfg.convention, args.dof)
    report = run_verify(seed=args.seed, config=cfg)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(report.render())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
