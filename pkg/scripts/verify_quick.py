#!/usr/bin/env python3
"""Run the full catalog at the quick tier and print the text table.

A convenience wrapper over the library runner; the ggq entry point
offers the same through `ggq verify-all`.
"""

import argparse
import sys

from ggq.cli import emit_text
from ggq.registry import run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--level", choices=("quick", "full"), default="quick")
    ap.add_argument("--parallelism", type=int, default=1)
    args = ap.parse_args()
    reports = run_all(level=args.level, parallelism=args.parallelism)
    sys.stdout.write(emit_text(reports))
    return 0 if all(r.status == "pass" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
