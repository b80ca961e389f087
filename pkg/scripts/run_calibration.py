#!/usr/bin/env python3
"""Run the convention calibration and write the JSON report.

    python scripts/run_calibration.py --max-sp 7 --max-thickness 3 --out calibration.json
"""

import argparse
import sys
from pathlib import Path

from ppp import enumerate as en


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-sp", type=int, default=7)
    parser.add_argument("--max-thickness", type=int, default=3)
    parser.add_argument("--out", type=Path)
    args = parser.parse_args()

    report = en.calibrate(args.max_sp, args.max_thickness)
    text = en.report_json(report)
    if args.out:
        args.out.write_text(text + "\n")
    for combo in report["combinations"]:
        failing = [name for name, r in combo["properties"].items() if not r["pass"]]
        status = "ok" if not failing else "fails " + ",".join(failing)
        print(f"{combo['conventions']:55s} n={combo['population']:6d} {status}", file=sys.stderr)
    if not args.out:
        print(text)
    return 0 if report["passing_all"] else 1


if __name__ == "__main__":
    sys.exit(main())
