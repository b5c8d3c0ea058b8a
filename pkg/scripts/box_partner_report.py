#!/usr/bin/env python3
"""Produce the box / sec^2-partner comparison reports.

Emits three CSV files: the box spectrum, the partner spectrum, and the
superpotential / partner-potential table with the paired level list.
"""

import argparse
import pathlib
import sys

from susyqm.cli import main as cli_main


def run(length: float, points: int, out_dir: pathlib.Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    steps = [
        ["spectrum", "--model", "box", "--L", str(length), "--points", str(points),
         "--levels", "8", "--out", str(out_dir / "box_spectrum.csv")],
        ["spectrum", "--model", "sec2", "--L", str(length), "--points", str(points),
         "--levels", "8", "--out", str(out_dir / "partner_spectrum.csv")],
        ["partner", "--model", "box", "--L", str(length), "--points", str(points),
         "--levels", "8", "--out", str(out_dir / "partner_table.csv")],
    ]
    for argv in steps:
        code = cli_main(argv)
        if code != 0:
            return code
        print("wrote", argv[-1])
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--L", type=float, default=3.141592653589793)
    parser.add_argument("--points", type=int, default=2001)
    parser.add_argument("--out-dir", default="reports", type=pathlib.Path)
    args = parser.parse_args()
    sys.exit(run(args.L, args.points, args.out_dir))
