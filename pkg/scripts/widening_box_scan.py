#!/usr/bin/env python3
"""Track the box-to-free-particle limit as the box widens.

Runs the length scan at fixed points-per-length and prints the E1 * L^2
invariant per length; the CSV report lands in the output directory.
"""

import argparse
import pathlib
import sys

import numpy as np

from susyqm.cli import main as cli_main


def run(lengths: str, points_per_length: float, out_dir: pathlib.Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "widening_box_scan.csv"
    code = cli_main(["scan", "--L-values", lengths,
                     "--points-per-length", str(points_per_length),
                     "--levels", "4", "--out", str(path)])
    print(path.read_text(), end="")
    print(f"target E1*L^2 = pi^2/2 = {np.pi ** 2 / 2:.6f}")
    return code


if __name__ == "__main__":
    default_lengths = ",".join(str(np.pi * 2 ** i) for i in range(4))
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--L-values", default=default_lengths)
    parser.add_argument("--points-per-length", type=float, default=300.0)
    parser.add_argument("--out-dir", default="reports", type=pathlib.Path)
    args = parser.parse_args()
    sys.exit(run(args.L_values, args.points_per_length, args.out_dir))
