#!/usr/bin/env python3
"""Desk-scale experiment: 50x50 fitted sweeps on a random 10-spin SK instance.

Runs both mixers over their full-period default angle ranges, writes the
sweep/threshold/tradeoff CSVs per mixer under the output directory, and prints
the threshold summary tables. A laptop-friendly stand-in for the full
200x200 15-spin study (see reproduce_published.py).
"""

import argparse
import os
import sys

from qaoa_thermal.cli import main as cli


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=10)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--resolution", type=int, default=50)
    parser.add_argument("--out-dir", default="desk_sweep_out")
    args = parser.parse_args(argv)

    for mixer in ("x", "grover"):
        out = os.path.join(args.out_dir, mixer)
        code = cli(
            ["sweep", "--n", str(args.n), "--seed", str(args.seed), "--mixer", mixer,
             "--resolution", str(args.resolution), str(args.resolution), "--out-dir", out]
        )
        if code != 0:
            return code
        print(f"\n=== {mixer} mixer threshold summary ===")
        code = cli(["analyze", "--sweep", os.path.join(out, "sweep.csv"), "--out-dir", out])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run())
