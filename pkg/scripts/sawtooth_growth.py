#!/usr/bin/env python3
"""Norm growth of the lambda = -1 ramp operator across truncation sizes.

For each size N the ramp symbol is rebuilt with bandlimit K = N, so the
truncation always carries every band the symbol provides; the operator norms
keep growing with N instead of leveling off.
"""

import argparse
from pathlib import Path

from ltoeplitz import sawtooth_growth_study
from ltoeplitz.output import csv_text


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="16,32,64,128,256,512,1024")
    parser.add_argument("--out", help="optional CSV output path")
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    study = sawtooth_growth_study(sizes)
    for n, value in study:
        print(f"N={n:6d}  operator_norm={value:.6f}")
    if len(study) > 1:
        print(f"growth factor {study[-1][1] / study[0][1]:.4f} from N={sizes[0]} to N={sizes[-1]}")
    if args.out:
        Path(args.out).write_text(csv_text("N,operator_norm", study))
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
