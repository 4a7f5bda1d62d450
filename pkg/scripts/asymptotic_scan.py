"""Relative deviation of R_n(k) from R/(2k^2) over a log grid of kR.

Writes a CSV table and prints the worst deviation per kR.
"""

import argparse

import numpy as np

from hquant.radial import asymptotic_deviation_scan, max_deviation_by_kR, scan_to_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--decades", type=float, nargs=2, default=(1.0, 6.0))
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--out", default="asymptotic_scan.csv")
    args = ap.parse_args()

    kRs = np.logspace(*args.decades, args.points)
    rows = asymptotic_deviation_scan(args.n_max, kRs)
    with open(args.out, "w", newline="") as fh:
        fh.write(scan_to_csv(rows))
    for kR, dev in max_deviation_by_kR(rows).items():
        print(f"kR={kR:10.3e}  max_n |dev|={dev:.3e}  kR*dev={kR * dev:.3f}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
