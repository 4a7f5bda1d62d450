"""Spin angular momentum of circular and linear modes over n and kR.

For each case prints |J|, the angle to the propagation axis, the drift over
one cycle and <H>/(omega |J|), which is 1 for circular polarization.
"""

import argparse

import numpy as np

from hquant.angmom import angle_to, conservation_check, energy_spin_ratio, intrinsic_angular_momentum
from hquant.core import FieldSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--kR", type=float, nargs="+", default=[5.0, 20.0, 100.0])
    ap.add_argument("--khat", type=float, nargs=3, default=(0.0, 0.6, 0.8))
    args = ap.parse_args()

    khat = tuple(np.asarray(args.khat) / np.linalg.norm(args.khat))
    print(f"{'n':>2} {'kR':>7} {'pol':>8} {'|J|':>12} {'angle':>10} {'drift':>10} {'H/(w|J|)':>12}")
    for n in range(args.n_max + 1):
        for kR in args.kR:
            for pol in ("plus", "minus", "linear1"):
                fs = FieldSpec(n=n, k=1.0, polarization=pol, khat=khat)
                J = intrinsic_angular_momentum(fs, kR)
                rep = conservation_check(fs, kR, np.linspace(0.0, fs.period, 8))
                mag = float(np.linalg.norm(J))
                if fs.polarization.is_circular:
                    ang = f"{angle_to(J * fs.polarization.helicity, khat):10.2e}"
                    ratio = f"{energy_spin_ratio(fs, kR) / fs.omega:12.9f}"
                else:
                    ang, ratio = f"{'-':>10}", f"{'-':>12}"
                print(f"{n:2d} {kR:7.1f} {pol:>8} {mag:12.5e} {ang} {rep.max_drift:10.2e} {ratio}")


if __name__ == "__main__":
    main()
