"""Recovered beta across band start k0, mode order n and frequency omega.

Compares the asymptotic radial factor (exact k0 independence) with the
closed Bessel form, whose deviation shrinks as k0 R grows.
"""

import argparse

import numpy as np

from hquant.core import SI, PhysicalSetup
from hquant.energy import RadialMode, beta, k0_independence_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--units", choices=["natural", "si"], default="natural")
    ap.add_argument("--n", type=int, nargs="+", default=[0, 1, 4, 9])
    ap.add_argument("--omega", type=float, default=1.0, help="in units of c")
    args = ap.parse_args()

    setup = SI if args.units == "si" else PhysicalSetup.natural()
    omega = args.omega * setup.c
    k0s = np.logspace(0, 4, 9)
    print(f"beta(setup) = {beta(setup):.17g}")
    print(f"{'n':>3} {'mode':>10} {'k0':>10} {'beta_hat/beta - 1':>20}")
    for n in args.n:
        for mode in (RadialMode.ASYMPTOTIC, RadialMode.CLOSED):
            rep = k0_independence_scan(n, omega, k0s, setup, mode)
            for k0, hat in zip(rep.k0_values, rep.beta_hats):
                print(f"{n:3d} {mode.value:>10} {k0:10.3e} {hat / rep.beta - 1:20.3e}")


if __name__ == "__main__":
    main()
