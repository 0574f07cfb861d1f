"""Oracle convergence: distance of the plane-wave edges from the analytic ones vs N.

Usage: python3 scripts/convergence_study.py [--family lame] [--j 2] [--m 0.5]
"""
import argparse

import numpy as np

from lameqhj import oracle, qhj
from lameqhj.potentials import PotentialSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", default="lame", choices=["lame", "associated"])
    ap.add_argument("--j", type=int, default=2)
    ap.add_argument("--m", type=float, default=0.5)
    ap.add_argument("--modes", type=int, nargs="+", default=[2, 3, 4, 5, 6, 8, 16, 32, 64, 128])
    args = ap.parse_args()

    spec = PotentialSpec(args.family, args.j, args.m)
    exact = qhj.full_spectrum(spec, census=False).energies
    print("N,max_abs_delta")
    for N in args.modes:
        edges = oracle.band_edges(spec, modes=N, count=len(exact))
        delta = np.max(np.abs(np.array([e.energy for e in edges]) - exact))
        print(f"{N},{delta:.3e}")


if __name__ == "__main__":
    main()
