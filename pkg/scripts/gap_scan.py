"""Gap widths E[2k] - E[2k-1] across m, as CSV."""
import argparse

import numpy as np

from lameqhj import qhj
from lameqhj.potentials import PotentialSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("family", choices=["lame", "associated"])
    ap.add_argument("j", type=int)
    ap.add_argument("--steps", type=int, default=20)
    args = ap.parse_args()

    ms = np.linspace(0.02, 0.98, args.steps)
    print("m," + ",".join(f"gap{k}" for k in range(1, args.j + 1)))
    for m in ms:
        E = qhj.full_spectrum(PotentialSpec(args.family, args.j, float(m)), census=False).energies
        gaps = [E[2 * k] - E[2 * k - 1] for k in range(1, args.j + 1)]
        print(f"{m:.4f}," + ",".join(f"{g:.10g}" for g in gaps))


if __name__ == "__main__":
    main()
