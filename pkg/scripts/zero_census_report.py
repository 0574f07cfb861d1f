"""Real and total zero counts per band edge, and whether real zeros grow with energy.

Real-zero monotonicity is only reported here; the test suite checks the totals.
"""
import argparse

from lameqhj import qhj
from lameqhj.potentials import PotentialSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--j-max", type=int, default=8)
    ap.add_argument("--m", type=float, nargs="+", default=[0.1, 0.5, 0.9])
    args = ap.parse_args()

    print("family,j,m,set_ids,total_zeros,real_zeros,real_monotone")
    for family in ("lame", "associated"):
        for j in range(1, args.j_max + 1):
            for m in args.m:
                sp = qhj.full_spectrum(PotentialSpec(family, j, m))
                real = [s.real_zeros_in_period for s in sp]
                mono = all(a <= b for a, b in zip(real, real[1:]))
                print(",".join([
                    family, str(j), str(m),
                    " ".join(str(s.set_id) for s in sp),
                    " ".join(str(s.total_zeros) for s in sp),
                    " ".join(map(str, real)),
                    str(mono),
                ]))


if __name__ == "__main__":
    main()
