"""Negative volume of the k-subtracted state, 4D and on the XPy section.

    python3 scripts/negativity_table.py [--k 1 2] [--r 0 0.8]
"""

import argparse
import math

from tmsvortex.cli import FIG7_GRID
from tmsvortex.fock import SqueezeParams
from tmsvortex.wigner import WignerSliceSpec, negativity_volume


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--r", type=float, nargs="+", default=[0.0, 0.8])
    ap.add_argument("--theta", type=float, default=math.pi / 2)
    args = ap.parse_args()
    spec = WignerSliceSpec("xpy", {}, FIG7_GRID)
    print(f"{'k':>2} {'r':>5} {'delta_4d':>10} {'conv':>5} {'delta_xpy':>10} {'fringes':>7}")
    for k in args.k:
        for r in args.r:
            p = SqueezeParams(r, args.theta)
            full = negativity_volume(p, k)
            cut = negativity_volume(p, k, spec)
            print(f"{k:>2} {r:5.2f} {full.negative_volume:10.6f} {str(full.converged):>5} "
                  f"{cut.negative_volume:10.6f} {cut.fringe_count:7d}")


if __name__ == "__main__":
    main()
