"""Where does the E_f curve peak, with and without truncating its series?

The converged sums grow without bound in r; cutting each sum at a fixed
number of terms produces an artificial maximum whose position drifts with
the cutoff. Prints one line per (k, terms).
"""

import numpy as np

from tmsvortex import entanglement as ent
from tmsvortex.fock import SqueezeParams

R = np.round(np.arange(0.5, 4.0 + 1e-9, 0.01), 10)


def peak(k, terms=None):
    base = SqueezeParams(1.0)
    curve = ent.scan(ent.MeasureKind.EF_PAPER, base, k, R, ent.PAPER_RAW, terms=terms)
    return ent.refine_argmax(lambda r: ent.ef_paper(base.with_r(r), k, terms=terms), curve)


def main():
    print(f"{'k':>2} {'terms':>9} {'argmax r':>9} {'max':>12}")
    for k in range(1, 5):
        for terms in (50, 100, 200, None):
            r, v = peak(k, terms)
            print(f"{k:>2} {terms or 'converged':>9} {r:9.3f} {v:12.5g}")


if __name__ == "__main__":
    main()
