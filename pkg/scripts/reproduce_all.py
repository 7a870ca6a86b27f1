"""Regenerate every figure's data set under one output directory.

    python3 scripts/reproduce_all.py [OUTDIR] [--pgm]
"""

import argparse
import sys
from pathlib import Path

from tmsvortex.cli import FigureId, main


def run(out, pgm=False):
    fmt = "csv,json,pgm" if pgm else "csv,json"
    for fig in FigureId:
        code = main(["reproduce", fig.value, "--out", str(Path(out) / fig.value), "--format", fmt])
        if code:
            return code
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", nargs="?", default="tmsvortex-out")
    ap.add_argument("--pgm", action="store_true", help="also write 16-bit PGM heatmaps")
    args = ap.parse_args()
    sys.exit(run(args.out, args.pgm))
