"""Dump plot data for the two contour figures: y_u(x) and the Argand grid of F_u.

    python3 scripts/figure_data.py --outdir figure_data

Writes contour_y.csv (zero-phase contour for u = (sqrt.62, -sqrt.19, -sqrt.19)
on (-20, 20)), argand.csv (|F_u| and arg F_u for u = (sqrt.42, sqrt.38, sqrt.20))
and argand_contour.csv (the contour of the latter, to overlay).  No plotting.
"""

import argparse
import math
import os

import numpy as np

from simplexslice.cli import ARGAND_COLUMNS, CONTOUR_COLUMNS, argand_rows, rows_to_csv
from simplexslice.contour import domain, trace
from simplexslice.direction import as_direction

CONTOUR_U = (math.sqrt(0.62), -math.sqrt(0.19), -math.sqrt(0.19))
ARGAND_U = (math.sqrt(0.42), math.sqrt(0.38), math.sqrt(0.20))


def write(path, columns, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(columns, rows))
    print(f"wrote {path} ({len(rows)} rows)")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="figure_data")
    ap.add_argument("--resolution", type=int, default=801)
    ap.add_argument("--argand-resolution", type=int, default=301)
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)

    u = as_direction(CONTOUR_U)
    samples = trace(u, np.linspace(-20, 20, args.resolution))
    write(os.path.join(args.outdir, "contour_y.csv"), CONTOUR_COLUMNS,
          [[s.x, s.y, s.y_prime, s.f_tilde, s.residual_phase] for s in samples])

    w = as_direction(ARGAND_U)
    write(os.path.join(args.outdir, "argand.csv"), ARGAND_COLUMNS,
          argand_rows(w, (-10.0, 10.0), (-3.0, 3.0), args.argand_resolution))
    right = min(domain(w).d_u_right * 0.999, 10.0)
    ov = trace(w, np.linspace(-right, right, args.resolution))
    write(os.path.join(args.outdir, "argand_contour.csv"), CONTOUR_COLUMNS,
          [[s.x, s.y, s.y_prime, s.f_tilde, s.residual_phase] for s in ov])


if __name__ == "__main__":
    main()
