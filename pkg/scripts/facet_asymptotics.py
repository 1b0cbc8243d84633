"""Facet-direction densities against the closed form, and their approach to 1/e.

    python3 scripts/facet_asymptotics.py --nmax 60
"""

import argparse
import math
import time

from simplexslice.density import density_contour, density_realaxis
from simplexslice.direction import facet_density, facet_direction, facet_section_volume, volume_lower_bound


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=30)
    ap.add_argument("--realaxis", action="store_true", help="also run the oscillatory integral")
    args = ap.parse_args()

    head = f"{'n':>4} {'contour':>19} {'closed form':>19} {'|diff|':>9} {'e*G':>10} {'vol/bound':>10}"
    if args.realaxis:
        head += f" {'|real-axis diff|':>16}"
    print(head)
    t0 = time.perf_counter()
    for n in range(2, args.nmax + 1):
        u = facet_direction(n)
        g = density_contour(u).value
        exact = facet_density(n)
        line = (f"{n:4d} {g:19.16f} {exact:19.16f} {abs(g - exact):9.2e} {g * math.e:10.7f} "
                f"{facet_section_volume(n) / volume_lower_bound(n):10.7f}")
        if args.realaxis:
            line += f" {abs(density_realaxis(u).value - g):16.2e}"
        print(line)
    print(f"# {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
