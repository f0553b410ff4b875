"""Isoperimetric profile of balls on a reduced anti-tree line.

For each radius reports the ball-restricted h, the exact h (brute force or
path dynamic programme) and the normalized band value h r / m(B_r)^(2/n).
"""

import argparse
import csv
import sys

import numpy as np

from graphheat.antitree import dimension, levels_for_radius, power_sphere_function, reduce
from graphheat.functionals import ball_members, isoperimetric_balls
from graphheat.metric import path_degree_metric
from graphheat.suites import exact_isoperimetric


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--r-min", type=float, default=2.0)
    ap.add_argument("--r-max", type=float, default=20.0)
    ap.add_argument("--count", type=int, default=19)
    ap.add_argument("--n", type=float, default=None, help="default 2d")
    ap.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    args = ap.parse_args(argv)

    n = 2 * dimension(args.gamma) if args.n is None else args.n
    s = power_sphere_function(args.gamma)
    g = reduce(s, levels_for_radius(s, args.r_max)).graph
    rho = path_degree_metric(g)
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out)
    w.writerow(["r", "ball_size", "h_balls", "h_exact", "method", "band"])
    for r in np.linspace(args.r_min, args.r_max, args.count):
        B = ball_members(g, rho, 0, r)
        hb = isoperimetric_balls(g, rho, r, n)
        ex = exact_isoperimetric(g, rho, B, n)
        band = hb.value * r / g.measure[B].sum() ** (2 / n)
        w.writerow([repr(float(r)), B.size, repr(hb.value), repr(ex.value), ex.method, repr(float(band))])
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
