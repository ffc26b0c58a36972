"""Write dim A_gamma over the feasible frequency range as CSV (for plotting elsewhere)."""

import argparse
import csv
import sys
from fractions import Fraction

from betafreq import BetaParams, dim_A_gamma
from betafreq.dimension import max_frequency


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--beta-order", type=int, default=2)
    ap.add_argument("--points", type=int, default=100)
    ap.add_argument("-o", "--output", help="CSV path (stdout if omitted)")
    args = ap.parse_args()
    p = BetaParams.multinacci(args.beta_order)
    top = max_frequency(p)

    out = open(args.output, "w", newline="") if args.output else sys.stdout
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["gamma", "dimension", "max_entropy"])
    for i in range(args.points + 1):
        g = top * Fraction(i, args.points)
        r = dim_A_gamma(g, p)
        w.writerow([f"{float(g):.10f}", f"{r.dimension:.12f}", f"{r.max_entropy:.12f}"])
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
