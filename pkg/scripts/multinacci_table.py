"""alpha(1) against the fair-coin digit frequency for multinacci orders 2..N.

Each row: exact interval from block words, Monte Carlo check, separation, dimension bound.
"""

import argparse

from betafreq import BetaParams, mc_frequency_bernoulli, parry_alpha1
from betafreq.dimension import certificate_from_interval
from betafreq.probability import omega_frequency

TRUNCATION = {2: 60, 3: 200, 4: 240, 5: 300}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=4)
    ap.add_argument("--length", type=int, default=2_000_000)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>2} {'alpha(1)':>10} {'interval mid':>13} {'width':>8} {'MC':>10} {'+-':>8} {'dim bound':>10}")
    for n in range(2, args.max_order + 1):
        p = BetaParams.multinacci(n)
        L = TRUNCATION.get(n, 60 * n)
        fr = omega_frequency(p, L)
        mc = mc_frequency_bernoulli(args.length, args.trials, args.seed, p)
        cert = certificate_from_interval(p, fr.lower, fr.upper, f"L={L}")
        bound = f"{cert.dimension_bound:.6f}" if cert.separated else "-"
        print(f"{n:>2} {float(parry_alpha1(p)):>10.6f} {fr.midpoint:>13.8f} {float(fr.width):>8.1e}"
              f" {mc.estimate:>10.6f} {mc.stderr:>8.1e} {bound:>10}")


if __name__ == "__main__":
    main()
