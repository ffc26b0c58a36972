"""Golden mean end to end: digit-event brackets, 5/18, Monte Carlo separation, dimension bound.

    python3 scripts/reproduce_golden_mean.py [--length 10000000] [--trials 10] [--seed 0]
"""

import argparse
import time
from fractions import Fraction

from betafreq import (
    closed_form_lemmas,
    dim_A_gamma,
    golden_mean,
    mc_frequency_bernoulli,
    mc_frequency_lebesgue,
    omega_frequency,
    parry_alpha1,
    prob_event,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--length", type=int, default=10_000_000)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--depth", type=int, default=40)
    args = ap.parse_args()
    g = golden_mean()

    print(f"exact brackets, depth {args.depth}")
    for ev, q in closed_form_lemmas(g).items():
        t = time.perf_counter()
        br = prob_event(ev, args.depth, g)
        print(f"  {ev:>9}  {str(q):>5}  width {float(br.width):.1e}"
              f"  {'contains' if br.contains(q) else 'MISSES'}  ({time.perf_counter() - t:.2f}s)")

    fr = omega_frequency(g, 40)
    print(f"block-word route, L=40: [{float(fr.lower):.7f}, {float(fr.upper):.7f}]")

    leb = mc_frequency_lebesgue(args.length, args.trials, args.seed, g)
    ber = mc_frequency_bernoulli(args.length, args.trials, args.seed + 1, g)
    a1 = float(parry_alpha1(g))
    sep = abs(ber.estimate - leb.estimate) / (leb.stderr ** 2 + ber.stderr ** 2) ** 0.5
    print(f"lebesgue  {leb.estimate:.7f} +- {leb.stderr:.1e}   alpha(1) = {a1:.7f}")
    print(f"bernoulli {ber.estimate:.7f} +- {ber.stderr:.1e}   5/18     = {5 / 18:.7f}")
    print(f"separation {sep:.1f} combined stderr")

    d = dim_A_gamma(Fraction(5, 18), g)
    print(f"dim A_(5/18) = {d.dimension:.8f}")


if __name__ == "__main__":
    main()
