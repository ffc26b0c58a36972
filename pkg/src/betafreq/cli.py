"""Command-line front end.

Option values are resolved as: command-line flag, then the ``[defaults]``
section of ``--config`` (INI), then the built-in default.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import sys
from fractions import Fraction

from . import __version__
from .field import BetaParams, to_fraction_string
from .words import TwoSidedWord

BUILTIN = {
    "beta_order": 2,
    "depth": 40,
    "length": 10_000_000,
    "trials": 10,
    "seed": 0,
    "threads": 1,
    "truncation": None,
    "max_order": 4,
}


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}") from exc


def _common(p: argparse.ArgumentParser, *names: str) -> None:
    p.add_argument("--beta-order", type=int, dest="beta_order", help="multinacci order n (default 2)")
    p.add_argument("--json", action="store_true", help="machine-readable JSON output")
    p.add_argument("--config", help="INI file with a [defaults] section")
    for name in names:
        flag = "--" + name.replace("_", "-")
        p.add_argument(flag, type=int, dest=name)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="betafreq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"betafreq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="greedy normal form of a 0/1 word")
    p.add_argument("word", nargs="?", help="word, or 'past|future'; read from stdin if omitted")
    _common(p)

    p = sub.add_parser("exact-prob", help="certified probability bracket of a digit event")
    p.add_argument("--event", required=True, help="e.g. y1=1, y1=y2=1, y-1=y0=0, x0=1")
    _common(p, "depth")

    for name, what in (("freq-bernoulli", "fair-coin"), ("freq-lebesgue", "Lebesgue")):
        p = sub.add_parser(name, help=f"Monte Carlo digit-1 frequency, {what} input")
        _common(p, "length", "trials", "seed", "threads")

    p = sub.add_parser("omega", help="digit-1 frequency interval from block words")
    p.add_argument("-L", "--truncation", type=int, dest="truncation", help="longest block word")
    _common(p)

    p = sub.add_parser("dimension", help="dimension of the frequency level set")
    p.add_argument("--gamma", type=_rational, help="frequency p/q")
    p.add_argument("--grid", type=int, help="scan this many points over the feasible range")
    p.add_argument("--csv", action="store_true", help="CSV output for --grid")
    _common(p)

    p = sub.add_parser("certificate", help="singularity certificate")
    p.add_argument("-L", "--truncation", type=int, dest="truncation")
    _common(p, "depth")

    p = sub.add_parser("report", help="full golden-mean reproduction plus multinacci table")
    _common(p, "depth", "max_order")
    return parser


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    cfg: dict[str, str] = {}
    if getattr(args, "config", None):
        cp = configparser.ConfigParser()
        if not cp.read(args.config):
            raise UsageError(f"cannot read config {args.config!r}")
        if cp.has_section("defaults"):
            cfg = {k.replace("-", "_"): v for k, v in cp["defaults"].items()}
        unknown = set(cfg) - set(BUILTIN)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, default in BUILTIN.items():
        if not hasattr(args, key):
            continue
        if getattr(args, key, None) is None:
            setattr(args, key, int(cfg[key]) if key in cfg else default)
    return args


def _emit(obj: dict, args) -> None:
    # every report carries version, order and seed (null when nothing is random)
    obj = {"version": __version__, "beta_order": args.beta_order,
           "seed": getattr(args, "seed", None), **obj}
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


# -- subcommands ---------------------------------------------------------------

def cmd_normalize(args, params) -> int:
    from .normalize import normalize, normalize_two_sided

    word = args.word if args.word is not None else sys.stdin.read().strip()
    if "|" in word:
        res = normalize_two_sided(TwoSidedWord.parse(word), params)
        marks = "".join("^" if f else "?" for f in res.final)
        if args.json:
            _emit({"beta_order": params.order, "input": word, "normal": str(res.word),
                   "final": marks}, args)
        else:
            print(str(res.word))
            print(marks[: res.word.origin + 1] + " " + marks[res.word.origin + 1:])
        return 0
    out = normalize(word, params)
    if args.json:
        _emit({"beta_order": params.order, "input": word, "normal": out}, args)
    else:
        print(out)
    return 0


def cmd_exact_prob(args, params) -> int:
    from .probability import prob_event

    br = prob_event(args.event, args.depth, params)
    if args.json:
        _emit({"beta_order": params.order, **br.to_json(args.event)}, args)
    else:
        print(f"P({args.event}) in [{float(br.lower):.12f}, {float(br.upper):.12f}]"
              f"  width {float(br.width):.3e}  depth {br.depth}")
        print(f"  lower {to_fraction_string(br.lower)}")
        print(f"  upper {to_fraction_string(br.upper)}")
    return 0


def _freq(args, params, which: str) -> int:
    from .ergodic import mc_frequency_bernoulli, mc_frequency_lebesgue

    fn = mc_frequency_bernoulli if which == "bernoulli" else mc_frequency_lebesgue
    rep = fn(args.length, args.trials, args.seed, params, threads=args.threads)
    if args.json:
        _emit({"measure": which, **rep.to_json()}, args)
    else:
        print(f"{which} digit-1 frequency: {rep.estimate:.8f} +- {rep.stderr:.2e}"
              f"  ({rep.n_samples} x {rep.sequence_length}, seed {rep.seed})")
        print(f"  alpha(1) = {float(rep.reference_parry):.8f}")
        if rep.reference_bernoulli is not None:
            print(f"  bernoulli reference = {to_fraction_string(rep.reference_bernoulli)}"
                  f" = {float(rep.reference_bernoulli):.8f}")
    return 0


def _default_truncation(params: BetaParams) -> int:
    return {2: 40, 3: 200}.get(params.order, 60 * params.order)


def cmd_omega(args, params) -> int:
    from .probability import expected_block_length_oracle, omega_frequency

    L = args.truncation or _default_truncation(params)
    fr = omega_frequency(params, L)
    en = fr.enumeration
    obj = {
        "beta_order": params.order,
        "truncation_length": L,
        "lower": to_fraction_string(fr.lower),
        "upper": to_fraction_string(fr.upper),
        "width": float(fr.width),
        "captured_mass": to_fraction_string(en.captured_mass),
        "expected_length": to_fraction_string(en.expected_length + en.tail_length),
        "expected_length_oracle": to_fraction_string(expected_block_length_oracle(params)),
    }
    if args.json:
        _emit(obj, args)
    else:
        print(f"frequency in [{float(fr.lower):.10f}, {float(fr.upper):.10f}]"
              f"  width {float(fr.width):.3e}  L={L}")
        print(f"  captured mass {float(en.captured_mass):.10f},"
              f" expected block length {obj['expected_length']}")
    return 0


def cmd_dimension(args, params) -> int:
    from .dimension import dim_A_gamma, max_frequency

    if args.grid:
        top = max_frequency(params)
        rows = []
        for i in range(args.grid + 1):
            g = top * Fraction(i, args.grid)
            r = dim_A_gamma(g, params)
            rows.append((to_fraction_string(g), float(g), r.max_entropy, r.dimension))
        if args.csv:
            w = csv.writer(sys.stdout, lineterminator="\n")
            w.writerow(["gamma", "gamma_float", "max_entropy", "dimension"])
            for row in rows:
                w.writerow([row[0], repr(row[1]), repr(row[2]), repr(row[3])])
        elif args.json:
            _emit({"beta_order": params.order, "grid": [
                {"gamma": a, "max_entropy": c, "dimension": d} for a, _, c, d in rows]}, args)
        else:
            for a, b, c, d in rows:
                print(f"{a:>12}  {b:.6f}  {d:.10f}")
        return 0
    if args.gamma is None:
        raise UsageError("dimension needs --gamma p/q or --grid N")
    r = dim_A_gamma(args.gamma, params)
    if args.json:
        _emit({"beta_order": params.order, **r.to_json()}, args)
    else:
        print(f"dim A_gamma at gamma = {to_fraction_string(args.gamma)}: {r.dimension:.10f}")
        print(f"  entropy {r.max_entropy:.12f} nats, log beta {r.lyapunov:.12f}")
    return 0


def cmd_certificate(args, params) -> int:
    from .dimension import singularity_certificate

    cert = singularity_certificate(params, L=args.truncation, depth=args.depth)
    if args.json:
        _emit(cert.to_json(), args)
    else:
        lo, hi = cert.bernoulli_lower, cert.bernoulli_upper
        print(f"beta order {params.order}")
        print(f"  bernoulli frequency in [{float(lo):.10f}, {float(hi):.10f}] ({cert.bernoulli_source})")
        print(f"  alpha(1) = {float(cert.alpha1):.10f}")
        print(f"  {cert.verdict}")
    return 0


def cmd_report(args, params) -> int:
    from .dimension import singularity_certificate
    from .ergodic import parry_alpha1
    from .probability import closed_form_lemmas, omega_frequency, prob_event

    golden = BetaParams.multinacci(2)
    exact = closed_form_lemmas(golden)
    events = []
    for ev, q in exact.items():
        br = prob_event(ev, args.depth, golden)
        events.append({**br.to_json(ev), "exact": to_fraction_string(q),
                       "contains": br.contains(q)})
    cert = singularity_certificate(golden, depth=args.depth)
    table = []
    for n in range(2, args.max_order + 1):
        p = BetaParams.multinacci(n)
        L = _default_truncation(p)
        fr = omega_frequency(p, L)
        a1 = parry_alpha1(p)
        table.append({
            "order": n,
            "beta": p.value,
            "alpha1": float(a1),
            "omega_L": L,
            "bernoulli_lower": to_fraction_string(fr.lower),
            "bernoulli_upper": to_fraction_string(fr.upper),
            "bernoulli_mid": fr.midpoint,
            "width": float(fr.width),
        })
    if args.json:
        _emit({"beta_order": 2, "depth": args.depth, "events": events,
               "certificate": cert.to_json(), "multinacci": table}, args)
        return 0
    print(f"golden mean, depth {args.depth}")
    for row in events:
        lo, hi = Fraction(row["lower"]), Fraction(row["upper"])
        print(f"  P({row['event']:>9}) = {row['exact']:>5}   bracket [{float(lo):.12f},"
              f" {float(hi):.12f}]  {'ok' if row['contains'] else 'MISS'}")
    print(f"  alpha(1) = {float(cert.alpha1):.10f}")
    print(f"  {cert.verdict}")
    print()
    print(f"{'n':>2} {'beta':>10} {'alpha(1)':>12} {'bernoulli':>12} {'width':>9}   L")
    for row in table:
        print(f"{row['order']:>2} {row['beta']:>10.6f} {row['alpha1']:>12.8f}"
              f" {row['bernoulli_mid']:>12.8f} {row['width']:>9.1e}   {row['omega_L']}")
    return 0


COMMANDS = {
    "normalize": cmd_normalize,
    "exact-prob": cmd_exact_prob,
    "freq-bernoulli": lambda a, p: _freq(a, p, "bernoulli"),
    "freq-lebesgue": lambda a, p: _freq(a, p, "lebesgue"),
    "omega": cmd_omega,
    "dimension": cmd_dimension,
    "certificate": cmd_certificate,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on unknown flags
    try:
        resolve(args)
    except UsageError as exc:
        parser.error(str(exc))
    try:
        params = BetaParams.multinacci(args.beta_order)
        return COMMANDS[args.command](args, params)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError, RuntimeError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
