"""Greedy beta-transformation, Parry measure and Monte Carlo digit frequencies."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .field import BetaParams, FieldElement, compare, to_fraction_string
from .normalize import normalize_array

__all__ = [
    "ParryMeasure",
    "FrequencyReport",
    "greedy_step",
    "greedy_expand",
    "orbit_of_one",
    "parry_measure",
    "parry_alpha1",
    "block_law",
    "cylinder_length",
    "digit_frequency",
    "mc_frequency_bernoulli",
    "mc_frequency_lebesgue",
]


class DomainError(ValueError):
    """Point outside ``[0, 1/(beta - 1)]``."""


def upper_end(params: BetaParams) -> FieldElement:
    return (params.beta - 1).inverse()


def greedy_step(x: FieldElement, params: BetaParams) -> tuple[int, FieldElement]:
    """One application of T: digit 0 and ``b x`` below ``1/b``, digit 1 and ``b x - 1`` otherwise."""
    if compare(x, 0) < 0 or compare(x, upper_end(params)) > 0:
        raise DomainError(f"{float(x)} outside [0, 1/(beta-1)]")
    bx = params.beta * x
    if compare(x, params.beta_inv) >= 0:
        return 1, bx - 1
    return 0, bx


def greedy_expand(x: FieldElement, length: int, params: BetaParams) -> str:
    """First ``length`` greedy digits of ``x``."""
    digits = []
    for _ in range(length):
        d, x = greedy_step(x, params)
        digits.append("01"[d])
    return "".join(digits)


def orbit_of_one(params: BetaParams, max_steps: int = 64) -> list[FieldElement]:
    """``[1, T(1), T^2(1), ...]`` up to and including the first 0."""
    orbit = [params.one]
    while not orbit[-1].is_zero():
        if len(orbit) > max_steps:
            raise ValueError("orbit of 1 does not terminate; density is not a finite sum")
        orbit.append(greedy_step(orbit[-1], params)[1])
    return orbit


def _overlap(a0, a1, b0, b1) -> FieldElement:
    lo = a0 if compare(a0, b0) >= 0 else b0
    hi = a1 if compare(a1, b1) <= 0 else b1
    return hi - lo if compare(hi, lo) > 0 else hi.params.zero


@dataclass(frozen=True)
class ParryMeasure:
    """Invariant density ``C sum_i b^{-i} 1[0, T^i(1)]`` as a step function on [0, 1].

    ``breakpoints`` is the orbit of 1 (decreasing, ending in 0); plateau ``j``
    is ``[breakpoints[j+1], breakpoints[j])`` with density ``plateaus[j]``.
    """

    params: BetaParams
    breakpoints: tuple[FieldElement, ...]
    plateaus: tuple[FieldElement, ...]
    normalizer: FieldElement

    def density(self, x: FieldElement) -> FieldElement:
        for j, value in enumerate(self.plateaus):
            if compare(x, self.breakpoints[j + 1]) >= 0 and compare(x, self.breakpoints[j]) < 0:
                return value
        return self.params.zero

    def measure(self, a: FieldElement, b: FieldElement) -> FieldElement:
        """Exact mu([a, b])."""
        p = self.params
        binv = p.beta_inv
        total = p.zero
        weight = p.one
        for t in self.breakpoints[:-1]:
            total = total + weight * _overlap(a, b, p.zero, t)
            weight = weight * binv
        return self.normalizer * total

    def total_mass(self) -> FieldElement:
        return self.measure(self.params.zero, self.params.one)

    def preimage_measure(self, a: FieldElement, b: FieldElement) -> FieldElement:
        """mu(T^{-1}[a, b]) for ``[a, b] within [0, 1]`` (mu lives on [0, 1])."""
        p = self.params
        binv = p.beta_inv
        # branch 0: x in [0, 1/b), T x = b x; branch 1: x in [1/b, 1], T x = b x - 1
        left = self.measure(a * binv, b * binv)
        lo1, hi1 = (a + 1) * binv, (b + 1) * binv
        hi1 = hi1 if compare(hi1, p.one) <= 0 else p.one
        right = self.measure(lo1, hi1) if compare(hi1, lo1) > 0 else p.zero
        return left + right

    def plateau_intervals(self) -> list[tuple[FieldElement, FieldElement]]:
        return [(self.breakpoints[j + 1], self.breakpoints[j]) for j in range(len(self.plateaus))]


def parry_measure(params: BetaParams) -> ParryMeasure:
    orbit = orbit_of_one(params)
    binv = params.beta_inv
    # integral of sum_i b^{-i} 1[0, t_i] is sum_i b^{-i} t_i
    mass = params.zero
    weight = params.one
    for t in orbit[:-1]:
        mass = mass + weight * t
        weight = weight * binv
    c = mass.inverse()
    plateaus = []
    acc = params.zero
    weight = params.one
    for _ in orbit[:-1]:
        acc = acc + weight
        weight = weight * binv
        plateaus.append(c * acc)
    return ParryMeasure(params, tuple(orbit), tuple(plateaus), c)


def parry_alpha1(params: BetaParams) -> FieldElement:
    """mu([1/b, 1]): the Lebesgue-typical frequency of the digit 1."""
    return parry_measure(params).measure(params.beta_inv, params.one)


# -- Lebesgue digit law ------------------------------------------------------------

def block_law(params: BetaParams) -> list[FieldElement]:
    """Probabilities of the blocks ``1^j 0`` (j = 0..n-1) in the greedy digits of a uniform x in [0, 1).

    A cylinder ending in a 1-run of length r maps under T^k onto
    ``[0, T^r(1))``, so every 0 restarts the process on [0, 1) and the
    blocks are i.i.d. with ``P(1^j 0) = b^{-(j+1)}``.
    """
    binv = params.beta_inv
    return [binv ** (j + 1) for j in range(params.order)]


def cylinder_length(word: str, params: BetaParams) -> FieldElement:
    """Lebesgue length of the greedy cylinder of an admissible word inside [0, 1)."""
    run = len(word) - len(word.rstrip("1"))
    if run >= params.order:
        return params.zero
    orbit = orbit_of_one(params)
    return params.beta_inv ** len(word) * orbit[run]


# -- Monte Carlo ---------------------------------------------------------------------

@dataclass
class FrequencyReport:
    estimate: float
    stderr: float
    sequence_length: int
    n_samples: int
    seed: int
    beta_order: int
    reference_parry: FieldElement
    reference_bernoulli: Fraction | None
    per_trial: list[float] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "beta_order": self.beta_order,
            "length": self.sequence_length,
            "trials": self.n_samples,
            "seed": self.seed,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "reference_parry": float(self.reference_parry),
            "reference_parry_exact": str_field(self.reference_parry),
            "reference_bernoulli": (
                to_fraction_string(self.reference_bernoulli)
                if self.reference_bernoulli is not None else None
            ),
        }


def str_field(x: FieldElement) -> list[str]:
    """Coefficients (``c_0, c_1, ...`` of powers of beta) as ``p/q`` strings."""
    return [to_fraction_string(c) for c in x.coeffs]


def digit_frequency(normal: np.ndarray, params: BetaParams) -> tuple[int, int]:
    """(ones, digits) over the final part of a normalized array.

    Digits after the start of the last ``0^n`` (except its first ``n - 1``
    zeros) can still change when the sequence continues, so they are dropped.
    """
    n = params.order
    if normal.shape[0] < n:
        return 0, 0
    window = np.lib.stride_tricks.sliding_window_view(normal, n)
    hits = np.flatnonzero(~window.any(axis=1))
    if hits.size == 0:
        return 0, 0
    keep = int(hits[-1]) + n - 1
    return int(normal[:keep].sum()), keep


def _combine(values: list[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std(ddof=1) / math.sqrt(arr.size))


def _batch_stderr(ones_per_batch: np.ndarray, lens: np.ndarray) -> float:
    freqs = ones_per_batch / lens
    return float(freqs.std(ddof=1) / math.sqrt(freqs.size))


def _trial_rngs(seed: int, trials: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(trials)
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def _bernoulli_trial(rng: np.random.Generator, length: int, params: BetaParams, batches: int):
    bits = rng.integers(0, 2, size=length, dtype=np.uint8)
    normal = normalize_array(bits, params, copy=False)
    ones, used = digit_frequency(normal, params)
    edges = np.linspace(0, used, batches + 1).astype(np.int64)
    csum = np.concatenate(([0], np.cumsum(normal[:used], dtype=np.int64)))
    per_batch = csum[edges[1:]] - csum[edges[:-1]]
    return ones, used, per_batch, np.diff(edges)


def mc_frequency_bernoulli(length: int, trials: int, seed: int, params: BetaParams,
                           threads: int = 1, reference_bernoulli: Fraction | None = None
                           ) -> FrequencyReport:
    """Digit-1 frequency of normalized fair-coin sequences.

    Each trial draws ``length`` fair bits from its own Philox stream spawned
    from ``seed``, normalizes them and counts ones in the final prefix. The
    standard error is across trials (batch means of the single sequence when
    ``trials == 1``).
    """
    if length < 1000:
        raise ValueError("length must be >= 1000")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rngs = _trial_rngs(seed, trials)
    run = lambda rng: _bernoulli_trial(rng, length, params, 20)  # noqa: E731
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, rngs))
    else:
        results = [run(rng) for rng in rngs]
    freqs = [ones / used if used else 0.0 for ones, used, _, _ in results]
    if trials >= 2:
        estimate, stderr = _combine(freqs)
    else:
        _, _, per_batch, lens = results[0]
        estimate, stderr = freqs[0], _batch_stderr(per_batch, lens)
    if reference_bernoulli is None and params.order == 2:
        reference_bernoulli = Fraction(5, 18)
    return FrequencyReport(estimate, stderr, length, trials, seed, params.order,
                           parry_alpha1(params), reference_bernoulli, freqs)


def _lebesgue_blocks_trial(rng: np.random.Generator, length: int, probs: np.ndarray, batches: int):
    n = probs.size
    mean_len = float(np.dot(probs, np.arange(1, n + 1)))
    count = int(length / mean_len * 1.05) + 64
    while True:
        j = rng.choice(n, size=count, p=probs)
        ends = np.cumsum(j + 1)
        if ends[-1] >= length:
            break
        count *= 2
    # expand only the ones: block k occupies [ends[k] - j[k] - 1, ends[k]); its ones come first
    digits = np.zeros(int(ends[-1]), dtype=np.uint8)
    starts = ends - j - 1
    for r in range(1, n):
        sel = starts[j >= r] + (r - 1)
        digits[sel] = 1
    digits = digits[:length]
    edges = np.linspace(0, length, batches + 1).astype(np.int64)
    csum = np.concatenate(([0], np.cumsum(digits, dtype=np.int64)))
    per_batch = csum[edges[1:]] - csum[edges[:-1]]
    return int(csum[-1]), length, per_batch, np.diff(edges)


def _lebesgue_orbit_trial(rng: np.random.Generator, length: int, params: BetaParams, bits: int):
    # uniform dyadic x in [0, 1) with ``bits`` random bits, expanded exactly
    num = int.from_bytes(rng.bytes((bits + 7) // 8), "little") >> ((-bits) % 8)
    x = params.const(Fraction(num, 1 << bits))
    word = greedy_expand(x, length, params)
    ones = word.count("1")
    return ones, length, np.array([ones]), np.array([length])


def mc_frequency_lebesgue(length: int, trials: int, seed: int, params: BetaParams,
                          threads: int = 1, method: str = "blocks", dyadic_bits: int = 128
                          ) -> FrequencyReport:
    """Digit-1 frequency of greedy expansions of uniform points in [0, 1).

    ``method="blocks"`` samples the digits through their exact law
    (:func:`block_law`); ``method="orbit"`` draws a ``dyadic_bits``-bit dyadic
    point and runs T exactly in Q(beta). The orbit method is slow and only
    meaningful for ``length`` up to about ``dyadic_bits / log2(beta)``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rngs = _trial_rngs(seed, trials)
    if method == "blocks":
        if length < 1000:
            raise ValueError("length must be >= 1000")
        probs = np.array([float(p) for p in block_law(params)])
        probs /= probs.sum()
        run = lambda rng: _lebesgue_blocks_trial(rng, length, probs, 20)  # noqa: E731
    elif method == "orbit":
        run = lambda rng: _lebesgue_orbit_trial(rng, length, params, dyadic_bits)  # noqa: E731
    else:
        raise ValueError(f"unknown method {method!r}")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, rngs))
    else:
        results = [run(rng) for rng in rngs]
    freqs = [ones / used for ones, used, _, _ in results]
    if trials >= 2:
        estimate, stderr = _combine(freqs)
    else:
        _, _, per_batch, lens = results[0]
        if per_batch.size < 2:
            raise ValueError("a single orbit trial has no error estimate; use trials >= 2")
        estimate, stderr = freqs[0], _batch_stderr(per_batch, lens)
    reference_bernoulli = Fraction(5, 18) if params.order == 2 else None
    return FrequencyReport(estimate, stderr, length, trials, seed, params.order,
                           parry_alpha1(params), reference_bernoulli, freqs)
