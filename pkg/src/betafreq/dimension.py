"""Frequency-constrained entropy on the multinacci subshift and the singularity certificate.

The admissible greedy sequences are those without ``n`` consecutive ones;
a stationary Markov measure on it is given by ``p[r] = P(next = 1 | current
1-run has length r)`` for ``r < n - 1``. The Hausdorff dimension of the set of
points with digit-1 frequency gamma is the largest entropy of such a measure
with frequency gamma, divided by the Lyapunov exponent ``log beta``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np
from scipy.optimize import brentq, minimize

from .field import BetaParams, FieldElement, compare, to_fraction_string
from .ergodic import orbit_of_one, parry_alpha1

Frequency = Union[Fraction, float, FieldElement]


class InfeasibleFrequency(ValueError):
    pass


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log(p) - (1 - p) * math.log1p(-p)


def max_frequency(params: BetaParams) -> Fraction:
    """Largest digit-1 frequency allowed by the subshift: ``(n-1)/n`` from ``(1^{n-1} 0)^inf``."""
    return Fraction(params.order - 1, params.order)


def markov_stats(p: np.ndarray) -> tuple[float, float, np.ndarray]:
    """(entropy in nats, digit-1 frequency, stationary law) for run-length transitions ``p``."""
    p = np.append(np.asarray(p, dtype=float), 0.0)
    weights = np.cumprod(np.concatenate(([1.0], p[:-1])))
    pi = weights / weights.sum()
    ent = sum(pi[r] * binary_entropy(p[r]) for r in range(p.size))
    return float(ent), float(pi @ p), pi


def closed_form_entropy(gamma: float) -> float:
    """Golden mean: ``(1 - g) H(g / (1 - g))`` in nats."""
    if gamma <= 0.0 or gamma >= 0.5:
        return 0.0
    return (1 - gamma) * binary_entropy(gamma / (1 - gamma))


def parry_transitions(params: BetaParams) -> np.ndarray:
    """Transition parameters of the measure of maximal entropy: ``p[r] = t_{r+1} / (b t_r)``."""
    t = [float(x) for x in orbit_of_one(params)]
    b = params.value
    return np.array([t[r + 1] / (b * t[r]) for r in range(params.order - 1)])


def optimize_entropy(gamma: float, params: BetaParams, tol: float = 1e-10) -> tuple[float, np.ndarray]:
    """Maximize Markov entropy subject to digit-1 frequency ``gamma`` (SLSQP).

    Starts from the maximal-entropy measure. Returns (entropy, transitions).
    """
    n = params.order
    eps = 1e-13
    best = None
    # SLSQP can stall near the unconstrained optimum; a second start fixes it
    for x0 in (parry_transitions(params), np.full(n - 1, 0.4)):
        with warnings.catch_warnings():
            # bound clipping inside SLSQP line search is harmless here
            warnings.simplefilter("ignore", RuntimeWarning)
            res = minimize(
                lambda p: -markov_stats(p)[0],
                x0,
                method="SLSQP",
                bounds=[(eps, 1 - eps)] * (n - 1),
                constraints=[{"type": "eq", "fun": lambda p: markov_stats(p)[1] - gamma}],
                options={"ftol": 1e-15, "maxiter": 500},
            )
        x = np.clip(res.x, 0.0, 1.0)
        feasible = abs(markov_stats(x)[1] - gamma) < tol
        if res.success and feasible:
            return -float(res.fun), x
        if feasible and lagrangian_residual(x) < 1e-6 and (best is None or -res.fun > best[0]):
            best = (-float(res.fun), x)
    if best is None:
        raise RuntimeError("entropy optimization failed to converge")
    return best


def legendre_entropy(gamma: float, params: BetaParams) -> float:
    """Same maximum via the tilted transfer matrix: ``log lambda(s) - s gamma`` at ``lambda'/lambda = gamma``.

    Independent of :func:`optimize_entropy`; used to cross-check it.
    """
    n = params.order

    def log_lambda(s: float) -> float:
        a = np.zeros((n, n))
        a[:, 0] = 1.0
        for r in range(n - 1):
            a[r, r + 1] = math.exp(s)
        return math.log(max(abs(np.linalg.eigvals(a))))

    def freq(s: float, h: float = 1e-5) -> float:
        return (log_lambda(s + h) - log_lambda(s - h)) / (2 * h)

    s = brentq(lambda s: freq(s) - gamma, -60.0, 60.0, xtol=1e-14)
    return log_lambda(s) - s * gamma


def lagrangian_residual(p: np.ndarray, h: float = 1e-7) -> float:
    """Norm of the Lagrangian gradient at ``p`` by central differences, multiplier fitted."""
    p = np.asarray(p, dtype=float)
    gh = np.zeros_like(p)
    gg = np.zeros_like(p)
    for i in range(p.size):
        e = np.zeros_like(p)
        e[i] = h
        hp, fp, _ = markov_stats(p + e)
        hm, fm, _ = markov_stats(p - e)
        gh[i] = (hp - hm) / (2 * h)
        gg[i] = (fp - fm) / (2 * h)
    lam = float(gh @ gg / (gg @ gg))
    return float(np.linalg.norm(gh - lam * gg))


@dataclass
class DimensionResult:
    gamma: Frequency
    max_entropy: float
    lyapunov: float
    dimension: float
    transitions: list[float] = field(default_factory=list)
    method: str = ""

    def to_json(self) -> dict:
        g = self.gamma
        return {
            "gamma": to_fraction_string(g) if isinstance(g, Fraction) else float(g),
            "max_entropy": self.max_entropy,
            "lyapunov": self.lyapunov,
            "dimension": self.dimension,
            "transitions": self.transitions,
            "method": self.method,
        }


def dim_A_gamma(gamma: Frequency, params: BetaParams, tol: float = 1e-10,
                method: str = "auto") -> DimensionResult:
    """Hausdorff dimension of the points whose greedy digits have 1-frequency ``gamma``.

    ``method`` is ``"closed"`` (golden mean only), ``"optimizer"``, or
    ``"auto"`` (closed form for the golden mean, optimizer otherwise).
    """
    g = float(gamma)
    top = max_frequency(params)
    if compare(gamma, 0) < 0 if isinstance(gamma, FieldElement) else gamma < 0:
        raise InfeasibleFrequency("frequency outside subshift spectrum")
    if (compare(gamma, top) > 0) if isinstance(gamma, FieldElement) else Fraction(gamma) > top:
        raise InfeasibleFrequency("frequency outside subshift spectrum")
    lyap = math.log(params.value)
    if method == "auto":
        method = "closed" if params.order == 2 else "optimizer"
    if g == 0.0 or g == float(top):
        # only one admissible frequency pattern: (0)^inf or (1^{n-1} 0)^inf
        p = [0.0] * (params.order - 1) if g == 0.0 else [1.0] * (params.order - 1)
        return DimensionResult(gamma, 0.0, lyap, 0.0, p, method)
    if method == "closed":
        if params.order != 2:
            raise ValueError("closed form only for the golden mean")
        ent = closed_form_entropy(g)
        trans = [g / (1 - g)]
    elif method == "optimizer":
        ent, x = optimize_entropy(g, params, tol)
        trans = [float(v) for v in x]
    else:
        raise ValueError(f"unknown method {method!r}")
    return DimensionResult(gamma, ent, lyap, min(ent / lyap, 1.0), trans, method)


def concavity_defect(params: BetaParams, points: int = 200) -> float:
    """Largest second difference of the dimension on a uniform grid; <= 0 (up to rounding) when concave."""
    top = max_frequency(params)
    d = [dim_A_gamma(top * Fraction(i, points), params).dimension for i in range(points + 1)]
    return max(d[i - 1] + d[i + 1] - 2 * d[i] for i in range(1, points))


# -- certificate -----------------------------------------------------------------------

@dataclass
class Certificate:
    beta_order: int
    bernoulli_lower: Fraction
    bernoulli_upper: Fraction
    bernoulli_source: str
    alpha1: FieldElement
    separated: bool
    side: str
    dimension_bound: float | None
    dimension_at: Frequency | None
    verdict: str
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .ergodic import str_field

        return {
            "beta_order": self.beta_order,
            "bernoulli_frequency": {
                "lower": to_fraction_string(self.bernoulli_lower),
                "upper": to_fraction_string(self.bernoulli_upper),
                "source": self.bernoulli_source,
            },
            "alpha1": float(self.alpha1),
            "alpha1_exact": str_field(self.alpha1),
            "separated": self.separated,
            "bernoulli_side": self.side,
            "dimension_bound": self.dimension_bound,
            "verdict": self.verdict,
            **self.extra,
        }


def certificate_from_interval(params: BetaParams, lower: Fraction, upper: Fraction,
                              source: str, alpha1: FieldElement | None = None) -> Certificate:
    """Certificate from an exact interval known to contain the Bernoulli-typical frequency.

    The dimension function is concave with its maximum 1 at ``alpha1``, so on an
    interval on one side of ``alpha1`` its largest value is at the endpoint nearest
    to ``alpha1``; that value bounds the dimension of the Bernoulli convolution.
    """
    alpha1 = parry_alpha1(params) if alpha1 is None else alpha1
    below = compare(alpha1, lower) < 0   # alpha1 < lower
    above = compare(alpha1, upper) > 0   # alpha1 > upper
    if not (below or above):
        return Certificate(params.order, lower, upper, source, alpha1, False, "overlap",
                           None, None, "no separation, no certificate")
    nearest = lower if below else upper
    res = dim_A_gamma(nearest, params)
    side = "above" if below else "below"
    verdict = f"singular, dimension bound d = {res.dimension:.8f} < 1"
    if not res.dimension < 1:
        verdict = "separated, but the dimension bound is not below 1 numerically"
    return Certificate(params.order, lower, upper, source, alpha1, True, side,
                       res.dimension, nearest, verdict)


def singularity_certificate(params: BetaParams, L: int | None = None, depth: int = 40) -> Certificate:
    """Assemble frequency, alpha(1), exact separation and dimension bound.

    Golden mean: the Bernoulli frequency is the exact 5/18, confirmed by the
    certified enumeration at ``depth``. Other orders: the Omega-word interval
    at truncation ``L`` (default 200).
    """
    from .probability import closed_form_lemmas, omega_frequency, prob_center_digit

    if params.order == 2:
        exact = closed_form_lemmas(params)["x0=1"]
        bracket = prob_center_digit(depth, params)
        if not bracket.contains(exact):
            raise RuntimeError("enumeration bracket does not contain the closed form")
        cert = certificate_from_interval(params, exact, exact, "closed form")
        cert.extra["enumeration_bracket"] = bracket.to_json("x0=1")
        return cert
    L = 200 if L is None else L
    freq = omega_frequency(params, L)
    cert = certificate_from_interval(params, freq.lower, freq.upper, f"omega words, L={L}")
    cert.extra["omega_width"] = float(freq.width)
    return cert
