"""Digit frequencies of greedy beta-expansions for multinacci beta.

Fair-coin (Bernoulli) digit sequences, once normalized to greedy form, have a
different digit-1 frequency than Lebesgue-typical expansions; that gap bounds
the dimension of the Bernoulli convolution below 1.
"""

__version__ = "0.1.0"

from .field import BetaParams, FieldElement, compare, evaluate_word, golden_mean, tribonacci
from .normalize import normalize, normalize_two_sided, normalize_via_blocks
from .words import TwoSidedWord, is_normal_form, parse_blocks
from .probability import (
    ProbabilityBracket,
    closed_form_lemmas,
    omega_frequency,
    prob_center_digit,
    prob_event,
)
from .ergodic import mc_frequency_bernoulli, mc_frequency_lebesgue, parry_alpha1, parry_measure
from .dimension import dim_A_gamma, singularity_certificate

__all__ = [
    "BetaParams", "FieldElement", "compare", "evaluate_word", "golden_mean", "tribonacci",
    "normalize", "normalize_two_sided", "normalize_via_blocks",
    "TwoSidedWord", "is_normal_form", "parse_blocks",
    "ProbabilityBracket", "closed_form_lemmas", "omega_frequency", "prob_center_digit", "prob_event",
    "mc_frequency_bernoulli", "mc_frequency_lebesgue", "parry_alpha1", "parry_measure",
    "dim_A_gamma", "singularity_certificate",
]
