import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from betafreq.dimension import (
    InfeasibleFrequency,
    certificate_from_interval,
    closed_form_entropy,
    concavity_defect,
    dim_A_gamma,
    lagrangian_residual,
    legendre_entropy,
    markov_stats,
    max_frequency,
    optimize_entropy,
    parry_transitions,
    singularity_certificate,
)
from betafreq.ergodic import parry_alpha1
from betafreq.field import BetaParams


def _h(p):
    return -p * math.log(p) - (1 - p) * math.log(1 - p)


def test_bound_at_five_eighteenths(golden):
    oracle = Fraction(13, 18) * _h(5 / 13) / math.log(golden.value)
    d = dim_A_gamma(Fraction(5, 18), golden).dimension
    assert round(d, 6) == round(oracle, 6) == 0.999978
    assert d < 1


def test_full_dimension_at_alpha1(golden, trib):
    assert abs(dim_A_gamma(parry_alpha1(golden), golden).dimension - 1) < 1e-10
    assert abs(dim_A_gamma(parry_alpha1(trib), trib).dimension - 1) < 1e-9


def test_degenerate_and_infeasible(golden, trib):
    assert dim_A_gamma(0, golden).dimension == 0
    assert dim_A_gamma(Fraction(1, 2), golden).dimension == 0
    assert dim_A_gamma(Fraction(2, 3), trib).dimension == 0
    for bad in (Fraction(-1, 10), Fraction(51, 100)):
        with pytest.raises(InfeasibleFrequency, match="frequency outside subshift spectrum"):
            dim_A_gamma(bad, golden)
    with pytest.raises(ValueError):
        dim_A_gamma(Fraction(1, 3), trib, method="closed")


def test_closed_form_matches_optimizer_on_grid(golden):
    for i in range(1, 101):
        g = 0.5 * i / 101
        ent, p = optimize_entropy(g, golden)
        assert abs(ent - closed_form_entropy(g)) < 1e-8
        assert abs(p[0] - g / (1 - g)) < 1e-5


@pytest.mark.parametrize("order", [3, 4, 5])
def test_optimizer_matches_tilted_transfer_matrix(order):
    p = BetaParams.multinacci(order)
    top = float(max_frequency(p))
    for frac in (0.1, 0.35, 0.6, 0.9):
        g = frac * top
        ent, x = optimize_entropy(g, p)
        assert abs(ent - legendre_entropy(g, p)) < 1e-9
        assert lagrangian_residual(x) <= 1e-6
        assert abs(markov_stats(x)[1] - g) < 1e-10


def test_parry_transitions_give_maximal_entropy(trib):
    ent, freq, _ = markov_stats(parry_transitions(trib))
    assert abs(ent - math.log(trib.value)) < 1e-12
    assert abs(freq - float(parry_alpha1(trib))) < 1e-12


@pytest.mark.parametrize("order", [2, 3])
def test_concave(order):
    assert concavity_defect(BetaParams.multinacci(order), 120) <= 1e-9


def test_maximum_sits_at_alpha1(golden):
    grid = [i / 2000 for i in range(1, 1000)]
    best = max(grid, key=lambda g: dim_A_gamma(g, golden).dimension)
    assert abs(best - float(parry_alpha1(golden))) <= 1 / 2000


@given(st.fractions(min_value=0, max_value=Fraction(1, 2)))
def test_dimension_in_unit_interval(g):
    from betafreq.field import golden_mean

    d = dim_A_gamma(g, golden_mean()).dimension
    assert 0 <= d <= 1


def test_certificate_golden(golden):
    cert = singularity_certificate(golden, depth=24)
    assert cert.separated and cert.side == "above"
    assert cert.bernoulli_lower == cert.bernoulli_upper == Fraction(5, 18)
    assert cert.verdict.startswith("singular")
    assert round(cert.dimension_bound, 6) == 0.999978
    js = cert.to_json()
    assert js["bernoulli_frequency"]["lower"] == "5/18"


def test_certificate_without_separation(golden):
    a1 = parry_alpha1(golden)
    cert = certificate_from_interval(golden, Fraction(1, 4), Fraction(3, 10), "test")
    assert not cert.separated
    assert cert.verdict == "no separation, no certificate"
    assert cert.dimension_bound is None
    assert 0.25 < float(a1) < 0.3
