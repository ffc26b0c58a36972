from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from betafreq.normalize import normalize
from betafreq.probability import (
    ProbabilityBracket,
    closed_form_lemmas,
    enumerate_omega,
    expected_block_length_oracle,
    geometric_sum,
    iter_omega_words,
    omega_block,
    omega_frequency,
    parse_event,
    prob_center_digit,
    prob_event,
    prob_future_digit,
    prob_past_digit,
)

LEMMAS = {
    "y1=1": Fraction(2, 3),
    "y1=y2=1": Fraction(1, 3),
    "y0=1": Fraction(1, 3),
    "y-1=y0=0": Fraction(1, 2),
    "x0=1": Fraction(5, 18),
}


def test_closed_forms_exact(golden, trib):
    assert closed_form_lemmas(golden) == LEMMAS
    with pytest.raises(ValueError):
        closed_form_lemmas(trib)


def test_geometric_sum():
    assert geometric_sum(Fraction(1, 2), Fraction(1, 4)) == Fraction(2, 3)
    with pytest.raises(ValueError):
        geometric_sum(1, 1)


@pytest.mark.parametrize("event", list(LEMMAS))
def test_brackets_contain_closed_forms(golden, event):
    br = prob_event(event, 24, golden)
    assert br.contains(LEMMAS[event])
    assert br.width < Fraction(1, 1 << 12)


@pytest.mark.parametrize("event", ["y1=1", "y-1=y0=0", "x0=1"])
def test_brackets_nest_with_depth(golden, event):
    prev = None
    for depth in (4, 8, 12, 16):
        br = prob_event(event, depth, golden)
        if prev is not None:
            assert prev.lower <= br.lower and br.upper <= prev.upper
        prev = br


def test_case_split_of_center_digit(golden):
    case1 = prob_event("y0=1,y1=0", 30, golden)
    case2 = prob_event("y-1=y0=0,y1=y2=1", 30, golden)
    assert case1.contains(Fraction(1, 9))
    assert case2.contains(Fraction(1, 6))


def test_callable_digit_events(golden):
    br = prob_future_digit(lambda d: d[0] == 1, 1, 20, golden)
    assert br.contains(Fraction(2, 3))
    br = prob_past_digit(lambda d: d == (0, 0), 2, 20, golden)
    assert br.contains(Fraction(1, 2))


def test_event_parsing_and_errors(golden):
    e = parse_event("y-1=y0=0")
    assert e.frame == "y" and e.coords == (-1, 0)
    for bad in ("y1", "z1=1", "y1=2", "x0=1,y1=1"):
        with pytest.raises(ValueError):
            parse_event(bad)
    with pytest.raises(ValueError):
        prob_event("y5=1", 3, golden)
    with pytest.raises(ValueError):
        prob_center_digit(1, golden)


def test_bracket_validation_and_json():
    with pytest.raises(ValueError):
        ProbabilityBracket(Fraction(1, 2), Fraction(1, 3), Fraction(0), 4)
    with pytest.raises(ValueError):
        ProbabilityBracket(Fraction(1, 3), Fraction(1, 2), Fraction(0), 4)
    br = ProbabilityBracket(Fraction(1, 3), Fraction(1, 2), Fraction(1, 6), 4)
    assert br.to_json("e") == {"event": "e", "lower": "1/3", "upper": "1/2",
                               "undecided": "1/6", "depth": 4}


def test_tribonacci_brackets_are_probabilities(trib):
    br = prob_event("y1=1", 16, trib)
    assert 0 < br.lower <= br.upper < 1


def test_expected_block_length_oracle(golden, trib):
    assert expected_block_length_oracle(golden) == 6
    assert expected_block_length_oracle(trib) == 14


@pytest.mark.parametrize("order", [2, 3])
@pytest.mark.parametrize("L", [5, 9, 13])
def test_omega_aggregation_matches_explicit_words(order, L):
    from betafreq.field import BetaParams

    p = BetaParams.multinacci(order)
    if L < order + 1:
        return
    mass = length = ones = raw = Fraction(0)
    count = 0
    for w, wt in iter_omega_words(p, L):
        count += 1
        mass += wt
        length += wt * len(w)
        ones += wt * normalize(omega_block(w, p), p).count("1")
        raw += wt * w.count("1")
    en = enumerate_omega(p, L)
    assert en.word_count == count
    assert en.captured_mass == mass
    assert en.expected_length == length
    assert en.ones_normalized == ones
    assert en.ones_raw == raw


def test_omega_tail_closes_expected_length(golden, trib):
    for p in (golden, trib):
        en = enumerate_omega(p, 30)
        assert en.captured_mass + en.tail_mass == 1
        assert en.expected_length + en.tail_length == expected_block_length_oracle(p)


@given(st.integers(min_value=8, max_value=40))
def test_omega_interval_contains_limit(L):
    from betafreq.field import golden_mean

    fr = omega_frequency(golden_mean(), L)
    assert fr.contains(Fraction(5, 18))


def test_omega_interval_shrinks(golden):
    widths = [omega_frequency(golden, L).width for L in (20, 30, 40, 50)]
    assert widths == sorted(widths, reverse=True)


def test_raw_omega_frequency_is_half(golden):
    fr = omega_frequency(golden, 30, normalized=False)
    assert fr.lower == fr.upper == Fraction(1, 2)
