from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from betafreq.field import (
    BetaParams,
    FieldError,
    compare,
    dyadic_enclosure,
    evaluate_word,
    field_arith,
    golden_mean,
    to_fraction_string,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=50)
orders = st.integers(min_value=2, max_value=5)


@st.composite
def elements(draw, order=None):
    n = order if order is not None else draw(orders)
    p = BetaParams.multinacci(n)
    return p.element(draw(st.lists(fractions, min_size=n, max_size=n)))


@st.composite
def triples(draw):
    n = draw(orders)
    return tuple(draw(elements(n)) for _ in range(3))


def test_minimal_polynomial_holds():
    for n in range(2, 7):
        p = BetaParams.multinacci(n)
        b = p.beta
        assert (b ** n - sum((b ** i for i in range(n)), p.zero)).is_zero()
        # 1 = b^-1 + ... + b^-n
        assert sum((p.beta_inv ** i for i in range(1, n + 1)), p.zero) == p.one


def test_golden_identities(golden):
    b = golden.beta
    assert b * b == b + 1
    assert golden.beta_inv + golden.beta_inv ** 2 == golden.one
    assert abs(golden.value - (1 + 5 ** 0.5) / 2) < 1e-15
    alpha1 = 1 / (b * b + 1)
    assert alpha1 < Fraction(5, 18)
    assert compare(alpha1, Fraction(5, 18)) == -1


def test_enclosure_brackets_root():
    for n in (2, 3, 4):
        lo, hi = dyadic_enclosure(n, 64)
        assert lo < hi and hi - lo == Fraction(1, 1 << 64)
        assert float(lo) <= BetaParams.multinacci(n).value <= float(hi)


def test_non_multinacci_rejected():
    with pytest.raises(NotImplementedError):
        BetaParams.from_polynomial((1, -2, -1))
    with pytest.raises(ValueError):
        BetaParams.multinacci(1)


def test_division_by_zero(golden):
    with pytest.raises((ZeroDivisionError, FieldError)):
        golden.one / golden.zero


def test_evaluate_word(golden, trib):
    assert evaluate_word("", golden) == golden.zero
    assert evaluate_word("11", golden) == golden.one
    assert evaluate_word("111", trib) == trib.one
    assert evaluate_word("011", golden) == evaluate_word("100", golden)
    with pytest.raises(ValueError):
        evaluate_word("012", golden)


def test_fraction_strings():
    assert to_fraction_string(Fraction(5, 18)) == "5/18"
    assert to_fraction_string(Fraction(-3)) == "-3/1"


@given(triples())
def test_ring_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == a.params.zero
    assert field_arith(a, b, "add") == a + b
    assert field_arith(a, b, "mul") == a * b


@given(elements())
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inverse() == a.params.one
    assert (a / a) == a.params.one


@given(fractions, fractions)
def test_compare_agrees_with_rationals(x, y):
    p = golden_mean()
    a, b = p.const(x), p.const(y)
    expected = (x > y) - (x < y)
    assert compare(a, b) == expected
    assert compare(a, y) == expected


@given(elements(2), elements(2))
def test_compare_agrees_with_floats_when_far(a, b):
    fa, fb = float(a), float(b)
    if abs(fa - fb) > 1e-9:
        assert compare(a, b) == (1 if fa > fb else -1)
    assert compare(a, a) == 0
