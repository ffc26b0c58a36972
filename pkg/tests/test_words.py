import random

import pytest
from hypothesis import given, strategies as st

from betafreq.field import BetaParams
from betafreq.words import (
    TwoSidedWord,
    is_normal_form,
    lex_compare,
    parse_blocks,
    separator_cuts,
    shift,
)

bits = st.text(alphabet="01", max_size=60)


def test_two_sided_parse_and_access():
    w = TwoSidedWord.parse("0101|1011")
    assert w.origin == 3
    assert w[0] == 1 and w[-1] == 0 and w[1] == 1 and w[4] == 1
    assert (w.first, w.last) == (-3, 4)
    assert str(w) == "0101|1011"
    assert w.past() == "0101" and w.future() == "1011"
    with pytest.raises(IndexError):
        w[5]
    with pytest.raises(IndexError):
        w[-4]


@pytest.mark.parametrize("text", ["0101", "|11", "01|1|0", "01|2"])
def test_two_sided_parse_errors(text):
    with pytest.raises(ValueError):
        TwoSidedWord.parse(text)


def test_shift_moves_origin():
    w = TwoSidedWord.parse("0101|1011")
    s = shift(w, 2)
    assert s[0] == w[2] and s[-3] == w[-1]
    assert shift(s, -2) == w


def test_lex_compare():
    assert lex_compare("0110", "1000") == -1
    assert lex_compare("1000", "0110") == 1
    assert lex_compare("", "") == 0
    with pytest.raises(ValueError):
        lex_compare("01", "011")


def test_normal_form_predicate(golden, trib):
    assert is_normal_form("1000", golden)
    assert not is_normal_form("011", golden)
    assert is_normal_form("11", golden)   # a leading run is fine
    assert is_normal_form("011", trib)
    assert not is_normal_form("0111", trib)


def test_block_cuts(golden):
    assert separator_cuts("0000", "00") == [0, 2]
    assert parse_blocks("0000", golden).blocks == ("00", "00")
    assert parse_blocks("0110010100", golden).blocks == ("011", "00101", "00")
    assert parse_blocks("", golden).blocks == ()
    assert parse_blocks("111", golden).blocks == ("111",)


@given(bits, st.integers(min_value=2, max_value=5))
def test_blocks_start_with_separator(word, n):
    p = BetaParams.multinacci(n)
    d = parse_blocks(word, p)
    assert d.join() == word
    assert all(b.startswith("0" * n) for b in d.blocks[1:])
    assert all(b for b in d.blocks)


def test_block_round_trip_bulk(golden, trib):
    rng = random.Random(7)
    for i in range(10_000):
        p = golden if i % 2 else trib
        w = "".join(rng.choice("01") for _ in range(rng.randint(0, 500)))
        assert parse_blocks(w, p).join() == w
