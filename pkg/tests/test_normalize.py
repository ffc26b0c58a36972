import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from betafreq.ergodic import greedy_expand
from betafreq.field import BetaParams, evaluate_word
from betafreq.normalize import (
    classify_center,
    final_mask,
    normalize,
    normalize_array,
    normalize_count,
    normalize_naive,
    normalize_rightmost,
    normalize_two_sided,
    normalize_via_blocks,
)
from betafreq.words import TwoSidedWord, is_normal_form, lex_compare

orders = st.integers(min_value=2, max_value=5)
words = st.text(alphabet="01", max_size=120)


def test_basic_rewrites(golden, trib):
    assert normalize("011", golden) == "100"
    assert normalize("", golden) == ""
    assert normalize("0111", trib) == "1000"
    assert normalize("0101", golden) == "0101"
    assert normalize("01011", golden) == "10000"


@pytest.mark.parametrize("k", range(9))
def test_alternating_families(golden, k):
    assert normalize("01" * k + "1", golden) == "1" + "0" * (2 * k)
    assert normalize("01" * k + "00", golden) == "01" * k + "00"
    assert normalize("0" + "1" * (2 * k), golden) == "10" * k + "0"
    assert normalize("0" + "1" * (2 * k + 1), golden) == "10" * k + "01"


@given(words, orders)
def test_value_preserved(w, n):
    p = BetaParams.multinacci(n)
    out = normalize(w, p)
    assert len(out) == len(w)
    assert evaluate_word(out, p) == evaluate_word(w, p)


@given(words, orders)
def test_idempotent_and_normal(w, n):
    p = BetaParams.multinacci(n)
    out = normalize(w, p)
    assert is_normal_form(out, p)
    assert normalize(out, p) == out


@given(words, orders)
def test_normal_form_is_lexicographically_larger(w, n):
    p = BetaParams.multinacci(n)
    assert lex_compare(normalize(w, p), w) >= 0


@given(words, orders)
def test_rewrite_count_bound(w, n):
    p = BetaParams.multinacci(n)
    _, count = normalize_count(w, p)
    # each rewrite removes n - 1 ones
    assert count * (n - 1) <= w.count("1")


@given(words, orders)
def test_confluence(w, n):
    p = BetaParams.multinacci(n)
    out = normalize(w, p)
    assert normalize_naive(w, p) == out
    assert normalize_rightmost(w, p) == out
    assert normalize_via_blocks(w, p) == out


def test_array_path_matches_string(golden):
    rng = np.random.default_rng(1)
    a = rng.integers(0, 2, size=5000, dtype=np.uint8)
    w = "".join(map(str, a))
    assert "".join(map(str, normalize_array(a, golden))) == normalize(w, golden)


@given(words.filter(lambda w: w.startswith("0")), orders)
def test_normal_form_is_greedy_expansion(w, n):
    p = BetaParams.multinacci(n)
    x = evaluate_word(w, p)
    if x >= p.one:
        return
    assert normalize(w, p) == greedy_expand(x, len(w), p)


def _extensions(max_len):
    for k in range(max_len + 1):
        for t in itertools.product("01", repeat=k):
            yield "".join(t)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_final_digits_survive_all_extensions(n):
    p = BetaParams.multinacci(n)
    ext = list(_extensions(4))
    rng = random.Random(n)
    for _ in range(150):
        core = "".join(rng.choice("01") for _ in range(rng.randint(1, 10)))
        norm = normalize(core, p)
        mask = final_mask(norm, p, open_left=True, open_right=True)
        for left in ext:
            for right in ext:
                full = normalize(left + core + right, p)
                seg = full[len(left): len(left) + len(core)]
                for j, ok in enumerate(mask):
                    if ok:
                        assert seg[j] == norm[j], (core, left, right, j)


def test_two_sided_window(golden):
    res = normalize_two_sided(TwoSidedWord.parse("0101|1011"), golden, radius=1)
    assert str(res.word) == "1000|0100"
    assert res.stable
    assert res.digit(0) == 0
    assert res.digit(-3) is None   # leading run may still be rewritten from the left


def test_classify_center():
    assert classify_center(0, 1, 0, 0) == 1
    assert classify_center(0, 0, 1, 1) == 1
    assert classify_center(1, 0, 1, 1) == 0
    assert classify_center(0, 0, 0, 1) == 0


def test_bulk_block_equivalence(golden, trib):
    rng = random.Random(11)
    for i in range(1000):
        p = golden if i % 2 else trib
        w = "".join(rng.choice("01") for _ in range(rng.randint(0, 200)))
        assert normalize_via_blocks(w, p) == normalize(w, p)
