"""Normalization of 0/1 words to greedy normal form.

The rewrite ``0 1^n -> 1 0^n`` preserves value (it is the multinacci relation
``b^{-k} = b^{-k-1} + ... + b^{-k-n}``) and removes ``n - 1`` ones, so the
leftmost-first loop terminates after at most ``#ones / (n - 1)`` rewrites.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .field import BetaParams
from .words import (
    TwoSidedWord,
    check_word,
    forbidden_factor,
    parse_blocks,
    separator,
)


def _rewrite_leftmost(a, n):
    """In-place leftmost rewriting of a uint8 0/1 array; returns the rewrite count.

    After a rewrite at ``p`` only occurrences starting at ``p - n`` or later
    can be new, so the scan resumes there instead of at 0.
    """
    length = a.shape[0]
    start = 0
    count = 0
    while True:
        run = -1  # ones since the last zero at or after ``start``; -1: no zero yet
        p = -1
        j = start
        while j < length:
            if a[j] == 0:
                run = 0
            elif run >= 0:
                run += 1
                if run == n:
                    p = j - n
                    break
            j += 1
        if p < 0:
            return count
        a[p] = 1
        for i in range(p + 1, p + n + 1):
            a[i] = 0
        count += 1
        start = p - n if p > n else 0


_rewrite_leftmost_jit = numba.njit(cache=True, nogil=True)(_rewrite_leftmost)


def _to_array(word: str) -> np.ndarray:
    return np.frombuffer(word.encode("ascii"), dtype=np.uint8) - 48


def _to_word(a: np.ndarray) -> str:
    return (a + 48).astype(np.uint8).tobytes().decode("ascii")


def normalize_array(a: np.ndarray, params: BetaParams, copy: bool = True) -> np.ndarray:
    """Normalize a uint8 digit array (compiled path)."""
    a = np.array(a, dtype=np.uint8, copy=copy)
    _rewrite_leftmost_jit(a, params.order)
    return a


def normalize_count(word: str, params: BetaParams) -> tuple[str, int]:
    """Normal form of ``word`` together with the number of rewrites applied."""
    check_word(word)
    if not word:
        return word, 0
    a = _to_array(word).copy()
    count = _rewrite_leftmost_jit(a, params.order)
    return _to_word(a), int(count)


def normalize(word: str, params: BetaParams) -> str:
    """Greedy normal form by leftmost ``0 1^n -> 1 0^n`` rewriting."""
    return normalize_count(word, params)[0]


def normalize_naive(word: str, params: BetaParams) -> str:
    """Reference loop: find the first occurrence, rewrite, restart from the beginning."""
    pat = forbidden_factor(params)
    rep = "1" + "0" * params.order
    while True:
        i = word.find(pat)
        if i < 0:
            return word
        word = word[:i] + rep + word[i + len(pat):]


def normalize_rightmost(word: str, params: BetaParams) -> str:
    """Rewrite the rightmost occurrence first; used to check confluence."""
    pat = forbidden_factor(params)
    rep = "1" + "0" * params.order
    while True:
        i = word.rfind(pat)
        if i < 0:
            return word
        word = word[:i] + rep + word[i + len(pat):]


def normalize_via_blocks(word: str, params: BetaParams) -> str:
    """Normalize each block of :func:`parse_blocks` independently and concatenate."""
    return "".join(normalize(b, params) for b in parse_blocks(word, params).blocks)


def final_mask(normal: str, params: BetaParams, open_left: bool, open_right: bool) -> list[bool]:
    """Which digits of an already-normalized window are unchanged by every extension.

    Right extensions push carries leftward; a carry stops inside the last
    ``0^n`` block, flipping at most its final zero, so positions up to
    ``a + n - 2`` are safe (``a`` = start of the last ``0^n``). A carry also
    never changes a leading run of ones of a word that has no left extension.
    Left extensions only rewrite the leading run of ones; the first zero and
    everything after it are safe.
    """
    n = params.order
    length = len(normal)
    first_zero = normal.find("0")
    if first_zero < 0:
        first_zero = length
    if open_right:
        a = normal.rfind(separator(params))
        right_limit = a + n - 2 if a >= 0 else -1
        protected_run = 0 if open_left else first_zero
    else:
        right_limit = length - 1
        protected_run = 0
    left_start = first_zero if open_left else 0
    return [
        (j >= left_start) and (j <= right_limit or j < protected_run)
        for j in range(length)
    ]


@dataclass(frozen=True)
class TwoSidedResult:
    word: TwoSidedWord
    final: tuple[bool, ...]
    radius: int
    stable: bool

    def is_final(self, coord: int) -> bool:
        idx = self.word.origin + coord
        return 0 <= idx < len(self.final) and self.final[idx]

    def digit(self, coord: int) -> int | None:
        """Digit at ``coord`` if final, else None."""
        return self.word[coord] if self.is_final(coord) else None


def normalize_two_sided(w: TwoSidedWord, params: BetaParams, radius: int = 0) -> TwoSidedResult:
    """Normalize a two-sided window and mark which digits are final.

    ``stable`` is True iff every coordinate in ``[-radius, radius]`` lies in the
    window and is final, i.e. equals the corresponding digit of the
    normalization of any two-sided extension of the window.
    """
    normal = normalize_via_blocks(w.bits, params)
    mask = final_mask(normal, params, open_left=True, open_right=True)
    out = TwoSidedWord(normal, w.origin)
    stable = all(
        0 <= w.origin + c < len(normal) and mask[w.origin + c]
        for c in range(-radius, radius + 1)
    )
    return TwoSidedResult(out, tuple(mask), radius, stable)


def classify_center(y_minus1: int, y0: int, y1: int, y2: int) -> int:
    """Digit at coordinate 0 after joining normalized past ``...y_{-1} y_0`` and
    normalized future ``y_1 y_2 ...`` (golden mean)."""
    if y0 == 1 and y1 == 0:
        return 1
    if y_minus1 == 0 and y0 == 0 and y1 == 1 and y2 == 1:
        return 1
    return 0
