"""Finite and two-sided 0/1 words.

Finite words are plain ``str`` over ``'0'``/``'1'``. Two-sided windows carry
the index of coordinate 0; their text form is ``"past|future"`` where the
bar sits between coordinates 0 and 1, so coordinate 0 is the last symbol of
``past``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import BetaParams


def check_word(word: str) -> str:
    if not isinstance(word, str) or word.strip("01"):
        raise ValueError(f"not a binary word: {word!r}")
    return word


def separator(params: BetaParams) -> str:
    """The block separator ``0^n``."""
    return "0" * params.order


def forbidden_factor(params: BetaParams) -> str:
    """The rewritable factor ``0 1^n``."""
    return "0" + "1" * params.order


@dataclass(frozen=True)
class TwoSidedWord:
    """Finite window of a two-sided sequence; ``bits[origin]`` is coordinate 0."""

    bits: str
    origin: int

    def __post_init__(self):
        check_word(self.bits)

    @classmethod
    def parse(cls, text: str) -> "TwoSidedWord":
        if text.count("|") != 1:
            raise ValueError("two-sided word needs exactly one '|' marker")
        past, future = text.split("|")
        if not past:
            raise ValueError("coordinate 0 is the last symbol before '|'; past is empty")
        return cls(check_word(past) + check_word(future), len(past) - 1)

    def __str__(self):
        cut = self.origin + 1
        if not 0 <= cut <= len(self.bits):
            raise ValueError("origin outside the window; no '|' form")
        return f"{self.bits[:cut]}|{self.bits[cut:]}"

    @property
    def first(self) -> int:
        """Lowest coordinate present in the window."""
        return -self.origin

    @property
    def last(self) -> int:
        return len(self.bits) - 1 - self.origin

    def __getitem__(self, coord: int) -> int:
        idx = self.origin + coord
        if not 0 <= idx < len(self.bits):
            raise IndexError(f"coordinate {coord} outside window [{self.first}, {self.last}]")
        return int(self.bits[idx])

    def past(self) -> str:
        """Symbols at coordinates <= 0."""
        return self.bits[: max(self.origin + 1, 0)]

    def future(self) -> str:
        """Symbols at coordinates >= 1."""
        return self.bits[max(self.origin + 1, 0):]


def shift(w: TwoSidedWord, k: int) -> TwoSidedWord:
    """Left shift by ``k``: coordinate ``c`` of the result is coordinate ``c + k`` of ``w``."""
    return TwoSidedWord(w.bits, w.origin + k)


def lex_compare(u: str, v: str) -> int:
    """Lexicographic order of equal-length words: -1, 0 or 1."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")
    check_word(u)
    check_word(v)
    # '0' < '1' as characters, so str order is the lexicographic order
    return (u > v) - (u < v)


def is_normal_form(word: str, params: BetaParams) -> bool:
    """True iff ``word`` has no factor ``0 1^n`` (a leading 1-run of any length is allowed)."""
    return forbidden_factor(params) not in check_word(word)


@dataclass(frozen=True)
class BlockDecomposition:
    """Cut of a word into blocks; every block after the first starts with ``0^n``.

    ``complete`` is False when the trailing block contains no separator of its
    own beyond its leading one (so it may still change under extension).
    """

    blocks: tuple[str, ...]
    sep: str
    complete: bool = field(default=False)

    def join(self) -> str:
        return "".join(self.blocks)


def separator_cuts(word: str, sep: str) -> list[int]:
    """Start indices of separators found by a left-to-right scan that
    resumes after the end of each separator found."""
    cuts = []
    i = word.find(sep)
    while i != -1:
        cuts.append(i)
        i = word.find(sep, i + len(sep))
    return cuts


def parse_blocks(word: str, params: BetaParams) -> BlockDecomposition:
    """Split ``word`` immediately before each separator occurrence."""
    check_word(word)
    sep = separator(params)
    cuts = [c for c in separator_cuts(word, sep) if c > 0]
    bounds = [0] + cuts + [len(word)]
    blocks = tuple(word[a:b] for a, b in zip(bounds, bounds[1:]) if b > a)
    # trailing block is only known to be finished if another separator could
    # not reach back into it; a finite word never certifies that
    return BlockDecomposition(blocks, sep, complete=False)
