"""Exact arithmetic in Q(beta) for multinacci beta.

Elements are dense rational coefficient vectors ``c_0 + c_1 b + ... + c_{n-1} b^{n-1}``
reduced modulo the multinacci polynomial ``x^n - x^{n-1} - ... - x - 1``.
Order comparisons are decided exactly: equality is a coefficient test, and
the sign of a nonzero element is certified by bisecting a dyadic enclosure
of beta until interval evaluation excludes zero.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

MAX_REFINEMENT = 4096
_START_LEVEL = 64


class FieldError(ArithmeticError):
    """Raised for invalid field operations (division by zero, mixed fields)."""


def multinacci_poly(order: int) -> tuple[int, ...]:
    """Integer coefficients of ``x^n - x^{n-1} - ... - 1``, lowest degree first."""
    if order < 2:
        raise ValueError(f"multinacci order must be >= 2, got {order}")
    return tuple([-1] * order + [1])


def _poly_sign_at(poly: Sequence[int], num: int, shift: int) -> int:
    # sign of poly(num / 2**shift), exact
    deg = len(poly) - 1
    total = sum(c * num**i << (shift * (deg - i)) for i, c in enumerate(poly))
    return (total > 0) - (total < 0)


@functools.lru_cache(maxsize=None)
def _dyadic_lower(order: int, level: int) -> int:
    """Numerator ``a`` with beta in ``[a/2^level, (a+1)/2^level]``."""
    if level == 0:
        return 1
    a = _dyadic_lower(order, level - 1) * 2
    # beta > midpoint iff poly(mid) < 0 (poly increases through its root in (1, 2))
    if _poly_sign_at(multinacci_poly(order), a + 1, level) < 0:
        a += 1
    return a


def dyadic_enclosure(order: int, level: int) -> tuple[Fraction, Fraction]:
    """Enclosure of the multinacci root of width ``2^-level``."""
    if level > 12:
        # build the cache incrementally so recursion depth stays bounded
        for k in range(0, level, 256):
            _dyadic_lower(order, k)
    a = _dyadic_lower(order, level)
    return Fraction(a, 1 << level), Fraction(a + 1, 1 << level)


@dataclass(frozen=True)
class BetaParams:
    """A multinacci parameter: the root in (1, 2) of ``x^n = x^{n-1} + ... + 1``.

    Use :meth:`multinacci` (or :func:`golden_mean`, :func:`tribonacci`) rather
    than the raw constructor.
    """

    order: int
    min_poly: tuple[int, ...]
    enclosure: tuple[Fraction, Fraction]
    precision: Fraction = Fraction(1, 1 << 64)

    def __post_init__(self):
        if self.min_poly != multinacci_poly(self.order):
            raise NotImplementedError(
                "only multinacci minimal polynomials are supported"
            )
        lo, hi = self.enclosure
        if not (1 < lo <= hi < 2):
            raise ValueError("enclosure must lie inside (1, 2)")
        if _poly_sign_at_fraction(self.min_poly, lo) > 0 or _poly_sign_at_fraction(self.min_poly, hi) < 0:
            raise ValueError("enclosure does not contain the multinacci root")

    @classmethod
    def multinacci(cls, order: int, precision_bits: int = 64) -> "BetaParams":
        enclosure = dyadic_enclosure(order, precision_bits)
        return cls(order, multinacci_poly(order), enclosure, Fraction(1, 1 << precision_bits))

    @classmethod
    def from_polynomial(cls, coeffs: Sequence[int]) -> "BetaParams":
        """Accepts a minimal polynomial (lowest degree first); only multinacci ones pass."""
        coeffs = tuple(int(c) for c in coeffs)
        order = len(coeffs) - 1
        if order < 2 or coeffs != multinacci_poly(order):
            raise NotImplementedError(
                "not supported: only multinacci beta (x^n - x^{n-1} - ... - 1) is implemented"
            )
        return cls.multinacci(order)

    @property
    def value(self) -> float:
        lo, hi = self.enclosure
        return float((lo + hi) / 2)

    def element(self, coeffs: Iterable[Rational]) -> "FieldElement":
        return FieldElement(self, tuple(coeffs))

    def const(self, q: Rational) -> "FieldElement":
        return FieldElement(self, (Fraction(q),) + (Fraction(0),) * (self.order - 1))

    @property
    def zero(self) -> "FieldElement":
        return self.const(0)

    @property
    def one(self) -> "FieldElement":
        return self.const(1)

    @property
    def beta(self) -> "FieldElement":
        return FieldElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.order - 2))

    @property
    def beta_inv(self) -> "FieldElement":
        # b^{-1} = b^{n-1} - b^{n-2} - ... - 1, from dividing the relation by b
        return FieldElement(self, (Fraction(-1),) * (self.order - 1) + (Fraction(1),))


def _poly_sign_at_fraction(poly: Sequence[int], x: Fraction) -> int:
    v = sum(c * x**i for i, c in enumerate(poly))
    return (v > 0) - (v < 0)


@functools.lru_cache(maxsize=None)
def golden_mean() -> BetaParams:
    return BetaParams.multinacci(2)


@functools.lru_cache(maxsize=None)
def tribonacci() -> BetaParams:
    return BetaParams.multinacci(3)


# -- polynomial helpers over Q, lowest degree first ---------------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        factor = a[-1] / lead
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
    return q, a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_inverse_mod(a: list, m: list) -> list:
    """Inverse of ``a`` modulo irreducible ``m`` by the extended Euclidean algorithm."""
    r0, r1 = list(m), _trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _trim(r)
        qs = _poly_mul(q, s1)
        s_next = [Fraction(0)] * max(len(s0), len(qs))
        for i, c in enumerate(s0):
            s_next[i] += c
        for i, c in enumerate(qs):
            s_next[i] -= c
        s0, s1 = s1, _trim(s_next) or [Fraction(0)]
    # r1 is a nonzero constant
    return [c / r1[0] for c in s1]


class FieldElement:
    """Exact element of Q(beta). Immutable."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: BetaParams, coeffs: Sequence[Rational]):
        n = params.order
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > n:
            cs = self._reduce(cs, n)
        cs += [Fraction(0)] * (n - len(cs))
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, key, value):
        raise AttributeError("FieldElement is immutable")

    @staticmethod
    def _reduce(cs: list, n: int) -> list:
        # x^d = x^{d-n} (x^{n-1} + ... + 1)
        cs = list(cs)
        for d in range(len(cs) - 1, n - 1, -1):
            c = cs[d]
            if c:
                cs[d] = Fraction(0)
                for i in range(d - n, d):
                    cs[i] += c
        return cs[:n]

    # -- coercion ----------------------------------------------------------
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.params.order != self.params.order:
                raise FieldError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.params.const(other)
        return NotImplemented

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.params, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.params, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.params, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.params, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(beta)")
        m = [Fraction(c) for c in self.params.min_poly]
        return FieldElement(self.params, _poly_inverse_mod(list(self.coeffs), m))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.params.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.params.order, self.coeffs))

    def interval(self, level: int) -> tuple[Fraction, Fraction]:
        """Rational interval containing the real value, from a ``2^-level`` enclosure of beta."""
        lo, hi = dyadic_enclosure(self.params.order, level)
        low = high = Fraction(0)
        for i, c in enumerate(self.coeffs):
            if c > 0:
                low += c * lo**i
                high += c * hi**i
            elif c < 0:
                low += c * hi**i
                high += c * lo**i
        return low, high

    def sign(self) -> int:
        if self.is_zero():
            return 0
        level = _START_LEVEL
        while level <= MAX_REFINEMENT:
            low, high = self.interval(level)
            if low > 0:
                return 1
            if high < 0:
                return -1
            level *= 2
        # unreachable for nonzero elements: beta is irrational of degree n
        raise FieldError("sign refinement cap exceeded")

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self):
        low, high = self.interval(_START_LEVEL)
        return float((low + high) / 2)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*b^{i}")
        return f"FieldElement({' + '.join(terms) or '0'}; n={self.params.order})"


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def compare(a, b) -> int:
    """Certified real-number ordering: -1, 0 or 1."""
    if isinstance(a, FieldElement):
        diff = a - b
    elif isinstance(b, FieldElement):
        diff = -(b - a)
    else:
        return (a > b) - (a < b)
    return diff.sign()


def evaluate_word(word: str, params: BetaParams) -> FieldElement:
    """Exact value of ``sum_i w_i beta^{-i}`` for a finite 0/1 word (1-indexed)."""
    if not isinstance(word, str) or word.strip("01"):
        raise ValueError(f"not a binary word: {word!r}")
    # Horner in integer coordinates: multiplying by b^{-1} = b^{n-1} - ... - 1
    # sends (c_0, ..., c_{n-1}) to (c_1 - c_0, ..., c_{n-1} - c_0, c_0)
    n = params.order
    acc = [0] * n
    for ch in reversed(word):
        if ch == "1":
            acc[0] += 1
        c0 = acc[0]
        acc = [acc[i + 1] - c0 for i in range(n - 1)] + [c0]
    return FieldElement(params, acc)


def to_fraction_string(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
