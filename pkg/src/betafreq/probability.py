"""Exact probabilities of normalized digits under the fair-coin measure.

Two independent routes are provided:

* closed forms from geometric series over the cylinder partitions
  (golden mean only), and
* a certified cylinder enumeration: the binary tree of input cylinders is
  expanded until the queried normalized digits are final (no extension of
  the cylinder can change them); decided mass is summed exactly and the
  mass left undecided at the depth limit is the width of the bracket.

The Omega-word route (blockwise frequency) lives at the bottom of the module.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .field import BetaParams, golden_mean, to_fraction_string
from .normalize import final_mask, normalize
from .words import separator


@dataclass(frozen=True)
class ProbabilityBracket:
    lower: Fraction
    upper: Fraction
    undecided: Fraction
    depth: int

    def __post_init__(self):
        if not (0 <= self.lower <= self.upper <= 1):
            raise ValueError(f"invalid bracket [{self.lower}, {self.upper}]")
        if self.upper - self.lower != self.undecided:
            raise ValueError("undecided mass must equal the bracket width")

    @property
    def width(self) -> Fraction:
        return self.undecided

    def contains(self, q) -> bool:
        return self.lower <= q <= self.upper

    def to_json(self, event: str = "") -> dict:
        return {
            "event": event,
            "lower": to_fraction_string(self.lower),
            "upper": to_fraction_string(self.upper),
            "undecided": to_fraction_string(self.undecided),
            "depth": self.depth,
        }


# -- events --------------------------------------------------------------------

_NAME = re.compile(r"^([xy])(-?\d+)$")


@dataclass(frozen=True)
class Event:
    """Conjunction of digit constraints.

    ``frame`` is ``"y"`` for the separately normalized past (coordinates <= 0)
    and future (coordinates >= 1), or ``"x"`` for the normalization of the
    joined two-sided sequence.
    """

    frame: str
    constraints: tuple[tuple[int, int], ...]
    text: str = ""

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(sorted({c for c, _ in self.constraints}))

    def __call__(self, digits: dict) -> bool:
        return all(digits[c] == v for c, v in self.constraints)


def parse_event(text: str) -> Event:
    """Parse e.g. ``"y1=1"``, ``"y-1=y0=0"``, ``"y0=1,y1=0"``, ``"x0=1"``."""
    constraints = []
    frames = set()
    for clause in text.replace(" ", "").split(","):
        parts = clause.split("=")
        if len(parts) < 2 or parts[-1] not in ("0", "1"):
            raise ValueError(f"bad event clause {clause!r}")
        value = int(parts[-1])
        for name in parts[:-1]:
            m = _NAME.match(name)
            if not m:
                raise ValueError(f"bad digit name {name!r}")
            frames.add(m.group(1))
            constraints.append((int(m.group(2)), value))
    if len(frames) != 1:
        raise ValueError("an event must use only y-digits or only x-digits")
    return Event(frames.pop(), tuple(constraints), text)


def _decide(pred: Callable[[dict], bool], partial: dict) -> bool | None:
    """Event value if it is the same for every completion of the undecided digits."""
    open_coords = [c for c, v in partial.items() if v is None]
    seen = set()
    for bits in itertools.product((0, 1), repeat=len(open_coords)):
        full = dict(partial)
        full.update(zip(open_coords, bits))
        seen.add(bool(pred(full)))
        if len(seen) == 2:
            return None
    return seen.pop()


# -- one-sided enumeration -----------------------------------------------------

def _side_leaves(coords: Sequence[int], side: str, depth: int, params: BetaParams) -> dict:
    """Distribution of partial digit tuples at the leaves of the pruned cylinder tree.

    Returns ``{tuple of 0/1/None: integer mass in units of 2^-depth}``; a
    ``None`` entry is a digit still undecided at the depth limit.
    """
    future = side == "future"
    # index of each coordinate inside a word of length d
    if future:
        def index(c, d):
            return c - 1
    else:
        def index(c, d):
            return d - 1 + c
    k_needed = max(coords) if future else 1 - min(coords)
    leaves: dict = {}
    stack = [""]
    while stack:
        word = stack.pop()
        d = len(word)
        digits = None
        if d >= k_needed:
            nw = normalize(word, params)
            mask = final_mask(nw, params, open_left=not future, open_right=future)
            digits = tuple(int(nw[index(c, d)]) if mask[index(c, d)] else None for c in coords)
            if None not in digits or d == depth:
                leaves[digits] = leaves.get(digits, 0) + (1 << (depth - d))
                continue
        elif d == depth:
            digits = (None,) * len(coords)
            leaves[digits] = leaves.get(digits, 0) + (1 << (depth - d))
            continue
        if future:
            stack.extend((word + "0", word + "1"))
        else:
            stack.extend(("0" + word, "1" + word))
    return leaves


def _bracket_from_leaves(pred, coords, leaf_sets, depths) -> ProbabilityBracket:
    """Combine independent per-side leaf distributions into an event bracket."""
    total_scale = 1
    for d in depths:
        total_scale <<= d
    lower = undecided = 0
    for combo in itertools.product(*[ls.items() for ls in leaf_sets]):
        mass = 1
        partial = {}
        for (digits, m), cs in zip(combo, coords):
            mass *= m
            partial.update(zip(cs, digits))
        value = _decide(pred, partial)
        if value is None:
            undecided += mass
        elif value:
            lower += mass
    lower = Fraction(lower, total_scale)
    undecided = Fraction(undecided, total_scale)
    return ProbabilityBracket(lower, lower + undecided, undecided, max(depths))


def _y_bracket(event: Event, depth: int, params: BetaParams) -> ProbabilityBracket:
    past = tuple(c for c in event.coords if c <= 0)
    future = tuple(c for c in event.coords if c >= 1)
    leaf_sets, coords, depths = [], [], []
    if past:
        leaf_sets.append(_side_leaves(past, "past", depth, params))
        coords.append(past)
        depths.append(depth)
    if future:
        leaf_sets.append(_side_leaves(future, "future", depth, params))
        coords.append(future)
        depths.append(depth)
    bracket = _bracket_from_leaves(event, coords, leaf_sets, depths)
    return ProbabilityBracket(bracket.lower, bracket.upper, bracket.undecided, depth)


# -- two-sided (joined) enumeration ----------------------------------------------

def _x_bracket(event: Event, depth: int, params: BetaParams) -> ProbabilityBracket:
    """Joint past/future tree for digits of the normalized two-sided sequence.

    A node is a pair (past word ending at coordinate 0, future word starting at
    coordinate 1). The past is extended while some queried digit can still be
    changed by an extension on the left, then the future likewise.
    """
    coords = event.coords
    need_past = max(1, 1 - min(coords))
    need_future = max(0, max(coords))
    scale_bits = 2 * depth
    lower = undecided = 0
    stack = [("", "")]
    while stack:
        past, fut = stack.pop()
        if len(past) < need_past:
            stack.extend((("0" + past, fut), ("1" + past, fut)))
            continue
        if len(fut) < need_future:
            stack.extend(((past, fut + "0"), (past, fut + "1")))
            continue
        word = past + fut
        nw = normalize(word, params)
        left_safe = final_mask(nw, params, open_left=True, open_right=False)
        right_safe = final_mask(nw, params, open_left=False, open_right=True)
        origin = len(past) - 1
        partial = {}
        left_ok = right_ok = True
        for c in coords:
            i = origin + c
            lo_ok, ro_ok = left_safe[i], right_safe[i]
            left_ok &= lo_ok
            right_ok &= ro_ok
            partial[c] = int(nw[i]) if (lo_ok and ro_ok) else None
        value = _decide(event, partial)
        mass = 1 << (scale_bits - len(past) - len(fut))
        if value is not None:
            if value:
                lower += mass
            continue
        if not left_ok and len(past) < depth:
            stack.extend((("0" + past, fut), ("1" + past, fut)))
        elif not right_ok and len(fut) < depth:
            stack.extend(((past, fut + "0"), (past, fut + "1")))
        else:
            undecided += mass
    lower = Fraction(lower, 1 << scale_bits)
    undecided = Fraction(undecided, 1 << scale_bits)
    return ProbabilityBracket(lower, lower + undecided, undecided, depth)


def prob_event(event, depth: int, params: BetaParams | None = None) -> ProbabilityBracket:
    """Certified bracket for an event given as text (see :func:`parse_event`) or :class:`Event`."""
    params = params or golden_mean()
    if isinstance(event, str):
        event = parse_event(event)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if event.frame == "y":
        span = max(max(event.coords), 1 - min(event.coords))
        if depth < span:
            raise ValueError(f"depth {depth} smaller than event span {span}")
        return _y_bracket(event, depth, params)
    return _x_bracket(event, depth, params)


def prob_future_digit(event: Callable[[Sequence[int]], bool], k: int, depth: int,
                      params: BetaParams | None = None) -> ProbabilityBracket:
    """Bracket for a predicate on ``(y_1, ..., y_k)`` of the normalized future."""
    if depth < 1 or depth < k:
        raise ValueError("need depth >= max(1, k)")
    params = params or golden_mean()
    coords = tuple(range(1, k + 1))
    leaves = _side_leaves(coords, "future", depth, params)
    pred = lambda d: event(tuple(d[c] for c in coords))  # noqa: E731
    return _bracket_from_leaves(pred, [coords], [leaves], [depth])


def prob_past_digit(event: Callable[[Sequence[int]], bool], k: int, depth: int,
                    params: BetaParams | None = None) -> ProbabilityBracket:
    """Bracket for a predicate on ``(y_{-k+1}, ..., y_0)`` of the normalized past."""
    if depth < 1 or depth < k:
        raise ValueError("need depth >= max(1, k)")
    params = params or golden_mean()
    coords = tuple(range(1 - k, 1))
    leaves = _side_leaves(coords, "past", depth, params)
    pred = lambda d: event(tuple(d[c] for c in coords))  # noqa: E731
    return _bracket_from_leaves(pred, [coords], [leaves], [depth])


def prob_center_digit(depth: int, params: BetaParams | None = None) -> ProbabilityBracket:
    """Bracket for P(x_0 = 1) in the normalization of the two-sided sequence."""
    if depth < 2:
        raise ValueError("depth must be >= 2")
    return _x_bracket(parse_event("x0=1"), depth, params or golden_mean())


# -- closed forms (golden mean) --------------------------------------------------

def geometric_sum(first: Fraction, ratio: Fraction) -> Fraction:
    """``first + first*ratio + first*ratio^2 + ...`` for ``|ratio| < 1``."""
    if not abs(ratio) < 1:
        raise ValueError("series diverges")
    return Fraction(first) / (1 - Fraction(ratio))


def closed_form_lemmas(params: BetaParams | None = None) -> dict[str, Fraction]:
    """The golden-mean digit probabilities summed from their cylinder partitions."""
    params = params or golden_mean()
    if params.order != 2:
        raise ValueError("closed forms not available for this beta")
    q = Fraction(1, 4)
    # future: [(01)^k 1] gives y1=1; [1 (01)^k 1] gives y1=y2=1
    y1 = geometric_sum(Fraction(1, 2), q)
    y1y2 = geometric_sum(Fraction(1, 4), q)
    # past: [0 1^{2k+1}] gives y0=1; [0 1^{2k}], k>=1, or [0 1^{2k} 0] gives y-1=y0=0
    y0 = geometric_sum(Fraction(1, 4), q)
    y0_pair = geometric_sum(Fraction(1, 2) * q, q) + geometric_sum(q, q)
    # joined: case 1 (y0=1, y1=0) or case 2 (y-1=y0=0, y1=y2=1), past independent of future
    x0 = y0 * (1 - y1) + y0_pair * y1y2
    return {
        "y1=1": y1,
        "y1=y2=1": y1y2,
        "y0=1": y0,
        "y-1=y0=0": y0_pair,
        "x0=1": x0,
    }


# -- Omega words -----------------------------------------------------------------

def _pattern_wait(params: BetaParams):
    """Hitting-time quantities for prepending symbols without creating ``0^n``.

    For a state ``z`` (leading zeros of the current suffix, ``< n``) returns
    lists G, H, K with G[z] = sum over allowed prefixes q (including empty) of
    2^-|q|, H[z] = the same sum weighted by |q|, K[z] weighted by ones(q).
    """
    n = params.order

    # G(z) = 1 + G(0)/2 + [z+1<n] G(z+1)/2, etc. Solve by substitution: all
    # values are affine in G(0); unroll from z = n-1 downward.
    def solve(const: list[Fraction], dep0: Fraction) -> list[Fraction]:
        # x(z) = const[z] + dep0 * x(0) + (1/2) x(z+1) for z < n-1; x(n-1) = const + dep0 x(0)
        a = [Fraction(0)] * n  # x(z) = a[z] + b[z] * x(0)
        b = [Fraction(0)] * n
        for z in range(n - 1, -1, -1):
            a[z] = const[z]
            b[z] = dep0
            if z + 1 < n:
                a[z] += a[z + 1] / 2
                b[z] += b[z + 1] / 2
        x0 = a[0] / (1 - b[0])
        return [a[z] + b[z] * x0 for z in range(n)]

    half = Fraction(1, 2)
    G = solve([Fraction(1)] * n, half)
    # H(z) = (G(0) + H(0))/2 + [z+1<n] (G(z+1) + H(z+1))/2
    H = solve([G[0] / 2 + (G[z + 1] / 2 if z + 1 < n else 0) for z in range(n)], half)
    # K(z) = (G(0) + K(0))/2 + [z+1<n] K(z+1)/2
    K = solve([G[0] / 2] * n, half)
    return G, H, K


@dataclass(frozen=True)
class OmegaEnumeration:
    """Aggregated statistics of the Omega words of length <= L.

    Omega words end at their first separator ``0^n``; the block that the
    normalizer acts on independently is the rotation ``0^n + word[:-n]``.
    """

    params: BetaParams
    truncation_length: int
    captured_mass: Fraction
    tail_mass: Fraction
    expected_length: Fraction      # sum |w| 2^-|w| over captured words
    tail_length: Fraction          # same sum over words longer than L
    ones_normalized: Fraction      # sum ones(P(block)) 2^-|w| over captured words
    ones_raw: Fraction             # sum ones(w) 2^-|w| over captured words
    tail_ones_bounds: tuple[Fraction, Fraction]
    tail_raw_ones: Fraction
    word_count: int

    def words(self) -> Iterator[tuple[str, Fraction]]:
        return iter_omega_words(self.params, self.truncation_length)


def omega_block(word: str, params: BetaParams) -> str:
    """Block form (separator first) of an Omega word."""
    n = params.order
    return word[-n:] + word[:-n]


def iter_omega_words(params: BetaParams, L: int) -> Iterator[tuple[str, Fraction]]:
    """All Omega words of length <= L with weights 2^-|w| (explicit; small L only)."""
    n = params.order
    sep = separator(params)
    stack = [""]
    while stack:
        v = stack.pop()
        if v == "" or v.endswith("1"):
            yield v + sep, Fraction(1, 1 << (len(v) + n))
        if len(v) + n < L:
            for c in "01":
                nv = v + c
                if sep not in nv:
                    stack.append(nv)


def _transition_table(params: BetaParams, max_run: int) -> dict:
    """Effect of prepending ``c`` to a normalized word with leading run ``m``.

    Only the leading run and the zero after it can be touched (left extensions
    never reach past the first zero), so it suffices to normalize
    ``c 1^m 0`` (or ``c 1^m`` if the word has no zero).
    Returns ``(c, m, has_zero) -> (new_m, new_has_zero, delta_ones)``.
    """
    table = {}
    for m in range(max_run + 1):
        for has_zero in (True, False):
            for c in "01":
                nw = normalize(c + "1" * m + ("0" if has_zero else ""), params)
                run = len(nw) - len(nw.lstrip("1"))
                table[c, m, has_zero] = (run, has_zero or "0" in nw, nw.count("1") - m)
    return table


def _close_block(params: BetaParams, m: int, has_zero: bool) -> int:
    """Change in ones when the separator is prepended to a normalized suffix."""
    nw = normalize(separator(params) + "1" * m + ("0" if has_zero else ""), params)
    return nw.count("1") - m


def enumerate_omega(params: BetaParams, L: int) -> OmegaEnumeration:
    """Exact aggregate over all Omega words of length <= L, plus tail bounds.

    The words are generated right to left (suffix first) so that the effect
    of each new symbol on the normal form depends only on the leading 1-run
    of the normalized suffix; words sharing that state are merged.
    """
    n = params.order
    if L < n + 1:
        raise ValueError(f"L must be >= n + 1 = {n + 1}")
    max_v = L - n
    table = _transition_table(params, max_v + 1)

    def weight(vlen: int) -> Fraction:
        return Fraction(1, 1 << (vlen + n))

    # empty v: the word 0^n itself
    mass = weight(0)
    length = n * weight(0)
    ones_n = Fraction(0)
    ones_r = Fraction(0)
    count = 1
    # state: (z, m, has_zero) -> [words, ones(P(s)) sum, raw ones sum]
    layer = {(0, 1, False): [1, 1, 1]}
    for vlen in range(1, max_v + 1):
        w = weight(vlen)
        for (z, m, hz), (cnt, on, raw) in layer.items():
            close = _close_block(params, m, hz)
            mass += cnt * w
            length += cnt * (vlen + n) * w
            ones_n += (on + cnt * close) * w
            ones_r += raw * w
            count += cnt
        if vlen == max_v:
            break
        nxt: dict = {}
        for (z, m, hz), (cnt, on, raw) in layer.items():
            for c in "01":
                nz = z + 1 if c == "0" else 0
                if nz >= n:
                    continue
                nm, nhz, delta = table[c, m, hz]
                slot = nxt.setdefault((nz, nm, nhz), [0, 0, 0])
                slot[0] += cnt
                slot[1] += on + cnt * delta
                slot[2] += raw + cnt * (c == "1")
        layer = nxt

    # tail: words whose v is longer than max_v share a length-max_v suffix in ``layer``
    G, H, K = _pattern_wait(params)
    w = weight(max_v)
    t_mass = t_len = t_lo = t_hi = t_raw = Fraction(0)
    for (z, m, hz), (cnt, on, raw) in layer.items():
        more = G[z] - 1
        t_mass += cnt * w * more
        t_len += cnt * w * (more * (max_v + n) + H[z])
        known = (on - cnt * m) * w * more
        t_lo += known + (cnt * w * more if m > 0 else 0)
        t_hi += known + cnt * w * (K[z] + m * more)
        t_raw += w * (raw * more + cnt * K[z])
    return OmegaEnumeration(
        params=params,
        truncation_length=L,
        captured_mass=mass,
        tail_mass=1 - mass,
        expected_length=length,
        tail_length=t_len,
        ones_normalized=ones_n,
        ones_raw=ones_r,
        tail_ones_bounds=(t_lo, t_hi),
        tail_raw_ones=t_raw,
        word_count=count,
    )


@dataclass(frozen=True)
class OmegaFrequency:
    lower: Fraction
    upper: Fraction
    truncation_length: int
    enumeration: OmegaEnumeration

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, q) -> bool:
        return self.lower <= q <= self.upper

    @property
    def midpoint(self) -> float:
        return float((self.lower + self.upper) / 2)


def omega_frequency(params: BetaParams, L: int, normalized: bool = True) -> OmegaFrequency:
    """Digit-1 frequency as expected ones per block over expected block length.

    With ``normalized=False`` the ones of the raw Omega words are counted
    instead (a diagnostic: that is just the input frequency 1/2 up to tail).
    """
    enum = enumerate_omega(params, L)
    total_len = enum.expected_length + enum.tail_length
    if normalized:
        lo = enum.ones_normalized + enum.tail_ones_bounds[0]
        hi = enum.ones_normalized + enum.tail_ones_bounds[1]
    else:
        lo = hi = enum.ones_raw + enum.tail_raw_ones
    return OmegaFrequency(lo / total_len, hi / total_len, L, enum)


def expected_block_length_oracle(params: BetaParams) -> Fraction:
    """Expected waiting time for ``0^n`` under fair coin flips, from the hitting-time system.

    E_j = expected remaining flips having seen j trailing zeros:
    E_j = 1 + E_{j+1}/2 + E_0/2 for j < n, E_n = 0.
    """
    n = params.order
    # E_j = a_j + b_j E_0, unrolled from E_n = 0
    a, b = Fraction(0), Fraction(0)
    for _ in range(n):
        a, b = 1 + a / 2, b / 2 + Fraction(1, 2)
    return a / (1 - b)
