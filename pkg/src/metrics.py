"""
Metrics on generalized strings: the dyadic order metric r, the breadth-first
position N, their closed forms, the inverse maps, the alternating
lexicographic comparator, level sets and the distant-parent sequence.
"""

import logging
import re
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterator, List, Tuple

from .config import DEFAULT_MAX_LEVEL, DEFAULT_MAX_SEQUENCE_COUNT
from .errors import DomainError, ParseError, ResourceLimitError, ValidationError, parse_int
from .string_core import (
    L_INVERSE,
    R_INVERSE,
    GenString,
    Kind,
    Letter,
    from_letters,
    iter_letters,
    parent_close,
    parent_distant,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Dyadic rationals


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """Exact dyadic rational numerator / 2^exponent in canonical form.

    Canonical means exponent == 0 or numerator odd, so equality is structural.
    Use Dyadic.of() to normalize arbitrary pairs.
    """

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        if self.exponent < 0:
            raise ValidationError(f"exponent must be >= 0, got {self.exponent}")
        if self.exponent > 0 and self.numerator % 2 == 0:
            raise ValidationError(
                f"{self.numerator}/2^{self.exponent} is not canonical; use Dyadic.of()"
            )

    @classmethod
    def of(cls, numerator: int, exponent: int = 0) -> "Dyadic":
        if numerator == 0:
            return cls(0, 0)
        if exponent < 0:
            return cls(numerator << -exponent, 0)
        trailing = (numerator & -numerator).bit_length() - 1
        shift = min(trailing, exponent)
        return cls(numerator >> shift, exponent - shift)

    @classmethod
    def unit(cls, k: int) -> "Dyadic":
        """2^{-k}."""
        return cls.of(1, k)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Dyadic":
        den = value.denominator
        if den & (den - 1):
            raise ValidationError(f"{value} is not dyadic: denominator is not a power of two")
        return cls.of(value.numerator, den.bit_length() - 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def _aligned(self, other: "Dyadic") -> Tuple[int, int, int]:
        e = max(self.exponent, other.exponent)
        return self.numerator << (e - self.exponent), other.numerator << (e - other.exponent), e

    def __add__(self, other: "Dyadic") -> "Dyadic":
        a, b, e = self._aligned(other)
        return Dyadic.of(a + b, e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        a, b, e = self._aligned(other)
        return Dyadic.of(a - b, e)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.numerator, self.exponent)

    def __lt__(self, other: "Dyadic") -> bool:
        a, b, _ = self._aligned(other)
        return a < b

    def __str__(self) -> str:
        return format_dyadic(self)


ZERO = Dyadic(0)
ONE = Dyadic(1)
TWO = Dyadic(2)

_DYADIC_POWER = re.compile(r"([+-]?\d+)/2\^(\d+)")
_DYADIC_RATIO = re.compile(r"([+-]?\d+)/(\d+)")
_DYADIC_BINARY = re.compile(r"([+-]?)([01]+)(?:\.([01]*))?")


def parse_dyadic(text: str) -> Dyadic:
    """Accepts "a/2^e", "a/b" with b a power of two, and binary-point "1.011"."""
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    match = _DYADIC_POWER.fullmatch(stripped)
    if match:
        return Dyadic.of(
            parse_int(match.group(1), text, offset + match.start(1)),
            parse_int(match.group(2), text, offset + match.start(2)),
        )
    match = _DYADIC_RATIO.fullmatch(stripped)
    if match:
        den = parse_int(match.group(2), text, offset + match.start(2))
        if den == 0:
            raise ParseError("zero denominator", text, offset + match.start(2))
        num = parse_int(match.group(1), text, offset + match.start(1))
        return Dyadic.from_fraction(Fraction(num, den))
    match = _DYADIC_BINARY.fullmatch(stripped)
    if match:
        sign, whole, frac = match.group(1), match.group(2), match.group(3) or ""
        value = int(whole + frac, 2)
        return Dyadic.of(-value if sign == "-" else value, len(frac))
    bad = next(
        (i for i, ch in enumerate(stripped) if ch not in "+-0123456789./^"),
        len(stripped),
    )
    raise ParseError("expected a dyadic 'a/2^e' or binary '1.011'", text, offset + bad)


def format_dyadic(d: Dyadic) -> str:
    return f"{d.numerator}/2^{d.exponent}"


def to_binary_point(d: Dyadic) -> str:
    """Binary expansion with at least one fractional digit: 1.01, 0.001, 10.0."""
    magnitude = abs(d.numerator)
    whole = magnitude >> d.exponent
    sign = "-" if d.numerator < 0 else ""
    if d.exponent == 0:
        return f"{sign}{whole:b}.0"
    frac = magnitude & ((1 << d.exponent) - 1)
    return f"{sign}{whole:b}.{frac:0{d.exponent}b}"


# ---------------------------------------------------------------------------
# Extended positions


class PositionKind(Enum):
    NAT = "nat"
    NEG_ONE = "-1"
    NEG_HALF = "-1/2"


@dataclass(frozen=True)
class ExtPosition:
    """N(S): a natural number for words, -1 for R^{-1}, -1/2 for L^{-1}."""

    kind: PositionKind
    n: int = 0

    def __post_init__(self):
        if self.kind is PositionKind.NAT and self.n < 0:
            raise ValidationError(f"position must be non-negative, got {self.n}")
        if self.kind is not PositionKind.NAT and self.n != 0:
            raise ValidationError(f"{self.kind.value} carries no natural number")

    @classmethod
    def nat(cls, n: int) -> "ExtPosition":
        return cls(PositionKind.NAT, n)

    def as_fraction(self) -> Fraction:
        if self.kind is PositionKind.NEG_ONE:
            return Fraction(-1)
        if self.kind is PositionKind.NEG_HALF:
            return Fraction(-1, 2)
        return Fraction(self.n)

    def doubled_plus_one(self) -> int:
        """2N + 1, an integer for every tag."""
        if self.kind is PositionKind.NEG_ONE:
            return -1
        if self.kind is PositionKind.NEG_HALF:
            return 0
        return 2 * self.n + 1

    def __str__(self) -> str:
        return format_position(self)


NEG_ONE = ExtPosition(PositionKind.NEG_ONE)
NEG_HALF = ExtPosition(PositionKind.NEG_HALF)


def parse_position(text: str) -> ExtPosition:
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if stripped == NEG_ONE.kind.value:
        return NEG_ONE
    if stripped == NEG_HALF.kind.value:
        return NEG_HALF
    if not stripped.isdigit():
        bad = next((i for i, ch in enumerate(stripped) if not ch.isdigit()), 0)
        raise ParseError("expected a natural number, '-1' or '-1/2'", text, offset + bad)
    return ExtPosition.nat(parse_int(stripped, text, offset))


def format_position(p: ExtPosition) -> str:
    if p.kind is PositionKind.NAT:
        return str(p.n)
    return p.kind.value


# ---------------------------------------------------------------------------
# r and N


def r_recursive(s: GenString) -> Dyadic:
    """
    r by the recurrence r(ε) = 1, r(SL) = r(S) - 2^{-|SL|},
    r(SR) = r(S) + 2^{-|SR|}; r(R^{-1}) = 0 and r(L^{-1}) = 2.
    """
    if s.kind is Kind.R_INVERSE:
        return ZERO
    if s.kind is Kind.L_INVERSE:
        return TWO
    # numerator of r(S) * 2^{|S|}
    scaled, depth = 1, 0
    for letter in iter_letters(s):
        scaled = 2 * scaled + (1 if letter is Letter.R else -1)
        depth += 1
    return Dyadic.of(scaled, depth)


def _prefix_sums(runs) -> List[int]:
    sums, total = [], 0
    for k in runs:
        sums.append(total)
        total += k
    return sums


def _require_word(s: GenString, operation: str) -> None:
    if not s.is_word:
        raise DomainError(f"{operation} is stated for words only, not {s.kind.value}")


def r_closed(s: GenString) -> Dyadic:
    """
    Closed form r(S) = 2(1 - 2^{-k_0} + 2^{-k_0-k_1} - ... + (-1)^m 2^{-k_0-...-k_{m-1}}
    + (-1)^{m+1} 2^{-|S|-1}), evaluated from the runs alone.
    """
    _require_word(s, "r_closed")
    n, m = sum(s.runs), len(s.runs) - 1
    total = sum((-1) ** i << (n + 1 - e) for i, e in enumerate(_prefix_sums(s.runs)))
    total += (-1) ** (m + 1)
    return Dyadic.of(total, n)


def r_closed_alt(s: GenString) -> Dyadic:
    """
    Second closed form 2 * sum_{i=0}^{m+1} (-1)^i 2^{-e_i} + (-1)^{m+2} 2^{-|S|}
    with e_i = k_0 + ... + k_{i-1} (so e_0 = 0 and e_{m+1} = |S|).
    """
    _require_word(s, "r_closed_alt")
    n, m = sum(s.runs), len(s.runs) - 1
    exponents = _prefix_sums(s.runs) + [n]
    total = sum((-1) ** i << (n + 1 - e) for i, e in enumerate(exponents))
    total += (-1) ** (m + 2)
    return Dyadic.of(total, n)


def position_recursive(s: GenString) -> ExtPosition:
    """N(ε) = 0, N(SL) = 2N(S) + 1, N(SR) = 2N(S) + 2."""
    if s.kind is Kind.R_INVERSE:
        return NEG_ONE
    if s.kind is Kind.L_INVERSE:
        return NEG_HALF
    n = 0
    for letter in iter_letters(s):
        n = 2 * n + (2 if letter is Letter.R else 1)
    return ExtPosition.nat(n)


def position_closed(s: GenString) -> ExtPosition:
    """
    Closed form with suffix sums K_i = k_i + ... + k_m:
    N = 2^{K_0+1} - 2^{K_1} + 2^{K_2} - ... +/- 2^{K_m} - (2 if m even else 1).
    """
    _require_word(s, "position_closed")
    m = len(s.runs) - 1
    suffix, suffixes = 0, []
    for k in reversed(s.runs):
        suffix += k
        suffixes.append(suffix)
    suffixes.reverse()
    total = 1 << (suffixes[0] + 1)
    for i in range(1, m + 1):
        total += (-1) ** i << suffixes[i]
    total -= 2 if m % 2 == 0 else 1
    return ExtPosition.nat(total)


def string_at_position(n: int) -> GenString:
    """
    The word at breadth-first position n: binary digits of n + 1 after the
    leading 1, read 0 -> L and 1 -> R.
    """
    if n < 0:
        raise DomainError(f"natural position expected, got {n}")
    return from_letters(Letter.R if bit == "1" else Letter.L for bit in bin(n + 1)[3:])


def string_at_ext_position(p: ExtPosition) -> GenString:
    if p.kind is PositionKind.NEG_ONE:
        return R_INVERSE
    if p.kind is PositionKind.NEG_HALF:
        return L_INVERSE
    return string_at_position(p.n)


def string_at_r(d: Dyadic) -> GenString:
    """Inverse of r on generalized strings."""
    if d == ZERO:
        return R_INVERSE
    if d == TWO:
        return L_INVERSE
    if not ZERO < d < TWO:
        raise DomainError(f"{format_dyadic(d)} is outside the open interval (0, 2) of word r-values")
    m = d.exponent
    current, letters = 1 << m, []
    for j in range(1, m + 1):
        step = 1 << (m - j)
        if d.numerator < current:
            letters.append(Letter.L)
            current -= step
        else:
            letters.append(Letter.R)
            current += step
    if current != d.numerator:
        raise DomainError(f"{format_dyadic(d)} is not the r-value of any string")
    return from_letters(letters)


# ---------------------------------------------------------------------------
# Order


def _sentinel_rank(s: GenString) -> int:
    if s.kind is Kind.R_INVERSE:
        return -1
    if s.kind is Kind.L_INVERSE:
        return 1
    return 0


def compare_strings(s: GenString, t: GenString) -> int:
    """
    Alternating lexicographic comparison of run sequences.

    Returns -1, 0 or 1 as r(s) is less than, equal to or greater than r(t),
    without computing r. At an even index the larger run is greater, at an odd
    index the larger run is smaller; a run missing at the first differing index
    counts as 0. R^{-1} is the global minimum and L^{-1} the global maximum.
    """
    rs, rt = _sentinel_rank(s), _sentinel_rank(t)
    if rs or rt:
        return (rs > rt) - (rs < rt)
    for i in range(max(len(s.runs), len(t.runs))):
        a = s.runs[i] if i < len(s.runs) else 0
        b = t.runs[i] if i < len(t.runs) else 0
        if a != b:
            less = a < b if i % 2 == 0 else a > b
            return -1 if less else 1
    return 0


# ---------------------------------------------------------------------------
# Levels and sequences


def _check_level(m: int, max_level: int) -> None:
    if m < 0:
        raise DomainError(f"level must be a natural number, got {m}")
    if m > max_level:
        raise ResourceLimitError(f"level {m} exceeds the configured bound {max_level}")


def level_strings(m: int, max_level: int = DEFAULT_MAX_LEVEL) -> Iterator[GenString]:
    """The 2^m words of level m, left to right."""
    _check_level(m, max_level)
    for n in range((1 << m) - 1, (1 << (m + 1)) - 1):
        yield string_at_position(n)


def level_r_values(
    m: int, cumulative: bool = False, max_level: int = DEFAULT_MAX_LEVEL
) -> Tuple[Dyadic, ...]:
    """
    r-values of all words of level m (or of every level <= m when cumulative),
    obtained by enumerating the strings. Sorted ascending.
    """
    _check_level(m, max_level)
    levels = range(m + 1) if cumulative else (m,)
    values = {r_recursive(s) for level in levels for s in level_strings(level, max_level)}
    return tuple(sorted(values))


def expected_level_r_values(m: int, cumulative: bool = False) -> Tuple[Dyadic, ...]:
    """{(2k-1)/2^m : 1 <= k <= 2^m}, or {l/2^m : 1 <= l <= 2^{m+1}-1} when cumulative."""
    if cumulative:
        return tuple(Dyadic.of(ell, m) for ell in range(1, 1 << (m + 1)))
    return tuple(Dyadic.of(2 * k - 1, m) for k in range(1, (1 << m) + 1))


@lru_cache(maxsize=64)
def _lower_level_table(level: int) -> Tuple[Tuple[Dyadic, ...], Tuple[GenString, ...]]:
    """Generalized strings of level < ``level`` sorted by r (sentinels included)."""
    candidates = [R_INVERSE, L_INVERSE]
    for n in range((1 << level) - 1):
        candidates.append(string_at_position(n))
    ranked = sorted(((r_recursive(s), s) for s in candidates), key=lambda pair: pair[0])
    return tuple(r for r, _ in ranked), tuple(s for _, s in ranked)


def nearest_lower_level(
    s: GenString, max_level: int = DEFAULT_MAX_LEVEL
) -> Tuple[GenString, GenString]:
    """
    Among generalized strings of strictly smaller level, the one with the
    largest r below r(s) and the one with the smallest r above r(s).
    """
    if not s.is_word:
        raise DomainError("nearest_lower_level is defined for words only")
    level = sum(s.runs)
    _check_level(level, max_level)
    values, strings = _lower_level_table(level)
    target = r_recursive(s)
    i = bisect_left(values, target)
    above = i + 1 if i < len(values) and values[i] == target else i
    return strings[i - 1], strings[above]


def close_parent_position(n: int) -> int:
    """N(P_C(S)) = floor((N(S) - 1) / 2)."""
    if n < 1:
        raise DomainError("the root has no close parent")
    return (n - 1) // 2


def parent_positions(n: int) -> Tuple[ExtPosition, ExtPosition]:
    """(N(P_C(S)), N(P_D(S))) for the word S at position n >= 1."""
    if n < 1:
        raise DomainError("the root has no close or distant parent")
    s = string_at_position(n)
    return position_recursive(parent_close(s)), position_recursive(parent_distant(s))


def distant_parent_sequence(count: int, max_count: int = DEFAULT_MAX_SEQUENCE_COUNT) -> List[int]:
    """a(n) = 2 N(P_D(N^{-1}(n))) + 1 for n = 1..count."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if count > max_count:
        raise ResourceLimitError(f"count {count} exceeds the configured bound {max_count}")
    return [
        position_recursive(parent_distant(string_at_position(n))).doubled_plus_one()
        for n in range(1, count + 1)
    ]


# Position numbers of close and distant parents for n = 1..22.
TABLE_1_CLOSE: Tuple[int, ...] = (0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10)
TABLE_1_DISTANT: Tuple[Fraction, ...] = tuple(
    Fraction(v)
    for v in (
        -1, Fraction(-1, 2), -1, 0, 0, Fraction(-1, 2), -1, 1, 1, 0, 0,
        2, 2, Fraction(-1, 2), -1, 3, 3, 1, 1, 4, 4, 0,
    )
)
DISTANT_PARENT_SEQUENCE_22: Tuple[int, ...] = (
    -1, 0, -1, 1, 1, 0, -1, 3, 3, 1, 1, 5, 5, 0, -1, 7, 7, 3, 3, 9, 9, 1,
)

