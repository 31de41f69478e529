"""
Continued fractions of the tree of continued fractions.

Vertices are canonical finite continued fractions [q_0, ..., q_m] with
q_0 >= 0, inner quotients >= 1 and a final quotient >= 2 when m > 0. The
root is [1]; the two boundary vertices "[0]" (value 0/1) and "[ ]" (value
1/0) only ever appear as parents.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Sequence, Tuple, Union

from .config import DEFAULT_MAX_LEVEL
from .errors import DomainError, ParseError, ValidationError, parse_int
from .metrics import level_strings
from .string_core import (
    GenString,
    Kind,
    parent_close,
    parent_distant,
)

logger = logging.getLogger(__name__)


class Boundary(Enum):
    """The two formal vertices above the root."""

    LOWER = "[0]"
    UPPER = "[ ]"

    @property
    def pair(self) -> Tuple[int, int]:
        return (0, 1) if self is Boundary.LOWER else (1, 0)

    @property
    def level(self) -> int:
        return -1

    @property
    def fraction_text(self) -> str:
        p, q = self.pair
        return f"{p}/{q}"


Value = Union[Fraction, Boundary]


@dataclass(frozen=True)
class ContinuedFraction:
    quotients: Tuple[int, ...]

    def __post_init__(self):
        qs = self.quotients
        if not qs:
            raise ValidationError("a continued fraction needs at least one quotient")
        if qs[0] < 0:
            raise ValidationError(f"q_0 must be >= 0, got {qs[0]}")
        if len(qs) == 1 and qs[0] < 1:
            raise ValidationError("a single-quotient continued fraction must have q_0 >= 1")
        for i, q in enumerate(qs[1:-1], 1):
            if q < 1:
                raise ValidationError(f"inner quotient q_{i} must be >= 1, got {q}")
        if len(qs) > 1 and qs[-1] < 2:
            raise ValidationError(f"final quotient must be >= 2 when m > 0, got {qs[-1]}")

    @classmethod
    def of(cls, quotients: Sequence[int]) -> "ContinuedFraction":
        return cls(canonical_quotients(quotients))

    @property
    def m(self) -> int:
        return len(self.quotients) - 1

    def __str__(self) -> str:
        return format_cf(self)


Vertex = Union[ContinuedFraction, Boundary]

ROOT = ContinuedFraction((1,))


class Parents(NamedTuple):
    close: Vertex
    distant: Vertex


def canonical_quotients(quotients: Sequence[int]) -> Tuple[int, ...]:
    """Merge a trailing quotient 1 into its predecessor: [.., a, 1] -> [.., a+1]."""
    qs = list(quotients)
    if len(qs) > 1 and qs[-1] == 1:
        qs.pop()
        qs[-1] += 1
    return tuple(qs)


# ---------------------------------------------------------------------------
# Evaluation


def convergents(c: ContinuedFraction) -> Iterator[Tuple[int, int]]:
    """Successive convergents (p_i, q_i) by p_i = q_i p_{i-1} + p_{i-2}."""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for a in c.quotients:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q


def eval_cf(c: ContinuedFraction) -> Fraction:
    p, q = 0, 1
    for p, q in convergents(c):
        pass
    return Fraction(p, q)


def fold_cf(c: ContinuedFraction) -> Fraction:
    """Evaluate by folding the last quotient into its predecessor until one is left."""
    value = Fraction(c.quotients[-1])
    for a in reversed(c.quotients[:-1]):
        value = a + 1 / value
    return value


def cf_of_rational(x: Value) -> ContinuedFraction:
    """Euclidean expansion of a positive rational, in canonical form."""
    if isinstance(x, Boundary):
        raise DomainError(f"the boundary value {x.fraction_text} has no continued fraction vertex")
    if x <= 0:
        raise DomainError(f"positive rational expected, got {x}")
    p, q = x.numerator, x.denominator
    quotients: List[int] = []
    while q:
        a, rest = divmod(p, q)
        quotients.append(a)
        p, q = q, rest
    return ContinuedFraction.of(quotients)


def vertex_value(v: Vertex) -> Value:
    if isinstance(v, Boundary):
        return v
    return eval_cf(v)


# ---------------------------------------------------------------------------
# Tree structure


def cf_children(c: ContinuedFraction) -> Tuple[ContinuedFraction, ContinuedFraction]:
    """
    Children of a vertex [◊, q_m].

    For m even the left child is [◊, q_m - 1, 2] and the right child
    [◊, q_m + 1]; for m odd the two rules swap sides.
    """
    head, last = c.quotients[:-1], c.quotients[-1]
    split = ContinuedFraction(head + (last - 1, 2))
    grown = ContinuedFraction(head + (last + 1,))
    if c.m % 2 == 0:
        return split, grown
    return grown, split


def cf_to_string(c: ContinuedFraction) -> GenString:
    """f([q_0, ..., q_m]) = S(q_0, ..., q_{m-1}, q_m - 1)."""
    runs = list(c.quotients)
    runs[-1] -= 1
    return GenString.from_runs(runs)


def string_to_cf(s: GenString) -> ContinuedFraction:
    """f^{-1}(S(k_0, ..., k_m)) = [k_0, ..., k_{m-1}, k_m + 1]."""
    if not s.is_word:
        raise DomainError(f"{s.kind.value} has no continued fraction; it maps to a boundary vertex")
    runs = list(s.runs)
    runs[-1] += 1
    return ContinuedFraction(tuple(runs))


def string_to_vertex(s: GenString) -> Vertex:
    """string_to_cf extended with R^{-1} -> [0] and L^{-1} -> [ ]."""
    if s.kind is Kind.R_INVERSE:
        logger.debug("R^-1 maps to boundary [0]")
        return Boundary.LOWER
    if s.kind is Kind.L_INVERSE:
        logger.debug("L^-1 maps to boundary [ ]")
        return Boundary.UPPER
    return string_to_cf(s)


def cf_parents(c: ContinuedFraction) -> Parents:
    """
    Close and distant parent of a vertex, obtained through f.

    The root [1] answers with its two generalized parents [0] and [ ].
    """
    s = cf_to_string(c)
    if s.is_empty:
        return Parents(Boundary.LOWER, Boundary.UPPER)
    return Parents(string_to_vertex(parent_close(s)), string_to_vertex(parent_distant(s)))


def cf_level(c: ContinuedFraction) -> int:
    return sum(c.quotients) - 1


def vertex_level(v: Vertex) -> int:
    if isinstance(v, Boundary):
        return v.level
    return cf_level(v)


def best_lower_level(c: ContinuedFraction) -> Tuple[Value, Value]:
    """
    Values of the close and distant parent: the best approximations to c
    among vertices of strictly smaller level, one on each side.

    Raises:
        DomainError: for the root, whose parents are both boundary vertices
    """
    if c == ROOT:
        raise DomainError("the root [1] has only boundary parents")
    close, distant = cf_parents(c)
    return vertex_value(close), vertex_value(distant)


def cf_at_level(m: int, max_level: int = DEFAULT_MAX_LEVEL) -> List[ContinuedFraction]:
    return [string_to_cf(s) for s in level_strings(m, max_level)]


def enumerate_cfs(max_level: int, bound: int = DEFAULT_MAX_LEVEL) -> Iterator[ContinuedFraction]:
    """Every vertex of level <= max_level in (level, left-to-right) order."""
    for m in range(max_level + 1):
        yield from cf_at_level(m, bound)


# ---------------------------------------------------------------------------
# Approximation


def _pair(v: Value) -> Tuple[int, int]:
    if isinstance(v, Boundary):
        return v.pair
    return v.numerator, v.denominator


def mediant(a: Value, b: Value) -> Value:
    """(p + p') / (q + q'); the only arithmetic that accepts the boundary 1/0."""
    (p, q), (r, s) = _pair(a), _pair(b)
    if q + s == 0:
        return Boundary.UPPER
    return Fraction(p + r, q + s)


def _require_interval(x: Value, y: Value) -> Tuple[Fraction, Fraction]:
    if isinstance(x, Boundary) or isinstance(y, Boundary):
        raise DomainError("interval endpoints must be finite rationals")
    if x <= 0:
        raise DomainError(f"lower endpoint must be positive, got {x}")
    if x >= y:
        raise DomainError(f"empty open interval: {x} is not less than {y}")
    return x, y


def simplest_between(x: Value, y: Value) -> Fraction:
    """
    The rational of least Stern-Brocot level strictly inside (x, y).

    Descends from the root with the bounds lo = 0/1 and hi = 1/0, taking
    whole runs of equal moves at once, so the cost is the length of the
    continued fraction rather than the depth of the vertex.

    Args:
        x: Lower endpoint, positive
        y: Upper endpoint, greater than x

    Returns:
        The fraction of minimal denominator (then minimal numerator) in (x, y)
    """
    x, y = _require_interval(x, y)
    a, b = x.numerator, x.denominator
    c, d = y.numerator, y.denominator
    lo_p, lo_q, hi_p, hi_q = 0, 1, 1, 0
    while True:
        mp, mq = lo_p + hi_p, lo_q + hi_q
        if mp * b <= a * mq:
            # run of right moves: largest t with (lo + t*hi) <= x
            t = (a * lo_q - b * lo_p) // (b * hi_p - a * hi_q)
            lo_p, lo_q = lo_p + t * hi_p, lo_q + t * hi_q
        elif mp * d >= c * mq:
            # run of left moves: largest t with (hi + t*lo) >= y
            t = (d * hi_p - c * hi_q) // (c * lo_q - d * lo_p)
            hi_p, hi_q = hi_p + t * lo_p, hi_q + t * lo_q
        else:
            return Fraction(mp, mq)


def simplest_between_by_cf(x: Value, y: Value) -> Fraction:
    """
    Common-prefix rule [a_0, ..., a_{k-1}, min(a_k, b_k) + 1] on the
    canonical expansions of x and y, where k is the first differing index.

    Raises:
        DomainError: if one expansion is a prefix of the other
    """
    x, y = _require_interval(x, y)
    a = cf_of_rational(x).quotients
    b = cf_of_rational(y).quotients
    k = next((i for i, (p, q) in enumerate(zip(a, b)) if p != q), None)
    if k is None:
        raise DomainError(f"{format_cf(cf_of_rational(x))} and {format_cf(cf_of_rational(y))} "
                          "share no differing quotient")
    return eval_cf(ContinuedFraction.of(a[:k] + (min(a[k], b[k]) + 1,)))


# ---------------------------------------------------------------------------
# Text forms

_CF_TEXT = re.compile(r"\[(.*)\]", re.DOTALL)
_FRACTION_TEXT = re.compile(r"(\d+)(?:/(\d+))?")


def parse_cf(text: str) -> ContinuedFraction:
    """Parse "[q0,q1,...]"; a trailing quotient 1 is merged on the way in."""
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    match = _CF_TEXT.fullmatch(stripped)
    if not match:
        position = 0 if not stripped.startswith("[") else len(stripped)
        raise ParseError("continued fraction must look like [q0,q1,...]", text, offset + position)
    quotients: List[int] = []
    cursor = offset + 1
    for piece in match.group(1).split(","):
        token = piece.strip()
        lead = len(piece) - len(piece.lstrip())
        if not token.isdigit():
            bad = next((i for i, ch in enumerate(token) if not ch.isdigit()), 0)
            raise ParseError("expected a non-negative decimal quotient", text, cursor + lead + bad)
        quotients.append(parse_int(token, text, cursor + lead))
        cursor += len(piece) + 1
    return ContinuedFraction.of(quotients)


def format_cf(c: Vertex, compact: bool = False) -> str:
    """"[1,2,3]", or "[123]" when compact; boundaries print as "[0]" and "[ ]"."""
    if isinstance(c, Boundary):
        return c.value
    separator = "" if compact else ","
    return "[" + separator.join(str(q) for q in c.quotients) + "]"


def parse_fraction(text: str) -> Value:
    """Parse "p/q" or "p"; "1/0" is the upper boundary, and the result is reduced."""
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    match = _FRACTION_TEXT.fullmatch(stripped)
    if not match:
        bad = next((i for i, ch in enumerate(stripped) if ch not in "0123456789/"), len(stripped))
        raise ParseError("fraction must look like p/q with non-negative integers", text, offset + bad)
    p = parse_int(match.group(1), text, offset + match.start(1))
    q = parse_int(match.group(2), text, offset + match.start(2)) if match.group(2) else 1
    if q == 0:
        if p == 0:
            raise ValidationError("0/0 is not a fraction")
        return Boundary.UPPER
    return Fraction(p, q)


def format_fraction(v: Value) -> str:
    """Always "p/q", including "3/1", "0/1" and "1/0"."""
    if isinstance(v, Boundary):
        return v.fraction_text
    return f"{v.numerator}/{v.denominator}"


def format_decimal(v: Value, digits: int) -> str:
    """Exact long division to ``digits`` fractional digits, truncated."""
    if isinstance(v, Boundary):
        return "0" if v is Boundary.LOWER else "inf"
    if digits < 0:
        raise ValidationError(f"digit count must be >= 0, got {digits}")
    sign = "-" if v < 0 else ""
    p, q = abs(v.numerator), v.denominator
    whole, rest = divmod(p, q)
    if digits == 0:
        return f"{sign}{whole}"
    fractional = []
    for _ in range(digits):
        digit, rest = divmod(rest * 10, q)
        fractional.append(str(digit))
    return f"{sign}{whole}." + "".join(fractional)
