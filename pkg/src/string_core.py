"""
LR-strings and generalized strings of the infinite complete binary tree.

A word is stored in run-length form (k_0, k_1, ..., k_m) denoting
R^{k_0} L^{k_1} R^{k_2} ...: even-indexed runs are R-runs, odd-indexed runs
are L-runs, k_0 >= 0 and every later run is >= 1. The empty word is (0,).
The two generalized strings L^{-1} and R^{-1} act as the virtual parents of
the root and carry no runs.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from itertools import groupby
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import DomainError, ParseError, ValidationError, parse_int

logger = logging.getLogger(__name__)


class Letter(str, Enum):
    L = "L"
    R = "R"


class Kind(Enum):
    WORD = "word"
    L_INVERSE = "L^-1"
    R_INVERSE = "R^-1"


def _run_letter(index: int) -> Letter:
    return Letter.R if index % 2 == 0 else Letter.L


@dataclass(frozen=True)
class GenString:
    """Canonical generalized string; construct words through from_runs()."""

    kind: Kind
    runs: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind is not Kind.WORD:
            if self.runs:
                raise ValidationError(f"{self.kind.value} carries no runs")
            return
        if not self.runs:
            raise ValidationError("a word needs at least the leading run k_0")
        if self.runs[0] < 0:
            raise ValidationError(f"k_0 must be >= 0, got {self.runs[0]}")
        for i, k in enumerate(self.runs[1:], 1):
            if k < 1:
                raise ValidationError(f"run k_{i} must be >= 1 in canonical form, got {k}")

    @classmethod
    def from_runs(cls, runs: Sequence[int]) -> "GenString":
        """
        Build the canonical word for an arbitrary run sequence.

        Zero runs after index 0 are removed and their neighbours merged, so
        S(1,0,2) is RRR and S(0,2,0) is LL.

        Args:
            runs: Non-negative run lengths (k_0, ..., k_m)

        Returns:
            The canonical word

        Raises:
            ValidationError: if a run is negative or the sequence is empty
        """
        if not runs:
            raise ValidationError("run sequence must not be empty")
        for i, k in enumerate(runs):
            if k < 0:
                raise ValidationError(f"run k_{i} must be non-negative, got {k}")
        lettered = [(_run_letter(i), k) for i, k in enumerate(runs) if k > 0]
        canonical = _from_letter_runs(lettered)
        if canonical != tuple(runs):
            logger.debug(f"Canonicalized runs {tuple(runs)} -> {canonical}")
        return cls(Kind.WORD, canonical)

    @property
    def is_word(self) -> bool:
        return self.kind is Kind.WORD

    @property
    def is_empty(self) -> bool:
        return self.kind is Kind.WORD and self.runs == (0,)

    def __str__(self) -> str:
        return format_string(self)


EMPTY = GenString(Kind.WORD, (0,))
L_INVERSE = GenString(Kind.L_INVERSE)
R_INVERSE = GenString(Kind.R_INVERSE)

_SENTINEL_FOR = {Letter.L: L_INVERSE, Letter.R: R_INVERSE}


def _from_letter_runs(lettered: Sequence[Tuple[Letter, int]]) -> Tuple[int, ...]:
    """Merge adjacent equal letters and lay the counts out as (k_0, ..., k_m)."""
    merged: List[Tuple[Letter, int]] = []
    for letter, group in groupby(lettered, key=lambda item: item[0]):
        merged.append((letter, sum(count for _, count in group)))
    runs: List[int] = []
    if not merged or merged[0][0] is Letter.L:
        runs.append(0)
    runs.extend(count for _, count in merged)
    return tuple(runs)


def _letter_runs(s: GenString) -> List[Tuple[Letter, int]]:
    return [(_run_letter(i), k) for i, k in enumerate(s.runs) if k > 0]


def _require_word(s: GenString, operation: str) -> None:
    if not s.is_word:
        raise DomainError(f"{operation} is undefined for the generalized string {s.kind.value}")


def _degenerate(runs: List[int], below: Letter) -> GenString:
    """Canonical value of a run list after run arithmetic.

    A leading run of -1 is the degenerate S(-1), read as R^{-1}; an empty
    list (run 0 dropped entirely) is read as the sentinel named by ``below``.
    """
    if not runs:
        return _SENTINEL_FOR[below]
    if runs[0] < 0:
        return R_INVERSE
    return GenString.from_runs(runs)


# ---------------------------------------------------------------------------
# Text forms

_RUN_FORM = re.compile(r"S\((.*)\)\Z", re.DOTALL)


def parse_string(text: str) -> GenString:
    """
    Parse the text syntax of generalized strings.

    Accepted forms: a possibly empty sequence over {L, R}; "e" for the empty
    word; "L^-1"; "R^-1"; run form "S(k0,k1,...)".

    Raises:
        ParseError: naming the offending position
        ValidationError: for negative run lengths
    """
    stripped = text.strip()
    if stripped in ("e", ""):
        return EMPTY
    if stripped == L_INVERSE.kind.value:
        return L_INVERSE
    if stripped == R_INVERSE.kind.value:
        return R_INVERSE

    offset = len(text) - len(text.lstrip())
    if stripped.startswith("S("):
        match = _RUN_FORM.match(stripped)
        if not match:
            raise ParseError("run form must end with ')'", text, offset + len(stripped))
        runs: List[int] = []
        cursor = offset + 2
        for piece in match.group(1).split(","):
            token = piece.strip()
            lead = len(piece) - len(piece.lstrip())
            if not re.fullmatch(r"-?\d+", token):
                bad = next((i for i, ch in enumerate(token) if not ch.isdigit()), 0)
                raise ParseError("expected a decimal run length", text, cursor + lead + bad)
            runs.append(parse_int(token, text, cursor + lead))
            cursor += len(piece) + 1
        return GenString.from_runs(runs)

    for i, ch in enumerate(stripped):
        if ch not in "LR":
            raise ParseError(f"unexpected character {ch!r}; expected L or R", text, offset + i)
    return from_letters(Letter(ch) for ch in stripped)


def format_string(s: GenString) -> str:
    """Letter syntax: ε prints as "e", sentinels as "L^-1" / "R^-1"."""
    if not s.is_word:
        return s.kind.value
    if s.is_empty:
        return "e"
    return "".join(letter.value * count for letter, count in _letter_runs(s))


def format_runs(s: GenString) -> str:
    if not s.is_word:
        return s.kind.value
    return "S(" + ",".join(str(k) for k in s.runs) + ")"


def from_letters(letters: Iterable[Letter]) -> GenString:
    return GenString(
        Kind.WORD,
        _from_letter_runs([(letter, sum(1 for _ in group)) for letter, group in groupby(letters)]),
    )


def iter_letters(s: GenString) -> Iterator[Letter]:
    """Stream the letters of a word without materializing it."""
    _require_word(s, "letter iteration")
    for letter, count in _letter_runs(s):
        for _ in range(count):
            yield letter


# ---------------------------------------------------------------------------
# Navigation


def last_letter(s: GenString) -> Optional[Letter]:
    _require_word(s, "last_letter")
    if s.is_empty:
        return None
    return _run_letter(len(s.runs) - 1)


def child(s: GenString, d: Letter) -> GenString:
    """C_L(S) = SL and C_R(S) = SR."""
    _require_word(s, "child")
    runs = list(s.runs)
    if last_letter(s) is d or (s.is_empty and d is Letter.R):
        runs[-1] += 1
    else:
        runs.append(1)
    return GenString(Kind.WORD, tuple(runs))


def children(s: GenString) -> Tuple[GenString, GenString]:
    return child(s, Letter.L), child(s, Letter.R)


def append_inverse(s: GenString, d: Letter) -> GenString:
    """
    Compute S·d^{-1} with the cancellation rules LL^{-1} = RR^{-1} = ε,
    LR^{-1} = R^{-1} and RL^{-1} = L^{-1}.

    A trailing run of the other letter is cancelled as a whole (x d^{-1} = d^{-1}
    applied once per letter), then one letter d is removed. If no d is left the
    result is the sentinel d^{-1}.

    Args:
        s: A word
        d: The letter whose inverse is appended

    Returns:
        A word, or the sentinel d^{-1}
    """
    _require_word(s, "append_inverse")
    runs = list(s.runs)
    while True:
        if not runs or runs == [0]:
            return _SENTINEL_FOR[d]
        if _run_letter(len(runs) - 1) is d:
            runs[-1] -= 1
            return GenString.from_runs(runs)
        runs.pop()


def parent_left(s: GenString) -> GenString:
    """P_L(S) = S R^{-1}."""
    return append_inverse(s, Letter.R)


def parent_right(s: GenString) -> GenString:
    """P_R(S) = S L^{-1}."""
    return append_inverse(s, Letter.L)


def parents(s: GenString) -> Tuple[GenString, GenString]:
    return parent_left(s), parent_right(s)


def _decrement_last(runs: Sequence[int]) -> GenString:
    # X = S(k_0, ..., k_{m-1}, k_m - 1)
    decremented = list(runs)
    decremented[-1] -= 1
    return _degenerate(decremented, Letter.R)


def _drop_last_run(runs: Sequence[int]) -> GenString:
    # Y = S(k_0, ..., k_{m-2}, k_{m-1} - 1); for m = 0 nothing is left below k_0
    shortened = list(runs[:-1])
    if shortened:
        shortened[-1] -= 1
    return _degenerate(shortened, Letter.L)


def parents_by_formula(s: GenString) -> Tuple[GenString, GenString]:
    """
    (P_L(S), P_R(S)) by run arithmetic instead of cancellation.

    With X = S(k_0..k_{m-1}, k_m - 1) and Y = S(k_0..k_{m-2}, k_{m-1} - 1):
    P_L = X and P_R = Y when m is even, swapped when m is odd. For ε the
    reading is X = R^{-1}, Y = L^{-1}.
    """
    _require_word(s, "parents_by_formula")
    x, y = _decrement_last(s.runs), _drop_last_run(s.runs)
    if (len(s.runs) - 1) % 2 == 0:
        return x, y
    return y, x


def parent_close(s: GenString) -> GenString:
    """Close parent: delete the last letter. Level |S| - 1."""
    _require_word(s, "parent_close")
    if s.is_empty:
        raise DomainError("the empty string has no close parent")
    return _decrement_last(s.runs)


def parent_distant(s: GenString) -> GenString:
    """Distant parent: drop the last run and decrement the one before it."""
    _require_word(s, "parent_distant")
    if s.is_empty:
        raise DomainError("the empty string has no distant parent")
    return _drop_last_run(s.runs)


# ---------------------------------------------------------------------------
# Length functions


def length(s: GenString) -> int:
    """|S|; both sentinels sit at level -1."""
    if not s.is_word:
        return -1
    return sum(s.runs)


def run_count(s: GenString) -> int:
    """M(S): the index m of the last run of S(k_0, ..., k_m)."""
    _require_word(s, "run_count")
    return len(s.runs) - 1


def reverse(s: GenString) -> GenString:
    _require_word(s, "reverse")
    lettered = _letter_runs(s)
    lettered.reverse()
    return GenString(Kind.WORD, _from_letter_runs(lettered))
