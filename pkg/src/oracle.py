"""
Bounded-depth exhaustive verification suites.

Each suite enumerates plain-tuple cases up to a depth and checks every
statement it covers, collecting all failures instead of stopping at the
first. Cases can be fanned out to joblib workers; partial reports merge in
case order, so results do not depend on the worker count.
"""

import logging
import random
import time
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Callable, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from tqdm import tqdm

from .cf_core import (
    Boundary,
    ContinuedFraction,
    best_lower_level,
    cf_children,
    cf_level,
    cf_of_rational,
    cf_parents,
    cf_to_string,
    eval_cf,
    fold_cf,
    format_cf,
    format_fraction,
    mediant,
    simplest_between,
    simplest_between_by_cf,
    string_to_cf,
    string_to_vertex,
    vertex_value,
)
from .config import Settings
from .errors import DomainError, KinshipError, ResourceLimitError, UsageError
from .metrics import (
    DISTANT_PARENT_SEQUENCE_22,
    TABLE_1_CLOSE,
    TABLE_1_DISTANT,
    Dyadic,
    ExtPosition,
    PositionKind,
    close_parent_position,
    compare_strings,
    distant_parent_sequence,
    expected_level_r_values,
    level_r_values,
    nearest_lower_level,
    parent_positions,
    position_closed,
    position_recursive,
    r_closed,
    r_closed_alt,
    r_recursive,
    string_at_position,
    string_at_r,
)
from .rational_trees import (
    TreeKind,
    calkin_wilf_value,
    calkin_wilf_walk,
    enumerate_level_values,
    format_label,
    stern_brocot_locate,
    stern_brocot_pair,
    stern_brocot_value,
)
from .string_core import (
    EMPTY,
    L_INVERSE,
    R_INVERSE,
    GenString,
    Letter,
    child,
    children,
    format_runs,
    format_string,
    length,
    parent_close,
    parent_distant,
    parent_left,
    parent_right,
    parents,
    parents_by_formula,
    parse_string,
    reverse,
    run_count,
)

logger = logging.getLogger(__name__)

# Figure rows, levels 0..3, left to right.
FIG_R_BINARY: Tuple[Tuple[str, ...], ...] = (
    ("1.0",),
    ("0.1", "1.1"),
    ("0.01", "0.11", "1.01", "1.11"),
    ("0.001", "0.011", "0.101", "0.111", "1.001", "1.011", "1.101", "1.111"),
)
FIG_POSITION: Tuple[Tuple[str, ...], ...] = (
    ("0",),
    ("1", "2"),
    ("3", "4", "5", "6"),
    ("7", "8", "9", "10", "11", "12", "13", "14"),
)
FIG_RUN_COUNT: Tuple[Tuple[str, ...], ...] = (
    ("0",),
    ("1", "0"),
    ("1", "2", "1", "0"),
    ("1", "2", "3", "2", "1", "2", "1", "0"),
)
FIG_CF: Tuple[Tuple[str, ...], ...] = (
    ("[1]",),
    ("[0,2]", "[2]"),
    ("[0,3]", "[0,1,2]", "[1,2]", "[3]"),
    ("[0,4]", "[0,2,2]", "[0,1,1,2]", "[0,1,3]", "[1,3]", "[1,1,2]", "[2,2]", "[4]"),
)
FIG_STERN_BROCOT: Tuple[Tuple[str, ...], ...] = (
    ("1/1",),
    ("1/2", "2/1"),
    ("1/3", "2/3", "3/2", "3/1"),
    ("1/4", "2/5", "3/5", "3/4", "4/3", "5/3", "5/2", "4/1"),
)
FIG_CALKIN_WILF: Tuple[Tuple[str, ...], ...] = (
    ("1/1",),
    ("1/2", "2/1"),
    ("1/3", "3/2", "2/3", "3/1"),
    ("1/4", "4/3", "3/5", "5/2", "2/5", "5/3", "3/4", "4/1"),
)

FIGURE_ROWS: Dict[TreeKind, Tuple[Tuple[str, ...], ...]] = {
    TreeKind.R_METRIC: FIG_R_BINARY,
    TreeKind.POSITION: FIG_POSITION,
    TreeKind.RUN_COUNT: FIG_RUN_COUNT,
    TreeKind.CF: FIG_CF,
    TreeKind.STERN_BROCOT: FIG_STERN_BROCOT,
    TreeKind.CALKIN_WILF: FIG_CALKIN_WILF,
}

MAX_FIGURE_LEVEL = 3
NEAREST_LOWER_DEPTH = 10
TEXT_FINDINGS_SHOWN = 10
TEXT_FAILURES_SHOWN = 20

Case = Tuple[Any, ...]


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class Failure:
    input: str
    expected: str
    actual: str

    def to_dict(self) -> Dict[str, str]:
        return {"input": self.input, "expected": self.expected, "actual": self.actual}


@dataclass
class CheckReport:
    """Outcome of one suite run. ``passed`` holds exactly when failures is empty."""

    suite: str
    depth: int
    cases_checked: int = 0
    failures: List[Failure] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "CheckReport") -> "CheckReport":
        """Concatenate in order; associative, with an empty report as identity."""
        return CheckReport(
            suite=self.suite,
            depth=self.depth,
            cases_checked=self.cases_checked + other.cases_checked,
            failures=self.failures + other.failures,
            findings=self.findings + other.findings,
            elapsed=self.elapsed + other.elapsed,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "depth": self.depth,
            "cases": self.cases_checked,
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
            "findings": list(self.findings),
            "elapsed_seconds": round(self.elapsed, 3),
        }

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"{self.suite} (depth {self.depth}): {self.cases_checked} cases, "
            f"{len(self.failures)} failures [{status}] in {self.elapsed:.2f}s"
        ]
        for failure in self.failures[:TEXT_FAILURES_SHOWN]:
            lines.append(
                f"  FAIL {failure.input}: expected {failure.expected}, got {failure.actual}"
            )
        if len(self.failures) > TEXT_FAILURES_SHOWN:
            lines.append(f"  ... and {len(self.failures) - TEXT_FAILURES_SHOWN} more failures")
        if self.findings:
            lines.append(f"  {len(self.findings)} findings")
            for finding in self.findings[:TEXT_FINDINGS_SHOWN]:
                lines.append(f"  note: {finding}")
            if len(self.findings) > TEXT_FINDINGS_SHOWN:
                lines.append(f"  ... and {len(self.findings) - TEXT_FINDINGS_SHOWN} more findings")
        return "\n".join(lines)


class _Recorder:
    """Collects the outcome of the checks inside one case."""

    def __init__(self):
        self.count = 1
        self.failures: List[Failure] = []
        self.findings: List[str] = []

    def expect(
        self,
        what: str,
        expected: Any,
        actual: Any,
        render: Callable[[Any], str] = str,
    ) -> bool:
        if expected == actual:
            return True
        self.failures.append(Failure(what, render(expected), render(actual)))
        return False

    def require(self, what: str, condition: bool, detail: str = "") -> None:
        if not condition:
            self.failures.append(Failure(what, "true", f"false{': ' + detail if detail else ''}"))

    def rejects(self, what: str, call: Callable[[], Any]) -> None:
        try:
            result = call()
        except DomainError:
            return
        self.failures.append(Failure(what, "DomainError", _render(result)))


def _render_pair(pair: Sequence[Any]) -> str:
    return "(" + ", ".join(_render(v) for v in pair) + ")"


def _render(v: Any) -> str:
    if isinstance(v, GenString):
        return format_string(v)
    if isinstance(v, (ContinuedFraction, Boundary)):
        return format_cf(v)
    if isinstance(v, Fraction):
        return format_fraction(v)
    if isinstance(v, (tuple, list)):
        return _render_pair(v)
    if isinstance(v, (set, frozenset)):
        return "{" + ", ".join(sorted(_render(x) for x in v)) + "}"
    return str(v)


def _render_size(values: Sequence[Any]) -> str:
    return f"{len(values)} values"


# ---------------------------------------------------------------------------
# Enumeration


def count_upto(max_level: int) -> int:
    """Number of words of level <= max_level."""
    return (1 << (max_level + 1)) - 1


def enumerate_strings(max_level: int, bound: Optional[int] = None) -> Iterator[GenString]:
    """All words of level <= max_level in (level, position) order."""
    bound = Settings().max_level if bound is None else bound
    if max_level < 0:
        raise DomainError(f"level must be a natural number, got {max_level}")
    if max_level > bound:
        raise ResourceLimitError(f"level {max_level} exceeds the configured bound {bound}")
    for n in range(count_upto(max_level)):
        yield string_at_position(n)


@lru_cache(maxsize=16)
def _ranked_strings(max_level: int) -> Tuple[Tuple[GenString, Dyadic], ...]:
    return tuple((s, r_recursive(s)) for s in enumerate_strings(max_level, max_level))


@lru_cache(maxsize=16)
def _ranked_cfs(max_level: int) -> Tuple[Tuple[GenString, Fraction], ...]:
    return tuple(
        (s, eval_cf(string_to_cf(s))) for s in enumerate_strings(max_level, max_level)
    )


@lru_cache(maxsize=32)
def _lower_level_values(level: int) -> Tuple[Fraction, ...]:
    """Sorted values of every vertex of level < ``level``."""
    return tuple(sorted(eval_cf(string_to_cf(string_at_position(n))) for n in range(count_upto(level - 1))))


def _sign(x: Any) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# thm21: level sets, parent recurrences, parent lengths and r-offsets


def _thm21_cases(depth: int, settings: Settings) -> List[Case]:
    return [(n,) for n in range(count_upto(depth))]


def _thm21_check(case: Case, depth: int, settings: Settings, rec: _Recorder) -> None:
    (n,) = case
    s = string_at_position(n)
    m = length(s)
    name = format_string(s)

    if n == (1 << m) - 1:
        rec.expect(f"level {m} r-values", expected_level_r_values(m),
                   level_r_values(m, max_level=settings.max_level), _render_size)
        rec.expect(f"levels <= {m} r-values", expected_level_r_values(m, cumulative=True),
                   level_r_values(m, cumulative=True, max_level=settings.max_level), _render_size)

    pl, pr = parents(s)
    left, right = children(s)
    if s.is_empty:
        rec.expect("P_L(e)", R_INVERSE, pl, _render)
        rec.expect("P_R(e)", L_INVERSE, pr, _render)
    rec.expect(f"P_L({name}L)", pl, parent_left(left), _render)
    rec.expect(f"P_L({name}R)", s, parent_left(right), _render)
    rec.expect(f"P_R({name}L)", s, parent_right(left), _render)
    rec.expect(f"P_R({name}R)", pr, parent_right(right), _render)

    if not s.is_empty:
        rec.require(f"max(|P_L|,|P_R|) < |{name}|", max(length(pl), length(pr)) < m)
        rec.require(f"|P_L({name})| != |P_R({name})|", length(pl) != length(pr))
        close, distant = parent_close(s), parent_distant(s)
        rec.expect(f"{{P_C, P_D}}({name})", {pl, pr}, {close, distant}, _render)
        rec.expect(f"|P_C({name})|", m - 1, length(close))
        rec.require(f"P_C({name}) = P_L iff N even", (close == pl) == (n % 2 == 0))

    unit = Dyadic.unit(m)
    r = r_recursive(s)
    rec.expect(f"r(P_L({name}))", r - unit, r_recursive(pl))
    rec.expect(f"r(P_R({name}))", r + unit, r_recursive(pr))
    rec.expect(f"X/Y parents of {name}", (pl, pr), parents_by_formula(s), _render)

    if m <= NEAREST_LOWER_DEPTH:
        rec.expect(f"nearest lower-level of {name}", (pl, pr),
                   nearest_lower_level(s, settings.max_level), _render)
        rec.expect(f"parse(format({name}))", s, parse_string(format_string(s)), _render)
        rec.expect(f"parse({format_runs(s)})", s, parse_string(format_runs(s)), _render)
        rec.expect(f"reverse(reverse({name}))", s, reverse(reverse(s)), _render)
    if n == 0:
        for sentinel in (L_INVERSE, R_INVERSE):
            rec.expect(f"parse({format_string(sentinel)})", sentinel,
                       parse_string(format_string(sentinel)), _render)


# ---------------------------------------------------------------------------
# thm22: closed forms against the recurrences, position bijectivity


def _thm22_cases(depth: int, settings: Settings) -> List[Case]:
    return [("string", n) for n in range(count_upto(depth))] + [("walk", depth)]


def _thm22_check(case: Case, depth: int, settings: Settings, rec: _Recorder) -> None:
    if case[0] == "walk":
        _check_position_walk(case[1], rec)
        return
    n = case[1]
    s = string_at_position(n)
    name = format_string(s)
    r = r_recursive(s)
    rec.expect(f"r_closed({name})", r, r_closed(s))
    rec.expect(f"r_closed_alt({name})", r, r_closed_alt(s))
    position = position_recursive(s)
    rec.expect(f"N({name})", ExtPosition.nat(n), position)
    rec.expect(f"position_closed({name})", position, position_closed(s))
    rec.expect(f"string_at_r({r})", s, string_at_r(r), _render)
    if n >= 1:
        rec.expect(f"N(P_C({name}))", close_parent_position(n),
                   position_recursive(parent_close(s)).n)


def _check_position_walk(depth: int, rec: _Recorder) -> None:
    """Walk the tree by children only and check N against its inverse."""
    seen = set()
    frontier = [EMPTY]
    for _ in range(depth + 1):
        following = []
        for s in frontier:
            n = position_recursive(s).n
            seen.add(n)
            rec.expect(f"string_at_position(N({format_string(s)}))", s,
                       string_at_position(n), _render)
            following.extend(children(s))
        frontier = following
    rec.expect(f"positions of levels <= {depth}", set(range(count_upto(depth))), seen,
               lambda v: f"{len(v)} distinct positions")


# ---------------------------------------------------------------------------
# cor23: M/N parity, alternating-lexicographic order, injectivity of r


def _cor23_cases(depth: int, settings: Settings) -> List[Case]:
    pair_level = min(depth, settings.pair_depth)
    cases: List[Case] = [("parity", n) for n in range(count_upto(depth))]
    cases.extend(("order", i, pair_level) for i in range(count_upto(pair_level)))
    cases.append(("injective", min(depth, NEAREST_LOWER_DEPTH)))
    return cases


def _cor23_check(case: Case, depth: int, settings: Settings, rec: _Recorder) -> None:
    kind = case[0]
    if kind == "parity":
        s = string_at_position(case[1])
        rec.expect(f"M({format_string(s)}) mod 2", case[1] % 2, run_count(s) % 2)
    elif kind == "order":
        _, i, pair_level = case
        ranked = _ranked_strings(pair_level)
        si, ri = ranked[i]
        rec.count = len(ranked)
        for sj, rj in ranked:
            got = compare_strings(si, sj)
            want = _sign((ri - rj).numerator)
            if got != want:
                rec.failures.append(Failure(
                    f"compare({format_string(si)}, {format_string(sj)})", str(want), str(got)))
    else:
        level = case[1]
        values = [r_recursive(s) for s in enumerate_strings(level, level)]
        values += [r_recursive(R_INVERSE), r_recursive(L_INVERSE)]
        rec.expect(f"distinct r-values at levels <= {level}", len(values), len(set(values)))


# ---------------------------------------------------------------------------
# table1: close/distant parent positions and the distant-parent sequence


def _table1_cases(depth: int, settings: Settings) -> List[Case]:
    return [(n,) for n in range(1, depth + 1)] or [(0,)]


def _table1_check(case: Case, depth: int, settings: Settings, rec: _Recorder) -> None:
    (n,) = case
    if n == 0:
        rec.rejects("parent_positions(0)", lambda: parent_positions(0))
        return
    close, distant = parent_positions(n)
    rec.expect(f"N(P_C) at n={n} by identity", close_parent_position(n), close.n)
    if n <= len(TABLE_1_CLOSE):
        rec.expect(f"table N(P_C) at n={n}", TABLE_1_CLOSE[n - 1], close.n)
        rec.expect(f"table N(P_D) at n={n}", TABLE_1_DISTANT[n - 1], distant.as_fraction(),
                   format_fraction)
    term = distant.doubled_plus_one()
    rec.expect(f"2N(P_D)+1 at n={n}", 2 * distant.as_fraction() + 1, Fraction(term), format_fraction)
    if distant.kind is PositionKind.NAT:
        rec.require(f"a({n}) odd", term % 2 == 1, str(term))
    if n <= len(DISTANT_PARENT_SEQUENCE_22):
        rec.expect(f"a({n})", DISTANT_PARENT_SEQUENCE_22[n - 1], term)
    if n == 1:
        prefix = min(depth, len(DISTANT_PARENT_SEQUENCE_22))
        rec.expect(f"a(1..{prefix})", list(DISTANT_PARENT_SEQUENCE_22[:prefix]),
                   distant_parent_sequence(prefix, settings.max_sequence_count))


# ---------------------------------------------------------------------------
# thm31: the string bijection f and its structure preservation


def _thm31_cases(depth: int, settings: Settings) -> List[Case]:
    pair_level = min(depth, settings.pair_depth)
    cases: List[Case] = [("vertex", n, pair_level) for n in range(count_upto(depth))]
    cases.extend(("order", i, pair_level) for i in range(count_upto(pair_level)))
    return cases


def _thm31_check(case: Case, depth: int, settings: Settings, rec: _Recorder) -> None:
    kind, index, pair_level = case
    if kind == "order":
        ranked = _ranked_cfs(pair_level)
        si, vi = ranked[index]
        rec.count = len(ranked)
        for sj, vj in ranked:
            if (vi < vj) != (compare_strings(si, sj) < 0):
                rec.failures.append(Failure(
                    f"order of {format_cf(string_to_cf(si))} vs {format_cf(string_to_cf(sj))}",
                    str(vi < vj), str(compare_strings(si, sj) < 0)))
        return

    s = string_at_position(index)
    c = string_to_cf(s)
    label = format_cf(c)
    rec.expect(f"f({label})", s, cf_to_string(c), _render)
    rec.expect(f"level({label})", length(s), cf_level(c))
    left, right = cf_children(c)
    rec.expect(f"f(left child of {label})", child(s, Letter.L), cf_to_string(left), _render)
    rec.expect(f"f(right child of {label})", child(s, Letter.R), cf_to_string(right), _render)
    value = eval_cf(c)
    rec.expect(f"fold {label}", value, fold_cf(c), format_fraction)
    rec.expect(f"cf_of_rational({format_fraction(value)})", c, cf_of_rational(value), _render)

    q0 = c.quotients[0]
    lower_ok = q0 < value if c.m >= 1 else q0 <= value
    rec.require(f"{q0} <= {label} < {q0 + 1}", lower_ok and value < q0 + 1, format_fraction(value))

    last = c.quotients[-1]
    if length(s) <= pair_level and last < 10:
        grown = eval_cf(ContinuedFraction(c.quotients[:-1] + (last + 1,)))
        increasing = c.m % 2 == 0
        rec.require(f"monotone in last quotient at {label}", (grown > value) == increasing)


# ---------------------------------------------------------------------------
# best_approx: parents as the best lower-level approximations


def _best_approx_cases(depth: int, settings: Settings) -> List[Case]:
    return [(n,) for n in range(1, count_upto(depth))] or [(0,)]


def _best_approx_check(case: Case, depth: int, settings: Settings, rec: _Recorder) -> None:
    (n,) = case
    s = string_at_position(n)
    c = string_to_cf(s)
    label = format_cf(c)
    if n == 0:
        rec.rejects(f"best_lower_level({label})", lambda: best_lower_level(c))
        return
    x = eval_cf(c)
    close, distant = cf_parents(c)
    parent_values = {vertex_value(close), vertex_value(distant)}
    rec.expect(f"best_lower_level({label})", (vertex_value(close), vertex_value(distant)),
               best_lower_level(c), _render)

    lower = _lower_level_values(length(s))
    i = bisect_left(lower, x)
    below = lower[i - 1] if i > 0 else Boundary.LOWER
    above = lower[i] if i < len(lower) else Boundary.UPPER
    rec.expect(f"nearest lower-level values around {label}", parent_values, {below, above}, _render)

    if any(isinstance(v, Boundary) for v in parent_values):
        return
    window = sorted(lower[max(0, i - 3):i + 3], key=lambda v: abs(v - x))
    nearest = set(window[:2])
    if nearest != parent_values:
        rec.findings.append(
            f"{label} = {format_fraction(x)}: closest lower-level values {_render(nearest)} "
            f"differ from parents {_render(parent_values)}"
        )
    if len(window) >= 3 and abs(window[1] - x) == abs(window[2] - x):
        rec.findings.append(
            f"{label} = {format_fraction(x)}: tie between {format_fraction(window[1])} "
            f"and {format_fraction(window[2])}"
        )


# ---------------------------------------------------------------------------
# stern_brocot: value map, mediants, reversal duality, uniqueness


def _stern_brocot_cases(depth: int, settings: Settings) -> List[Case]:
    cases: List[Case] = [("vertex", n) for n in range(count_upto(depth))]
    cases.extend(("row", m) for m in range(depth + 1))
    cases.append(("distinct", depth))
    return cases


def _stern_brocot_check(case: Case, depth: int, settings: Settings, rec: _Recorder) -> None:
    kind, index = case
    if kind == "vertex":
        s = string_at_position(index)
        name = format_string(s)
        p, q = stern_brocot_pair(s)
        rec.require(f"SB({name}) reduced", gcd(p, q) == 1, f"{p}/{q}")
        value = stern_brocot_value(s)
        rec.expect(f"SB({name}) vs eval f^-1", eval_cf(string_to_cf(s)), value, format_fraction)
        pl, pr = parents(s)
        rec.expect(f"SB({name}) as mediant of parents",
                   value, mediant(stern_brocot_value(pl), stern_brocot_value(pr)), _render)
        rec.expect(f"CW({name})", calkin_wilf_walk(s), calkin_wilf_value(s), format_fraction)
        rec.expect(f"locate(SB({name}))", s, stern_brocot_locate(value), _render)
    elif kind == "row":
        row = enumerate_level_values(TreeKind.STERN_BROCOT, index, settings.max_level)
        rec.require(f"SB level {index} increasing", all(a < b for a, b in zip(row, row[1:])))
        cw_row = enumerate_level_values(TreeKind.CALKIN_WILF, index, settings.max_level)
        rec.expect(f"CW level {index} as a set", set(row), set(cw_row), _render_size)
    else:
        values = [stern_brocot_value(s) for s in enumerate_strings(index, settings.max_level)]
        rec.expect(f"distinct SB values at levels <= {index}", len(values), len(set(values)))


# ---------------------------------------------------------------------------
# simplest: descent vs brute force vs the common-prefix rule


def _reduced_upto(max_den: int, max_value: int) -> List[Tuple[int, int]]:
    pairs = [
        (p, q)
        for q in range(1, max_den + 1)
        for p in range(1, max_value * q + 1)
        if gcd(p, q) == 1
    ]
    pairs.sort(key=lambda pq: Fraction(*pq))
    return pairs


def farey(order: int) -> List[Tuple[int, int]]:
    """Farey sequence of the given order on [0, 1] as (p, q) pairs."""
    a, b, c, d = 0, 1, 1, order
    out = [(a, b)]
    while c <= order:
        k = (order + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        out.append((a, b))
    return out


def brute_simplest(a: int, b: int, c: int, d: int) -> Fraction:
    """Least denominator, then least numerator, strictly inside (a/b, c/d)."""
    q = 1
    while True:
        p = a * q // b + 1
        if p * d < c * q:
            return Fraction(p, q)
        q += 1


def random_cf_pair(seed: int, index: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Two canonical expansions sharing a prefix, differing at k, both continuing past k."""
    rng = random.Random(seed * 1_000_003 + index)
    k = rng.randint(0, 3)
    prefix = [rng.randint(0, 3)] + [rng.randint(1, 5) for _ in range(k - 1)] if k else []
    low = 0 if k == 0 else 1
    a_k = rng.randint(low, 6)
    b_k = rng.choice([v for v in range(low, 7) if v != a_k])

    def tail() -> List[int]:
        qs = [rng.randint(1, 5) for _ in range(rng.randint(0, 2))]
        return qs + [rng.randint(2, 6)]

    return tuple(prefix + [a_k] + tail()), tuple(prefix + [b_k] + tail())


def _simplest_cases(depth: int, settings: Settings) -> List[Case]:
    grid = _reduced_upto(min(depth, settings.all_pairs_denominator), 2)
    cases: List[Case] = [
        ("pair",) + grid[i] + grid[j] for i in range(len(grid)) for j in range(i + 1, len(grid))
    ]
    sequence = farey(depth)[1:]
    for step in (1, 2):
        cases.extend(
            ("pair",) + sequence[i] + sequence[i + step] for i in range(len(sequence) - step)
        )
    if not cases:
        cases.append(("pair", 1, 1, 2, 1))
    cases.extend(("random", i) for i in range(settings.random_pairs))
    return cases


def _simplest_check(case: Case, depth: int, settings: Settings, rec: _Recorder) -> None:
    if case[0] == "pair":
        _, a, b, c, d = case
        got = simplest_between(Fraction(a, b), Fraction(c, d))
        rec.expect(f"simplest in ({a}/{b}, {c}/{d})", brute_simplest(a, b, c, d), got,
                   format_fraction)
        return
    qx, qy = random_cf_pair(settings.seed, case[1])
    x, y = sorted((eval_cf(ContinuedFraction(qx)), eval_cf(ContinuedFraction(qy))))
    got = simplest_between(x, y)
    where = f"({format_fraction(x)}, {format_fraction(y)})"
    rec.expect(f"common-prefix rule on {where}", simplest_between_by_cf(x, y), got, format_fraction)
    rec.expect(f"brute force on {where}",
               brute_simplest(x.numerator, x.denominator, y.numerator, y.denominator),
               got, format_fraction)


# ---------------------------------------------------------------------------
# figures: printed figure rows and table columns


def _figures_cases(depth: int, settings: Settings) -> List[Case]:
    top = min(depth, MAX_FIGURE_LEVEL)
    cases: List[Case] = [("row", tree.value, m) for tree in FIGURE_ROWS for m in range(top + 1)]
    cases.extend([("boundaries",), ("table1",)])
    return cases


def _figures_check(case: Case, depth: int, settings: Settings, rec: _Recorder) -> None:
    if case[0] == "row":
        tree, m = TreeKind(case[1]), case[2]
        row = [
            format_label(tree, v, binary=tree is TreeKind.R_METRIC)
            for v in enumerate_level_values(tree, m, settings.max_level)
        ]
        rec.expect(f"{tree.value} level {m}", " ".join(FIGURE_ROWS[tree][m]), " ".join(row))
    elif case[0] == "boundaries":
        rec.expect("r(R^-1)", Dyadic(0), r_recursive(R_INVERSE))
        rec.expect("r(L^-1)", Dyadic(2), r_recursive(L_INVERSE))
        rec.expect("N(R^-1)", "-1", str(position_recursive(R_INVERSE)))
        rec.expect("N(L^-1)", "-1/2", str(position_recursive(L_INVERSE)))
        rec.expect("SB(R^-1)", "0/1", format_fraction(stern_brocot_value(R_INVERSE)))
        rec.expect("SB(L^-1)", "1/0", format_fraction(stern_brocot_value(L_INVERSE)))
        rec.expect("vertex of R^-1", "[0]", format_cf(string_to_vertex(R_INVERSE)))
        rec.expect("vertex of L^-1", "[ ]", format_cf(string_to_vertex(L_INVERSE)))
    else:
        rows = [parent_positions(n) for n in range(1, len(TABLE_1_CLOSE) + 1)]
        rec.expect("table column N(P_C)", list(TABLE_1_CLOSE), [c.n for c, _ in rows])
        rec.expect("table column N(P_D)", list(TABLE_1_DISTANT), [d.as_fraction() for _, d in rows],
                   lambda v: " ".join(format_fraction(x) for x in v))


# ---------------------------------------------------------------------------
# Registry and runner


class Suite(NamedTuple):
    name: str
    description: str
    cases: Callable[[int, Settings], List[Case]]
    check: Callable[[Case, int, Settings, _Recorder], None]
    bound: str


SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("thm21", "level r-value sets, parent recurrences, lengths and r-offsets",
              _thm21_cases, _thm21_check, "max_level"),
        Suite("thm22", "closed forms of r and N against their recurrences",
              _thm22_cases, _thm22_check, "max_level"),
        Suite("cor23", "M/N parity and the alternating-lexicographic order",
              _cor23_cases, _cor23_check, "max_level"),
        Suite("table1", "close and distant parent positions, distant-parent sequence",
              _table1_cases, _table1_check, "max_sequence_count"),
        Suite("thm31", "the continued-fraction bijection preserves level, children and order",
              _thm31_cases, _thm31_check, "max_level"),
        Suite("best_approx", "parents are the nearest lower-level approximations",
              _best_approx_cases, _best_approx_check, "max_level"),
        Suite("stern_brocot", "Stern-Brocot values, mediants, uniqueness, Calkin-Wilf duality",
              _stern_brocot_cases, _stern_brocot_check, "max_level"),
        Suite("simplest", "simplest rational between two fractions",
              _simplest_cases, _simplest_check, "max_denominator"),
        Suite("figures", "figure rows and table columns",
              _figures_cases, _figures_check, "max_level"),
    )
}


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        known = ", ".join(SUITES)
        raise UsageError(f"unknown suite {name!r}; expected one of {known} or all") from None


def _run_chunk(name: str, depth: int, chunk: Sequence[Case], settings: Settings) -> CheckReport:
    suite = SUITES[name]
    report = CheckReport(name, depth)
    for case in chunk:
        rec = _Recorder()
        try:
            suite.check(case, depth, settings, rec)
        except KinshipError as e:
            rec.failures.append(Failure(f"{name} case {case!r}", "no error", f"{type(e).__name__}: {e}"))
        report.cases_checked += rec.count
        report.failures.extend(rec.failures)
        report.findings.extend(rec.findings)
    return report


def _split(cases: Sequence[Case], parts: int) -> List[Sequence[Case]]:
    size = max(1, -(-len(cases) // parts))
    return [cases[i:i + size] for i in range(0, len(cases), size)]


def run_suite(
    name: str,
    depth: Optional[int] = None,
    settings: Optional[Settings] = None,
    jobs: Optional[int] = None,
    progress: bool = False,
) -> CheckReport:
    """
    Run one suite exhaustively up to ``depth``.

    Args:
        name: Suite identifier (see SUITES)
        depth: Depth to check; the configured default when None
        settings: Resolved settings; built-in defaults when None
        jobs: Worker processes; the configured value when None
        progress: Show a tqdm progress bar on stderr

    Returns:
        CheckReport with every failure and finding, in case order
    """
    settings = settings or Settings()
    suite = get_suite(name)
    depth = settings.depth_for(name) if depth is None else depth
    jobs = settings.jobs if jobs is None else jobs
    if depth < 0:
        raise DomainError(f"depth must be a natural number, got {depth}")
    bound = getattr(settings, suite.bound)
    if depth > bound:
        raise ResourceLimitError(f"{name} depth {depth} exceeds {suite.bound}={bound}")

    logger.info(f"Running suite {name} at depth {depth} ({suite.description})")
    start = time.time()
    cases = suite.cases(depth, settings)
    chunks = _split(cases, max(jobs, 1) * 8 if jobs > 1 else 64)
    chunk_iter = tqdm(chunks, desc=name, unit="chunk", disable=not progress)

    if jobs > 1:
        partials = Parallel(n_jobs=jobs)(
            delayed(_run_chunk)(name, depth, chunk, settings) for chunk in chunk_iter
        )
    else:
        partials = [_run_chunk(name, depth, chunk, settings) for chunk in chunk_iter]

    report = CheckReport(name, depth)
    for partial in partials:
        report = report.merge(partial)
    report.elapsed = time.time() - start

    logger.info(
        f"Suite {name}: {report.cases_checked} cases, {len(report.failures)} failures "
        f"in {report.elapsed:.2f}s"
    )
    if report.findings:
        logger.warning(f"Suite {name} reported {len(report.findings)} findings")
    target = settings.target_seconds.get(name)
    if target is not None and report.elapsed > target:
        logger.warning(f"Suite {name} took {report.elapsed:.2f}s, over its {target:.0f}s target")
    return report


def run_all(
    settings: Optional[Settings] = None,
    jobs: Optional[int] = None,
    progress: bool = False,
) -> List[CheckReport]:
    """Every suite at its configured default depth, in registry order."""
    return [run_suite(name, None, settings, jobs, progress) for name in SUITES]
