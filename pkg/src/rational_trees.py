"""
Stern-Brocot and Calkin-Wilf labelings of the complete binary tree, plus
level rows and text/DOT rendering for every labeling the toolkit knows.
"""

import logging
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

from .cf_core import (
    Boundary,
    Value,
    cf_of_rational,
    cf_to_string,
    format_cf,
    format_fraction,
    string_to_cf,
    string_to_vertex,
)
from .config import DEFAULT_MAX_LEVEL
from .errors import DomainError, ResourceLimitError, UsageError
from .metrics import (
    PositionKind,
    format_dyadic,
    format_position,
    level_strings,
    position_recursive,
    r_recursive,
    to_binary_point,
)
from .string_core import (
    EMPTY,
    L_INVERSE,
    R_INVERSE,
    GenString,
    Kind,
    children,
    reverse,
    run_count,
)

logger = logging.getLogger(__name__)


class TreeKind(str, Enum):
    STERN_BROCOT = "stern_brocot"
    CALKIN_WILF = "calkin_wilf"
    CF = "cf"
    R_METRIC = "r_metric"
    POSITION = "position"
    RUN_COUNT = "run_count"


def parse_tree_kind(text: str) -> TreeKind:
    try:
        return TreeKind(text)
    except ValueError as e:
        known = ", ".join(t.value for t in TreeKind)
        raise UsageError(f"unknown tree {text!r}; expected one of {known}") from e


def stern_brocot_pair(s: GenString) -> Tuple[int, int]:
    """
    Unreduced (p, q) at position s of the Stern-Brocot tree.

    Keeps the bounds lo = 0/1 and hi = 1/0 and moves a whole run at a time:
    R^k sets lo += k*hi, L^k sets hi += k*lo. The vertex is the mediant
    lo + hi.
    """
    if not s.is_word:
        raise DomainError(f"{s.kind.value} is a boundary, not a vertex")
    lo_p, lo_q, hi_p, hi_q = 0, 1, 1, 0
    for i, k in enumerate(s.runs):
        if i % 2 == 0:
            lo_p, lo_q = lo_p + k * hi_p, lo_q + k * hi_q
        else:
            hi_p, hi_q = hi_p + k * lo_p, hi_q + k * lo_q
    return lo_p + hi_p, lo_q + hi_q


def stern_brocot_value(s: GenString) -> Value:
    """Fraction at position s; R^{-1} and L^{-1} answer with 0/1 and 1/0."""
    if s.kind is Kind.R_INVERSE:
        return Boundary.LOWER
    if s.kind is Kind.L_INVERSE:
        return Boundary.UPPER
    return Fraction(*stern_brocot_pair(s))


def calkin_wilf_value(s: GenString) -> Fraction:
    if not s.is_word:
        raise DomainError(f"the Calkin-Wilf tree has no value for {s.kind.value}")
    return stern_brocot_value(reverse(s))


def calkin_wilf_walk(s: GenString) -> Fraction:
    """Calkin-Wilf value by the children rule a/b -> a/(a+b) (L), (a+b)/b (R)."""
    if not s.is_word:
        raise DomainError(f"the Calkin-Wilf tree has no value for {s.kind.value}")
    a, b = 1, 1
    for i, k in enumerate(s.runs):
        if i % 2 == 0:
            a += k * b
        else:
            b += k * a
    return Fraction(a, b)


def stern_brocot_locate(x: Value) -> GenString:
    """The word whose Stern-Brocot value is x."""
    if isinstance(x, Boundary):
        raise DomainError(f"{x.fraction_text} is a boundary value, not a tree vertex")
    if x <= 0:
        raise DomainError(f"positive rational expected, got {x}")
    return cf_to_string(cf_of_rational(x))


_VALUE_OF: Dict[TreeKind, Callable[[GenString], Any]] = {
    TreeKind.STERN_BROCOT: stern_brocot_value,
    TreeKind.CALKIN_WILF: calkin_wilf_value,
    TreeKind.CF: string_to_cf,
    TreeKind.R_METRIC: r_recursive,
    TreeKind.POSITION: position_recursive,
    TreeKind.RUN_COUNT: run_count,
}

# Labelings that extend to the two generalized parents of the root.
_HAS_BOUNDARY = {TreeKind.STERN_BROCOT, TreeKind.CF, TreeKind.R_METRIC, TreeKind.POSITION}


def vertex_label(tree: TreeKind, s: GenString) -> Any:
    if tree is TreeKind.CF:
        return string_to_vertex(s)
    return _VALUE_OF[tree](s)


def format_label(tree: TreeKind, value: Any, binary: bool = False, compact: bool = False) -> str:
    """Text form of one vertex label in the given labeling."""
    if tree in (TreeKind.STERN_BROCOT, TreeKind.CALKIN_WILF):
        return format_fraction(value)
    if tree is TreeKind.CF:
        return format_cf(value, compact=compact)
    if tree is TreeKind.R_METRIC:
        return to_binary_point(value) if binary else format_dyadic(value)
    if tree is TreeKind.POSITION:
        return format_position(value)
    return str(value)


def enumerate_level_values(
    tree: TreeKind, m: int, max_level: int = DEFAULT_MAX_LEVEL
) -> List[Any]:
    """The 2^m labels of level m, left to right."""
    value_of = _VALUE_OF[tree]
    return [value_of(s) for s in level_strings(m, max_level)]


def label_to_json(tree: TreeKind, value: Any) -> Any:
    """JSON-ready form: integers stay integers, everything else uses its text form."""
    if tree is TreeKind.POSITION and value.kind is PositionKind.NAT:
        return value.n
    if tree is TreeKind.RUN_COUNT:
        return value
    return format_label(tree, value)


# ---------------------------------------------------------------------------
# Rendering


def _boundary_vertices(tree: TreeKind) -> List[Tuple[str, GenString]]:
    if tree not in _HAS_BOUNDARY:
        return []
    return [("lower", R_INVERSE), ("upper", L_INVERSE)]


def _preorder(root: GenString, depth: int) -> List[Tuple[int, GenString]]:
    out: List[Tuple[int, GenString]] = []
    stack = [(0, root)]
    while stack:
        level, s = stack.pop()
        out.append((level, s))
        if level < depth:
            left, right = children(s)
            stack.append((level + 1, right))
            stack.append((level + 1, left))
    return out


def render_tree(
    tree: TreeKind,
    depth: int,
    style: str = "text",
    binary: bool = False,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> str:
    """
    Draw the labeling down to ``depth`` levels below the root.

    Args:
        tree: Which labeling to draw
        depth: Deepest level included
        style: "text" (indented pre-order, two spaces per level, boundary
            vertices first) or "dot" (Graphviz digraph)
        binary: Render r-values in binary-point form
        max_level: Enumeration bound

    Returns:
        The rendered tree
    """
    if depth < 0:
        raise DomainError(f"depth must be a natural number, got {depth}")
    if depth > max_level:
        raise ResourceLimitError(f"depth {depth} exceeds the configured bound {max_level}")

    vertices = _preorder(EMPTY, depth)
    boundary = _boundary_vertices(tree)

    def label(s: GenString) -> str:
        return format_label(tree, vertex_label(tree, s), binary=binary)

    if style == "text":
        lines = [label(s) for _, s in boundary]
        lines.extend("  " * level + label(s) for level, s in vertices)
        return "\n".join(lines)

    if style != "dot":
        raise UsageError(f"unknown render style {style!r}; expected text or dot")

    lines = [f'digraph "{tree.value}" {{', "  node [shape=plaintext];"]
    for name, s in boundary:
        lines.append(f'  {name} [label="{label(s)}"];')
    for _, s in vertices:
        n = position_recursive(s).n
        lines.append(f'  n{n} [label="{label(s)}"];')
    for name, _ in boundary:
        lines.append(f"  {name} -> n0 [style=dashed];")
    for level, s in vertices:
        if level < depth:
            n = position_recursive(s).n
            lines.append(f"  n{n} -> n{2 * n + 1};")
            lines.append(f"  n{n} -> n{2 * n + 2};")
    lines.append("}")
    logger.debug(f"Rendered {tree.value} to depth {depth} as DOT ({len(vertices)} vertices)")
    return "\n".join(lines)
