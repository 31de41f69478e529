"""
Command-line surface: conversion between the tree's coordinate systems,
navigation, sequences, approximation queries, enumeration, rendering and
verification.
"""

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .cf_core import (
    Boundary,
    best_lower_level,
    cf_children,
    cf_of_rational,
    cf_parents,
    cf_to_string,
    format_cf,
    format_decimal,
    format_fraction,
    parse_cf,
    parse_fraction,
    simplest_between,
    string_to_cf,
    string_to_vertex,
    vertex_level,
)
from .config import Settings, load_settings
from .errors import DomainError, KinshipError, UsageError
from .metrics import (
    Dyadic,
    ExtPosition,
    distant_parent_sequence,
    format_dyadic,
    format_position,
    parse_dyadic,
    parse_position,
    position_closed,
    position_recursive,
    r_closed,
    r_recursive,
    string_at_ext_position,
    string_at_r,
)
from .oracle import SUITES, CheckReport, run_all, run_suite
from .output_generator import OutputGenerator
from .rational_trees import (
    enumerate_level_values,
    format_label,
    label_to_json,
    parse_tree_kind,
    render_tree,
    stern_brocot_locate,
    stern_brocot_value,
)
from .string_core import (
    L_INVERSE,
    R_INVERSE,
    GenString,
    children,
    format_runs,
    format_string,
    length,
    parent_close,
    parent_distant,
    parse_string,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

FORMATS = ("string", "runs", "position", "r", "cf", "fraction")
NUMERIC_FORMATS = ("r", "cf", "fraction")


# ---------------------------------------------------------------------------
# Format pivots: every format parses to and prints from a generalized string


def _parse_cf_vertex(text: str) -> GenString:
    stripped = text.strip()
    if stripped == Boundary.LOWER.value:
        return R_INVERSE
    if stripped in (Boundary.UPPER.value, "[]"):
        return L_INVERSE
    return cf_to_string(parse_cf(text))


def _position_of(s: GenString) -> ExtPosition:
    return position_closed(s) if s.is_word else position_recursive(s)


def _r_of(s: GenString) -> Dyadic:
    """Run-wise for words, so deep run forms stay cheap."""
    return r_closed(s) if s.is_word else r_recursive(s)


def _parse_fraction_vertex(text: str) -> GenString:
    value = parse_fraction(text)
    if value is Boundary.UPPER:
        return L_INVERSE
    if value == 0:
        return R_INVERSE
    return stern_brocot_locate(value)


_PARSERS: Dict[str, Callable[[str], GenString]] = {
    "string": parse_string,
    "runs": parse_string,
    "position": lambda text: string_at_ext_position(parse_position(text)),
    "r": lambda text: string_at_r(parse_dyadic(text)),
    "cf": _parse_cf_vertex,
    "fraction": _parse_fraction_vertex,
}

_FORMATTERS: Dict[str, Callable[[GenString], str]] = {
    "string": format_string,
    "runs": format_runs,
    "position": lambda s: format_position(_position_of(s)),
    "r": lambda s: format_dyadic(_r_of(s)),
    "cf": lambda s: format_cf(string_to_vertex(s)),
    "fraction": lambda s: format_fraction(stern_brocot_value(s)),
}


def _check_format(fmt: str) -> str:
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    return fmt


def parse_value(text: str, fmt: str) -> GenString:
    return _PARSERS[_check_format(fmt)](text)


def format_value(s: GenString, fmt: str) -> str:
    return _FORMATTERS[_check_format(fmt)](s)


def _numeric_value(s: GenString, fmt: str) -> Any:
    if fmt == "r":
        return _r_of(s).to_fraction()
    return stern_brocot_value(s)


# ---------------------------------------------------------------------------
# Commands


def cmd_convert(value: str, from_format: str, to_format: str, decimal: Optional[int] = None) -> str:
    """Convert a vertex between formats through its string."""
    s = parse_value(value, from_format)
    text = format_value(s, to_format)
    if decimal is not None:
        if to_format not in NUMERIC_FORMATS:
            raise UsageError(f"--decimal applies to {', '.join(NUMERIC_FORMATS)} output only")
        text += " " + format_decimal(_numeric_value(s, to_format), decimal)
    return text


def _tagged(label: str, s: GenString, fmt: str) -> str:
    tag = f"level {length(s)}" + ("" if s.is_word else ", boundary")
    return f"{label}: {format_value(s, fmt)} ({tag})"


def cmd_parents(value: str, fmt: str = "string") -> str:
    """
    Close and distant parent, one labeled line each.

    The root answers with its generalized parents R^{-1} and L^{-1}, tagged
    as boundary vertices.
    """
    s = parse_value(value, fmt)
    if not s.is_word:
        raise DomainError(f"{format_value(s, fmt)} is a boundary vertex and has no parents")
    if fmt == "cf":
        c = string_to_cf(s)
        close, distant = cf_parents(c)
        return "\n".join(
            f"{label}: {format_cf(v)} (level {vertex_level(v)}"
            + (", boundary)" if isinstance(v, Boundary) else ")")
            for label, v in (("close", close), ("distant", distant))
        )
    if s.is_empty:
        return "\n".join([_tagged("close", R_INVERSE, fmt), _tagged("distant", L_INVERSE, fmt)])
    return "\n".join(
        [_tagged("close", parent_close(s), fmt), _tagged("distant", parent_distant(s), fmt)]
    )


def cmd_children(value: str, fmt: str = "string") -> str:
    s = parse_value(value, fmt)
    if not s.is_word:
        raise DomainError(f"{format_value(s, fmt)} is a boundary vertex and has no children")
    if fmt == "cf":
        left, right = cf_children(string_to_cf(s))
        return f"left: {format_cf(left)}\nright: {format_cf(right)}"
    left, right = children(s)
    return f"left: {format_value(left, fmt)}\nright: {format_value(right, fmt)}"


def cmd_seq(count: int, output: str = "plain", max_count: Optional[int] = None) -> str:
    """a(n) = 2N(P_D(N^{-1}(n))) + 1 for n = 1..count, plain or as b-file lines."""
    limit = Settings().max_sequence_count if max_count is None else max_count
    terms = distant_parent_sequence(count, limit)
    if output == "bfile":
        return "\n".join(f"{n} {a}" for n, a in enumerate(terms, 1))
    if output != "plain":
        raise UsageError(f"unknown sequence output {output!r}; expected plain or bfile")
    return " ".join(str(a) for a in terms)


def _fraction_line(value: Fraction, decimal: Optional[int]) -> str:
    cf = format_cf(cf_of_rational(value))
    line = f"{format_fraction(value)} {cf} {format_string(stern_brocot_locate(value))}"
    if decimal is not None:
        line += " " + format_decimal(value, decimal)
    return line


def cmd_between(x: str, y: str, decimal: Optional[int] = None) -> str:
    """The simplest fraction strictly between x and y, with its CF and string."""
    return _fraction_line(simplest_between(parse_fraction(x), parse_fraction(y)), decimal)


def cmd_best(value: str, fmt: str = "cf", decimal: Optional[int] = None) -> str:
    """Best lower-level approximations of a vertex: the values of its two parents."""
    s = parse_value(value, fmt)
    if not s.is_word:
        raise DomainError(f"{format_value(s, fmt)} is a boundary vertex")
    close, distant = best_lower_level(string_to_cf(s))
    lines = []
    for label, v in (("close", close), ("distant", distant)):
        if isinstance(v, Boundary):
            lines.append(f"{label}: {v.fraction_text} {v.value} (boundary)")
        else:
            lines.append(f"{label}: {_fraction_line(v, decimal)}")
    return "\n".join(lines)


def cmd_enum(
    tree: str,
    level: int,
    as_json: bool = False,
    binary: bool = False,
    max_level: Optional[int] = None,
) -> str:
    """One level row of a labeling, left to right."""
    kind = parse_tree_kind(tree)
    bound = Settings().max_level if max_level is None else max_level
    values = enumerate_level_values(kind, level, bound)
    if as_json:
        return json.dumps([label_to_json(kind, v) for v in values])
    return " ".join(format_label(kind, v, binary=binary) for v in values)


def cmd_render(
    tree: str,
    depth: int,
    style: str = "text",
    binary: bool = False,
    max_level: Optional[int] = None,
) -> str:
    bound = Settings().max_level if max_level is None else max_level
    return render_tree(parse_tree_kind(tree), depth, style, binary, bound)


def cmd_verify(
    suite: str,
    depth: Optional[int] = None,
    as_json: bool = False,
    settings: Optional[Settings] = None,
    jobs: Optional[int] = None,
    progress: bool = False,
    output: Optional[str] = None,
    csv: Optional[str] = None,
) -> Tuple[int, str]:
    """
    Run one suite or all of them.

    Returns:
        (exit status, report text); the status is 0 iff no suite failed
    """
    settings = settings or Settings()
    if suite == "all":
        if depth is not None:
            raise UsageError("--depth applies to a single suite, not to all")
        reports = run_all(settings, jobs, progress)
    else:
        reports = [run_suite(suite, depth, settings, jobs, progress)]

    generator = OutputGenerator()
    if output or csv:
        document = generator.generate_output(reports, settings)
        if output:
            generator.save_output(document, output)
            logger.info("\n" + generator.generate_summary_report(document))
        if csv:
            generator.export_to_csv(document, csv)

    status = EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED
    return status, _render_reports(reports, as_json, suite == "all")


def _render_reports(reports: List[CheckReport], as_json: bool, many: bool) -> str:
    if as_json:
        payload: Any = [r.to_dict() for r in reports] if many else reports[0].to_dict()
        return json.dumps(payload, indent=2)
    return "\n".join(r.to_text() for r in reports)


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kinship",
        description="Exact kinship calculus on the infinite complete binary tree",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="path to config.json (default: KINSHIP_CONFIG or repo root)")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    parser.add_argument("--max-level", type=int, help="enumeration bound on string level")
    parser.add_argument("--seed", type=int, help="seed for randomized verification cases")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert a vertex between formats")
    p.add_argument("value")
    p.add_argument("from_format", metavar="from", choices=FORMATS)
    p.add_argument("to_format", metavar="to", choices=FORMATS)
    p.add_argument("--decimal", type=int, metavar="K", help="append K truncated decimal digits")

    for name, text in (("parents", "close and distant parent"), ("children", "left and right child")):
        p = sub.add_parser(name, help=text)
        p.add_argument("value")
        p.add_argument("--format", dest="fmt", default="string", choices=FORMATS)

    p = sub.add_parser("seq", help="distant-parent integer sequence")
    p.add_argument("count", type=int)
    p.add_argument("--bfile", action="store_true", help="emit 'n a(n)' lines")

    p = sub.add_parser("between", help="simplest fraction strictly between x and y")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--decimal", type=int, metavar="K")

    p = sub.add_parser("best", help="best lower-level approximations of a vertex")
    p.add_argument("value")
    p.add_argument("--format", dest="fmt", default="cf", choices=FORMATS)
    p.add_argument("--decimal", type=int, metavar="K")

    p = sub.add_parser("enum", help="one level row of a tree labeling")
    p.add_argument("tree")
    p.add_argument("level", type=int)
    p.add_argument("--json", dest="as_json", action="store_true")
    p.add_argument("--binary", action="store_true", help="binary-point r-values")

    p = sub.add_parser("render", help="draw a labeling to a given depth")
    p.add_argument("tree")
    p.add_argument("depth", type=int)
    p.add_argument("--style", choices=("text", "dot"), default="text")
    p.add_argument("--binary", action="store_true")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", help=f"one of {', '.join(SUITES)} or all")
    p.add_argument("--depth", type=int)
    p.add_argument("--json", dest="as_json", action="store_true")
    p.add_argument("--jobs", type=int, help="parallel workers")
    p.add_argument("--progress", action="store_true")
    p.add_argument("--output", help="write the full JSON document here")
    p.add_argument("--csv", help="write <stem>_summary.csv and <stem>_failures.csv")
    return parser


def configure_logging(settings: Settings, verbose: bool = False) -> None:
    """Stderr handler plus the log file when its directory exists."""
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), logging.INFO)
    handlers: List[logging.Handler] = []
    if settings.log_console:
        handlers.append(logging.StreamHandler(sys.stderr))
    log_dir = os.path.dirname(settings.log_file) or "."
    handlers.append(
        logging.FileHandler(settings.log_file, "a") if os.path.exists(log_dir) else logging.NullHandler()
    )
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def _dispatch(args: argparse.Namespace, settings: Settings) -> Tuple[int, str]:
    command = args.command
    if command == "convert":
        return EXIT_OK, cmd_convert(args.value, args.from_format, args.to_format, args.decimal)
    if command == "parents":
        return EXIT_OK, cmd_parents(args.value, args.fmt)
    if command == "children":
        return EXIT_OK, cmd_children(args.value, args.fmt)
    if command == "seq":
        return EXIT_OK, cmd_seq(args.count, "bfile" if args.bfile else "plain", settings.max_sequence_count)
    if command == "between":
        return EXIT_OK, cmd_between(args.x, args.y, args.decimal)
    if command == "best":
        return EXIT_OK, cmd_best(args.value, args.fmt, args.decimal)
    if command == "enum":
        return EXIT_OK, cmd_enum(args.tree, args.level, args.as_json, args.binary, settings.max_level)
    if command == "render":
        return EXIT_OK, cmd_render(args.tree, args.depth, args.style, args.binary, settings.max_level)
    return cmd_verify(
        args.suite, args.depth, args.as_json, settings, args.jobs, args.progress, args.output, args.csv
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and print its output.

    Returns:
        0 on success, 1 when verification fails, 2 on usage, parse or domain errors
    """
    # positions and r numerators of deep run forms run to millions of digits
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        overrides = {
            "max_level": args.max_level,
            "seed": args.seed,
            "jobs": getattr(args, "jobs", None),
        }
        settings = load_settings(args.config, overrides)
        configure_logging(settings, args.verbose)
        status, text = _dispatch(args, settings)
    except KinshipError as e:
        print(f"error: {e}", file=sys.stderr)
        if isinstance(e, (DomainError, UsageError)):
            print(f"hint: run 'kinship {args.command} --help' for usage", file=sys.stderr)
        return EXIT_USAGE

    print(text)
    return status
