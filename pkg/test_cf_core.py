#!/usr/bin/env python3
"""
Tests for the tree of continued fractions and the approximation queries.
"""

from fractions import Fraction

import hypothesis as hyp
import pytest
from hypothesis import strategies as st

from src.cf_core import (
    ROOT,
    Boundary,
    ContinuedFraction,
    Parents,
    best_lower_level,
    cf_at_level,
    cf_children,
    cf_level,
    cf_of_rational,
    cf_parents,
    cf_to_string,
    convergents,
    eval_cf,
    fold_cf,
    format_cf,
    format_decimal,
    format_fraction,
    mediant,
    parse_cf,
    parse_fraction,
    simplest_between,
    simplest_between_by_cf,
    string_to_cf,
    string_to_vertex,
)
from src.errors import DomainError, ParseError, ValidationError
from src.oracle import brute_simplest
from src.string_core import EMPTY, L_INVERSE, R_INVERSE, GenString, length, parse_string

words = st.text(alphabet="LR", max_size=30).map(parse_string)
deep_words = st.tuples(
    st.integers(min_value=0, max_value=10 ** 6),
    st.lists(st.integers(min_value=1, max_value=10 ** 6), max_size=6),
).map(lambda runs: GenString.from_runs([runs[0]] + runs[1]))
positives = st.fractions(min_value=Fraction(1, 60), max_value=60, max_denominator=60).filter(
    lambda x: x > 0
)


def cf(*quotients):
    return ContinuedFraction(tuple(quotients))


def test_validation():
    """Test the quotient constraints and canonicalization."""
    assert ContinuedFraction.of((1, 1)) == cf(2)
    assert ContinuedFraction.of((0, 2, 1)) == cf(0, 3)
    for bad in ((), (0,), (1, 1), (1, 0, 2), (-1, 2)):
        with pytest.raises(ValidationError):
            ContinuedFraction(bad)
    assert cf(1, 2, 3).m == 2


def test_eval_cf():
    """Test evaluation by convergents and by folding."""
    assert eval_cf(ROOT) == 1
    assert eval_cf(cf(1, 3)) == Fraction(4, 3)
    assert eval_cf(cf(2, 2)) == Fraction(5, 2)
    assert fold_cf(cf(1, 2, 3)) == Fraction(10, 7)
    assert list(convergents(cf(1, 2, 3))) == [(1, 1), (3, 2), (10, 7)]


def test_cf_of_rational():
    """Test the Euclidean expansion."""
    assert cf_of_rational(Fraction(4, 3)) == cf(1, 3)
    assert cf_of_rational(Fraction(2, 3)) == cf(0, 1, 2)
    assert cf_of_rational(Fraction(1)) == ROOT
    assert cf_of_rational(Fraction(5)) == cf(5)
    with pytest.raises(DomainError):
        cf_of_rational(Fraction(0))
    with pytest.raises(DomainError):
        cf_of_rational(Boundary.UPPER)


def test_children():
    """Test the children rules on the first rows."""
    assert cf_children(ROOT) == (cf(0, 2), cf(2))
    assert cf_children(cf(0, 2)) == (cf(0, 3), cf(0, 1, 2))
    assert cf_children(cf(2)) == (cf(1, 2), cf(3))


def test_parents():
    """Test close and distant parents, including boundary vertices."""
    assert cf_parents(cf(1, 3)) == Parents(cf(1, 2), ROOT)
    assert cf_parents(cf(0, 1, 2)) == Parents(cf(0, 2), ROOT)
    assert cf_parents(cf(2)) == Parents(ROOT, Boundary.UPPER)
    assert cf_parents(cf(0, 2)) == Parents(ROOT, Boundary.LOWER)
    assert cf_parents(ROOT) == Parents(Boundary.LOWER, Boundary.UPPER)


def test_string_bijection():
    """Test f and its inverse on known positions."""
    assert cf_to_string(ROOT) == EMPTY
    assert cf_to_string(cf(1, 3)) == parse_string("RLL")
    assert cf_to_string(cf(0, 1, 1, 2)) == parse_string("LRL")
    assert string_to_vertex(R_INVERSE) is Boundary.LOWER
    assert string_to_vertex(L_INVERSE) is Boundary.UPPER
    with pytest.raises(DomainError):
        string_to_cf(L_INVERSE)


def test_levels():
    """Test cf_level and the level rows."""
    assert cf_level(ROOT) == 0
    assert cf_level(cf(1, 3)) == 3
    assert cf_level(cf(0, 2)) == 1
    row = [format_cf(c) for c in cf_at_level(3)]
    assert row == [
        "[0,4]", "[0,2,2]", "[0,1,1,2]", "[0,1,3]", "[1,3]", "[1,1,2]", "[2,2]", "[4]",
    ]


def test_best_lower_level():
    """Test that the parent values are returned close first."""
    assert best_lower_level(cf(1, 3)) == (Fraction(3, 2), Fraction(1))
    assert best_lower_level(cf(0, 1, 2)) == (Fraction(1, 2), Fraction(1))
    assert best_lower_level(cf(2)) == (Fraction(1), Boundary.UPPER)
    with pytest.raises(DomainError):
        best_lower_level(ROOT)


def test_mediant():
    """Test mediants, including the formal boundaries."""
    assert mediant(Fraction(1, 2), Fraction(2, 3)) == Fraction(3, 5)
    assert mediant(Fraction(1), Boundary.UPPER) == Fraction(2)
    assert mediant(Boundary.LOWER, Boundary.UPPER) == Fraction(1)
    assert mediant(Boundary.UPPER, Boundary.UPPER) is Boundary.UPPER


def test_simplest_between():
    """Test the simplest fraction strictly inside an interval."""
    assert simplest_between(Fraction(7, 5), Fraction(3, 2)) == Fraction(10, 7)
    assert simplest_between(Fraction(1, 3), Fraction(2, 3)) == Fraction(1, 2)
    assert simplest_between(Fraction(1), Fraction(2)) == Fraction(3, 2)
    assert simplest_between(Fraction(1, 1000), Fraction(1, 999)) == Fraction(2, 1999)
    with pytest.raises(DomainError):
        simplest_between(Fraction(3, 2), Fraction(7, 5))
    with pytest.raises(DomainError):
        simplest_between(Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(DomainError):
        simplest_between(Fraction(0), Fraction(1))


def test_simplest_between_by_cf():
    """Test the common-prefix rule and its prefix case."""
    assert simplest_between_by_cf(Fraction(1, 3), Fraction(2, 3)) == Fraction(1, 2)
    assert simplest_between_by_cf(Fraction(5, 2), Fraction(17, 4)) == Fraction(3)
    with pytest.raises(DomainError):
        simplest_between_by_cf(Fraction(7, 5), Fraction(3, 2))


def test_text_forms():
    """Test parsing and printing of continued fractions and fractions."""
    assert parse_cf("[1, 2,3]") == cf(1, 2, 3)
    assert parse_cf("[1,2,1]") == cf(1, 3)
    assert format_cf(cf(1, 3)) == "[1,3]"
    assert format_cf(cf(1, 3), compact=True) == "[13]"
    assert format_cf(Boundary.UPPER) == "[ ]"
    assert format_cf(Boundary.LOWER) == "[0]"
    with pytest.raises(ParseError) as excinfo:
        parse_cf("1,2")
    assert excinfo.value.position == 0
    with pytest.raises(ParseError):
        parse_cf("[1,x]")

    assert parse_fraction("3/2") == Fraction(3, 2)
    assert parse_fraction("4/2") == Fraction(2)
    assert parse_fraction("7") == Fraction(7)
    assert parse_fraction("1/0") is Boundary.UPPER
    with pytest.raises(ValidationError):
        parse_fraction("0/0")
    with pytest.raises(ParseError):
        parse_fraction("-1/2")
    with pytest.raises(ParseError) as excinfo:
        parse_fraction("  3/x")
    assert excinfo.value.position == 4
    assert format_fraction(Fraction(3)) == "3/1"
    assert format_fraction(Boundary.LOWER) == "0/1"
    assert format_fraction(Boundary.UPPER) == "1/0"


def test_format_decimal():
    """Test truncated long division."""
    assert format_decimal(Fraction(10, 7), 5) == "1.42857"
    assert format_decimal(Fraction(2, 3), 3) == "0.666"
    assert format_decimal(Fraction(1, 3), 0) == "0"
    assert format_decimal(Boundary.UPPER, 4) == "inf"


@hyp.given(positives)
def test_expansion_round_trip(x):
    c = cf_of_rational(x)
    assert eval_cf(c) == x
    assert fold_cf(c) == x
    assert parse_cf(format_cf(c)) == c


@hyp.given(words)
def test_string_bijection_preserves_structure(s):
    c = string_to_cf(s)
    assert cf_to_string(c) == s
    assert cf_level(c) == length(s)
    left, right = cf_children(c)
    assert cf_level(left) == cf_level(right) == cf_level(c) + 1
    assert eval_cf(left) < eval_cf(c) < eval_cf(right)


@hyp.given(positives, positives)
def test_simplest_between_matches_brute_force(x, y):
    hyp.assume(x != y)
    x, y = min(x, y), max(x, y)
    got = simplest_between(x, y)
    assert x < got < y
    assert got == brute_simplest(x.numerator, x.denominator, y.numerator, y.denominator)


@hyp.settings(deadline=None)
@hyp.given(deep_words)
def test_bijection_on_deep_run_forms(s):
    c = string_to_cf(s)
    assert cf_to_string(c) == s
    assert cf_level(c) == length(s)
    assert parse_cf(format_cf(c)) == c
