#!/usr/bin/env python3
"""
Tests for the dyadic order metric r, positions N and the level sets.
"""

from fractions import Fraction

import hypothesis as hyp
import pytest
from hypothesis import strategies as st

from src.errors import DomainError, ParseError, ResourceLimitError, ValidationError
from src.metrics import (
    DISTANT_PARENT_SEQUENCE_22,
    NEG_HALF,
    NEG_ONE,
    ONE,
    TABLE_1_CLOSE,
    TABLE_1_DISTANT,
    TWO,
    ZERO,
    Dyadic,
    ExtPosition,
    close_parent_position,
    compare_strings,
    distant_parent_sequence,
    expected_level_r_values,
    format_dyadic,
    level_r_values,
    level_strings,
    nearest_lower_level,
    parent_positions,
    parse_dyadic,
    parse_position,
    position_closed,
    position_recursive,
    r_closed,
    r_closed_alt,
    r_recursive,
    string_at_position,
    string_at_r,
    to_binary_point,
)
from src.string_core import (
    EMPTY,
    L_INVERSE,
    R_INVERSE,
    GenString,
    length,
    parent_left,
    parent_right,
    parse_string,
    run_count,
)

words = st.text(alphabet="LR", max_size=40).map(parse_string)
deep_words = st.tuples(
    st.integers(min_value=0, max_value=10 ** 6),
    st.lists(st.integers(min_value=1, max_value=10 ** 6), max_size=6),
).map(lambda runs: GenString.from_runs([runs[0]] + runs[1]))


def w(text):
    return parse_string(text)


def test_dyadic_canonical_form():
    """Test normalization and the structural equality it enables."""
    assert Dyadic.of(4, 3) == Dyadic(1, 1)
    assert Dyadic.of(0, 5) == ZERO
    assert Dyadic.unit(3) == Dyadic(1, 3)
    assert Dyadic.of(3, 2) + Dyadic.of(1, 2) == ONE
    assert TWO - Dyadic.of(1, 1) == Dyadic(3, 1)
    assert Dyadic.of(1, 3) < Dyadic.of(1, 2)
    assert Dyadic.from_fraction(Fraction(3, 8)) == Dyadic(3, 3)
    assert Dyadic(5, 2).to_fraction() == Fraction(5, 4)
    with pytest.raises(ValidationError):
        Dyadic(2, 1)
    with pytest.raises(ValidationError):
        Dyadic.from_fraction(Fraction(1, 3))


def test_dyadic_text_forms():
    """Test a/2^e, a/b and binary-point input and output."""
    assert parse_dyadic("11/2^3") == Dyadic(11, 3)
    assert parse_dyadic("1.011") == Dyadic(11, 3)
    assert parse_dyadic("3/4") == Dyadic(3, 2)
    assert parse_dyadic("10") == TWO
    assert format_dyadic(Dyadic(9, 3)) == "9/2^3"
    assert format_dyadic(ONE) == "1/2^0"
    assert to_binary_point(Dyadic(1, 3)) == "0.001"
    assert to_binary_point(Dyadic(11, 3)) == "1.011"
    assert to_binary_point(ONE) == "1.0"
    assert to_binary_point(TWO) == "10.0"
    with pytest.raises(ValidationError):
        parse_dyadic("1/3")
    with pytest.raises(ParseError):
        parse_dyadic("1.2x")
    with pytest.raises(ParseError) as excinfo:
        parse_dyadic("  1.2x")
    assert excinfo.value.position == 5
    with pytest.raises(ParseError) as excinfo:
        parse_dyadic(" 1/0")
    assert excinfo.value.position == 3


def test_positions_text_forms():
    """Test the extended position values."""
    assert parse_position("-1/2") == NEG_HALF
    assert parse_position("-1") == NEG_ONE
    assert parse_position("12") == ExtPosition.nat(12)
    assert str(NEG_HALF) == "-1/2"
    assert NEG_ONE.doubled_plus_one() == -1
    assert NEG_HALF.doubled_plus_one() == 0
    assert ExtPosition.nat(3).doubled_plus_one() == 7
    with pytest.raises(ParseError):
        parse_position("x")
    with pytest.raises(ParseError) as excinfo:
        parse_position(" 1x")
    assert excinfo.value.position == 2
    with pytest.raises(ValidationError):
        ExtPosition.nat(-2)


def test_r_recursive():
    """Test r on the root, leaves and sentinels."""
    assert r_recursive(EMPTY) == ONE
    assert r_recursive(w("LLL")) == Dyadic(1, 3)
    assert r_recursive(w("RL")) == Dyadic(5, 2)
    assert r_recursive(L_INVERSE) == TWO
    assert r_recursive(R_INVERSE) == ZERO


def test_r_closed_forms():
    """Test both closed forms on hand-evaluated strings."""
    assert r_closed(EMPTY) == ONE
    assert r_closed(w("RL")) == Dyadic(5, 2)
    assert r_closed(w("RRR")) == Dyadic(15, 3)
    assert r_closed_alt(w("RL")) == Dyadic(5, 2)
    with pytest.raises(DomainError):
        r_closed(L_INVERSE)


def test_positions():
    """Test N by recurrence and closed form."""
    assert position_recursive(EMPTY) == ExtPosition.nat(0)
    assert position_recursive(w("RRR")) == ExtPosition.nat(14)
    assert position_recursive(L_INVERSE) == NEG_HALF
    assert position_recursive(R_INVERSE) == NEG_ONE
    assert position_closed(EMPTY) == ExtPosition.nat(0)
    assert position_closed(w("RL")) == ExtPosition.nat(5)
    assert position_closed(w("LLL")) == ExtPosition.nat(7)
    with pytest.raises(DomainError):
        position_closed(R_INVERSE)


def test_inverse_maps():
    """Test string_at_position and string_at_r."""
    assert string_at_position(0) == EMPTY
    assert string_at_position(5) == w("RL")
    assert string_at_position(14) == w("RRR")
    assert string_at_r(Dyadic(9, 3)) == w("RLL")
    assert string_at_r(ONE) == EMPTY
    assert string_at_r(ZERO) is R_INVERSE
    assert string_at_r(TWO) is L_INVERSE
    with pytest.raises(DomainError):
        string_at_r(Dyadic(5, 1))
    with pytest.raises(DomainError):
        string_at_position(-1)


def test_compare_strings():
    """Test the alternating-lexicographic order."""
    assert compare_strings(w("L"), w("R")) == -1
    assert compare_strings(w("RL"), w("RLR")) == -1
    assert compare_strings(w("RLL"), w("RL")) == -1
    assert compare_strings(w("RL"), w("RL")) == 0
    assert compare_strings(R_INVERSE, EMPTY) == -1
    assert compare_strings(L_INVERSE, w("RRRR")) == 1


def test_level_r_values():
    """Test the level sets against their closed descriptions."""
    assert level_r_values(0) == (ONE,)
    assert level_r_values(1) == (Dyadic(1, 1), Dyadic(3, 1))
    assert level_r_values(2, cumulative=True) == tuple(Dyadic.of(k, 2) for k in range(1, 8))
    for m in range(7):
        assert level_r_values(m) == expected_level_r_values(m)
        assert level_r_values(m, cumulative=True) == expected_level_r_values(m, cumulative=True)


def test_level_bounds():
    """Test that enumeration respects the configured bound."""
    with pytest.raises(ResourceLimitError):
        list(level_strings(5, max_level=4))
    with pytest.raises(DomainError):
        list(level_strings(-1))
    assert len(list(level_strings(4))) == 16


def test_nearest_lower_level():
    """Test that the neighbours among shallower strings are the two parents."""
    assert nearest_lower_level(EMPTY) == (R_INVERSE, L_INVERSE)
    assert nearest_lower_level(w("RL")) == (EMPTY, w("R"))
    with pytest.raises(DomainError):
        nearest_lower_level(L_INVERSE)


def test_parent_positions_table():
    """Test both columns of the parent position table for n = 1..22."""
    rows = [parent_positions(n) for n in range(1, 23)]
    assert [close.n for close, _ in rows] == list(TABLE_1_CLOSE)
    assert [distant.as_fraction() for _, distant in rows] == list(TABLE_1_DISTANT)
    assert parent_positions(4) == (ExtPosition.nat(1), ExtPosition.nat(0))
    assert parent_positions(2) == (ExtPosition.nat(0), NEG_HALF)
    assert close_parent_position(12) == 5
    with pytest.raises(DomainError):
        parent_positions(0)


def test_distant_parent_sequence():
    """Test the first terms and the count bounds."""
    assert distant_parent_sequence(1) == [-1]
    assert distant_parent_sequence(3) == [-1, 0, -1]
    assert distant_parent_sequence(22) == list(DISTANT_PARENT_SEQUENCE_22)
    with pytest.raises(DomainError):
        distant_parent_sequence(0)
    with pytest.raises(ResourceLimitError):
        distant_parent_sequence(10, max_count=5)


@hyp.given(words)
def test_closed_forms_match_recurrences(s):
    assert r_closed(s) == r_recursive(s)
    assert r_closed_alt(s) == r_recursive(s)
    assert position_closed(s) == position_recursive(s)


@hyp.given(words)
def test_inverse_maps_round_trip(s):
    assert string_at_position(position_recursive(s).n) == s
    assert string_at_r(r_recursive(s)) == s


@hyp.given(words)
def test_parent_r_offsets(s):
    unit = Dyadic.unit(length(s))
    assert r_recursive(parent_left(s)) == r_recursive(s) - unit
    assert r_recursive(parent_right(s)) == r_recursive(s) + unit


@hyp.given(words)
def test_run_count_parity_matches_position(s):
    assert run_count(s) % 2 == position_recursive(s).n % 2


@hyp.given(words, words)
def test_compare_agrees_with_r(s, t):
    diff = (r_recursive(s) - r_recursive(t)).numerator
    assert compare_strings(s, t) == (diff > 0) - (diff < 0)


@hyp.given(st.integers(min_value=1, max_value=5000))
def test_close_parent_identity(n):
    close, _ = parent_positions(n)
    assert close.n == close_parent_position(n) == (n - 1) // 2


@hyp.settings(deadline=None)
@hyp.given(deep_words, deep_words)
def test_compare_deep_run_forms(s, t):
    r_s, r_t = r_closed(s), r_closed(t)
    assert r_closed_alt(s) == r_s
    assert compare_strings(s, t) == (r_s > r_t) - (r_s < r_t)
    assert compare_strings(s, s) == 0
