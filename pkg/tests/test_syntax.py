"""Parsing, printing and JSON round trips for classes and character polynomials."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hilbcalc.characters import L, BaseMonomial, char
from hilbcalc.classes import diagonal, scroll
from hilbcalc.syntax import (ParseError, class_from_json, class_to_json, emit_json, format_class,
                             parse_characters, parse_class)

from strategies import classes


def test_gamma_shorthand():
    c = parse_class("G3[L^2,L]", 3)
    assert c.terms == {diagonal([2, 1], [BaseMonomial(2, 0, 0), L]): Fraction(1, 2)}


def test_double_diagonal():
    assert parse_class("Diag(2|2)", 4).terms == {diagonal([2, 2]): Fraction(1)}


def test_labeled_scroll():
    assert parse_class("F(1;2:1|0)", 3).terms == {scroll(3, 1, 2, [1]): Fraction(1, 2)}
    assert parse_class("F(1;2:1)", 3).terms == {scroll(3, 1, 2, [1]): Fraction(1)}


def test_coefficients_and_signs():
    c = parse_class("3/2*Diag(2|2|2) - (b*d)*G6 + Diag(6)", 6)
    assert c.terms[diagonal([2, 2, 2])] == Fraction(3, 2)
    assert c.terms[diagonal([2, 1, 1, 1, 1])] == -char("b") * char("d") * Fraction(1, 2)


def test_ambient_is_inferred():
    assert parse_class("Diag(3|1)").m == 4


@pytest.mark.parametrize("text, m", [
    ("Diag(2|", 3),
    ("Diag(2|2)", 3),
    ("G3[L^3,1]", 3),
    ("G3[P,1]", 3),
    ("Q(1)", 1),
    ("Diag(2)[L,L]", 2),
])
def test_parse_errors(text, m):
    with pytest.raises(ParseError):
        parse_class(text, m)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_class("Diag(2|", 3)
    assert info.value.position == 7


def test_characters():
    expr = parse_characters("3*b*d^2 - 1/2*sig + kappa0(L)")
    assert expr == 3 * char("b") * char("d") ** 2 - char("sig") * Fraction(1, 2) + char("kappa0(L)")


def test_format_round_trip_examples():
    for text, m in [("G3[L^2,L]", 3), ("-4*Diag(3)[w] + 3*F(1;3:0) + 1/2*Sect(1;2:1)", 3)]:
        c = parse_class(text, m)
        assert parse_class(format_class(c), m) == c


def test_json_shape():
    c = parse_class("1/2*Sect(1;2:1) - Diag(3)[w]", 3)
    data = class_to_json(c, char("sig"))
    assert data["m"] == 3
    kinds = sorted(item["kind"] for item in data["class"])
    assert kinds == ["diag", "section"]
    assert data["value"] == {"sig": "1"}
    assert json.loads(emit_json(c)) == class_to_json(c)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_property_json_round_trip(m, data):
    c = data.draw(classes(m))
    assert class_from_json(emit_json(c)) == c


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_property_text_round_trip(m, data):
    c = data.draw(classes(m))
    if not c:
        return
    assert parse_class(format_class(c), m) == c


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_property_symbolic_json_round_trip(data):
    c = data.draw(classes(3, backend="symbolic"))
    assert class_from_json(class_to_json(c)) == c
