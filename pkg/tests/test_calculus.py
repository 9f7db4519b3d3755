from __future__ import annotations

import pytest

from gammadeg.calculus import (
    Atom,
    CoverOf,
    Product,
    ai_cover_expression,
    degree_via_cover,
    evaluate_expression,
    expression_free,
    parse_expression,
    product_degree,
)
from gammadeg.catalog import Catalog, builtin_catalog, torus, uo
from gammadeg.errors import DataError, ExpressionSyntaxError, UnknownSpace


def test_parse_product():
    assert parse_expression("T(1) x AI(5)") == Product((Atom("T(1)"), Atom("AI(5)")))


def test_parse_atom():
    assert parse_expression("S(3)") == Atom("S(3)")
    assert parse_expression("Sphere( 3 )") == Atom("S(3)")


@pytest.mark.parametrize("text", ["S(3) x x", "", "x S(3)", "S(3) S(5)", "S(3) + S(5)", "S(a)"])
def test_parse_errors(text):
    with pytest.raises(ExpressionSyntaxError):
        parse_expression(text)


def test_product_degree():
    assert product_degree([2, 4]) == 8
    assert product_degree([2, 0]) == 0
    assert product_degree([]) == 1


def test_degree_via_cover():
    assert degree_via_cover(8) // 2 == 4
    assert degree_via_cover(5) == 5
    assert degree_via_cover(4) // 2 == 2


@pytest.mark.parametrize(
    "text, degree", [("T(1) x AI(5)", 8), ("S(3) x S(5)", 4), ("S(2) x S(3)", 0)]
)
def test_evaluate(text, degree):
    assert evaluate_expression(text).degree == degree


def test_product_matches_direct_uo5():
    assert evaluate_expression("T(1) x AI(5)").degree == evaluate_expression("UO(5)").degree


def test_cover_of_uo_gives_ai():
    assert evaluate_expression(ai_cover_expression(5)).degree == 4
    assert evaluate_expression(ai_cover_expression(3)).degree == 2


def test_ai_resolved_by_cover_when_absent():
    cat = Catalog([torus(1), uo(7)])
    rep = evaluate_expression("AI(7)", catalog=cat)
    assert rep.degree == 8


def test_unknown_atom():
    with pytest.raises(UnknownSpace):
        evaluate_expression("Q(3)")


def test_non_divisible_cover():
    with pytest.raises(DataError):
        evaluate_expression(CoverOf(Atom("S(3)"), Atom("T(2)")))


def test_expression_free():
    assert expression_free("T(1) x AI(5)")
    assert not expression_free("S(3) x S(4)")


def test_str_round_trip():
    expr = parse_expression("T(1) x AI(5) x S(3)")
    assert parse_expression(str(expr)) == expr
    assert str(ai_cover_expression(3)) == "[UO(3) / T(1)]"


def test_builtin_cover_consistency():
    cat = builtin_catalog()
    for n in range(3, 10):
        assert (evaluate_expression(f"T(1) x AI({n})", catalog=cat).degree
                == evaluate_expression(f"UO({n})", catalog=cat).degree)
