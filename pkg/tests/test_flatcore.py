from __future__ import annotations

from fractions import Fraction as F

import pytest

from gammadeg.errors import CapacityError, DimensionError
from gammadeg.flatcore import (
    Band,
    FlatVector,
    Lattice,
    LinearForm,
    classify_against_thresholds,
    coset_representatives,
    evaluate,
    format_rational,
    parse_rational,
    rational_rank,
    to_rational,
)


def test_evaluate_dot_product():
    assert evaluate(LinearForm([1, -1, 0]), FlatVector([F(1, 4), F(-1, 4), 0])) == F(1, 2)


def test_evaluate_zero_vector():
    assert evaluate(LinearForm([1, -1]), FlatVector([0, 0])) == 0


def test_evaluate_first_coordinate_on_unit_generator():
    n = 5
    b1 = Lattice.standard(n).generators[0]
    form = LinearForm([1] + [0] * (n - 1))
    assert evaluate(form, b1) == 1


def test_evaluate_length_mismatch():
    with pytest.raises(DimensionError):
        evaluate(LinearForm([1, 2]), FlatVector([1]))


def test_classify_half_boundary():
    assert classify_against_thresholds(LinearForm([1]), FlatVector([F(1, 2)])) is Band.HALF
    assert classify_against_thresholds(LinearForm([1]), FlatVector([F(-1, 2)])) is Band.HALF


def test_classify_inner():
    x = FlatVector([F(-1, 16), F(5, 16)])
    v = evaluate(LinearForm([1, -1]), x)
    assert v == F(-3, 8)
    assert classify_against_thresholds(LinearForm([1, -1]), x) is Band.INNER


def test_classify_outer_cross_multiplied():
    v = F(9, 10)
    # 9*2 > 1*10 and 9*1 < 1*10
    assert 9 * 2 > 10 and 9 < 10
    assert classify_against_thresholds(LinearForm([1]), FlatVector([v])) is Band.OUTER


@pytest.mark.parametrize(
    "value, band",
    [(0, Band.ZERO), (F(1), Band.BEYOND), (F(-3, 2), Band.BEYOND), (F(1, 3), Band.INNER)],
)
def test_classify_other_bands(value, band):
    assert classify_against_thresholds(LinearForm([1]), FlatVector([value])) is band


def test_band_regularity():
    assert {b for b in Band if b.regular} == {Band.INNER, Band.OUTER}


def test_coset_representatives_rank_two():
    lat = Lattice([FlatVector([1, 0]), FlatVector([0, 1])])
    reps = coset_representatives(FlatVector([F(-1, 8), F(-1, 24)]), lat)
    assert [tuple(p.coords) for p in reps] == [
        (F(-1, 8), F(-1, 24)),
        (F(3, 8), F(-1, 24)),
        (F(-1, 8), F(11, 24)),
        (F(3, 8), F(11, 24)),
    ]


def test_coset_representatives_sphere_lattice():
    reps = coset_representatives(FlatVector([F(-1, 10)]), Lattice([FlatVector([2])]))
    assert [tuple(p.coords) for p in reps] == [(F(-1, 10),), (F(9, 10),)]


def test_coset_representatives_rank_zero():
    reps = coset_representatives(FlatVector([]), Lattice([]))
    assert [tuple(p.coords) for p in reps] == [()]


def test_coset_representatives_capacity():
    lat = Lattice.standard(4)
    with pytest.raises(CapacityError):
        coset_representatives(FlatVector([0] * 4), lat, rank_limit=3)


def test_rationals():
    assert parse_rational("-3/6") == F(-1, 2)
    assert format_rational(F(-1, 2)) == "-1/2"
    assert format_rational(F(4)) == "4"
    for bad in ("1/0", "0.5", "abc", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_vector_arithmetic_and_rank():
    a = FlatVector([1, F(1, 2)])
    b = FlatVector([F(1, 3), 0])
    assert (a + b) - b == a
    assert (-a).scale(-1) == a
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert Lattice([FlatVector([1, 1]), FlatVector([1, -1])]).is_independent()
    assert not Lattice([FlatVector([1, 1]), FlatVector([2, 2])]).is_independent()
