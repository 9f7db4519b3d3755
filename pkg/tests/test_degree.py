from __future__ import annotations

from fractions import Fraction as F

import pytest

from gammadeg.catalog import (
    RestrictedRoot,
    RestrictedRootSystem,
    builtin_catalog,
    sphere,
    torus,
    uo,
)
from gammadeg.degree import (
    candidate_targets,
    default_target,
    degree_of_system,
    epsilon_of,
    is_gamma_canonical,
    is_orientable,
    mapping_degree,
    orientation_character,
    pick_generic,
    reduce_representative,
)
from gammadeg.errors import CapacityError, NoGenericPoint, RegularityViolation
from gammadeg.flatcore import Band, FlatVector, Lattice, LinearForm, classify_against_thresholds

CAT = builtin_catalog()


def test_pick_generic_uo3_default():
    system = uo(3).root_system
    gp = pick_generic(system, 0)
    assert tuple(gp.y.coords) == (F(-1, 12), F(-1, 36), F(-1, 108))
    assert gp.attempts == 0
    # independent check: every preimage lands strictly inside a regular band
    gens = system.lattice.generators
    for code in range(8):
        x = gp.y.scale(F(1, 2))
        for j in range(3):
            if code >> j & 1:
                x = x + gens[j].scale(F(1, 2))
        v = reduce_representative(x, system)
        for root in system.roots:
            assert classify_against_thresholds(root.form, v) in (Band.INNER, Band.OUTER)


def test_torus_accepts_any_target():
    for seed in range(5):
        assert pick_generic(torus(3).root_system, seed).attempts == 0


ADVERSARIAL = RestrictedRootSystem(
    1, [RestrictedRoot(LinearForm([12]), 1)], Lattice([FlatVector([F(1, 6)])])
)


def test_adversarial_root_forces_retry():
    # x = Y/2 = -1/24 gives alpha = -1/2 exactly, on the half threshold
    system = ADVERSARIAL
    y = default_target(1)
    assert y.coords == (F(-1, 12),)
    assert 12 * y.coords[0] / 2 == F(-1, 2)
    gp = pick_generic(system, 0)
    assert gp.attempts > 0
    # hand enumeration at the accepted target: one inner, one outer preimage
    a = 12 * gp.y.coords[0] / 2
    assert F(-1, 2) < a < 0 and F(1, 2) < a + 1 < 1
    assert degree_of_system(system).degree == 0


def test_unreachable_target_reports_failure():
    system = ADVERSARIAL
    with pytest.raises(NoGenericPoint):
        pick_generic(system, 0, max_attempts=1)


def test_candidate_targets_deterministic():
    a = list(candidate_targets(3, 7, 20))
    b = list(candidate_targets(3, 7, 20))
    assert a == b and len(a) == 20
    assert a[1] == a[0].scale(1 - F(1, 17))


def test_reduce_sphere():
    system = sphere(4).root_system
    assert reduce_representative(FlatVector([F(9, 10)]), system).coords == (F(9, 10),)
    assert reduce_representative(FlatVector([F(11, 10)]), system).coords == (F(-9, 10),)


def test_reduce_uo2_unchanged():
    x = FlatVector([F(1, 2) + F(1, 24), F(-1, 24)])
    assert reduce_representative(x, uo(2).root_system) == x


def test_epsilon_uo3_crossing_pair():
    system = uo(3).root_system
    y = default_target(3)
    x = y.scale(F(1, 2)) + system.lattice.generators[1].scale(F(1, 2))
    v = reduce_representative(x, system)
    outer = [
        r.form.coeffs for r in system.roots
        if classify_against_thresholds(r.form, v) is Band.OUTER
    ]
    assert outer == [(1, -1, 0)]
    assert epsilon_of(v, system) == 1


def test_epsilon_inner_only():
    system = uo(3).root_system
    assert epsilon_of(FlatVector([F(1, 10), 0, F(-1, 10)]), system) == 0


def test_epsilon_singular():
    with pytest.raises(RegularityViolation):
        epsilon_of(FlatVector([F(1, 2), 0, 0]), uo(3).root_system)


@pytest.mark.parametrize(
    "name, degree",
    [("S(3)", 2), ("UO(5)", 8), ("T(3)", 8), ("S(2)", 0), ("AI(4)", 0), ("E6F4", 4)],
)
def test_mapping_degree_examples(name, degree):
    assert mapping_degree(CAT.get(name)).degree == degree


def test_ai4_by_direct_parity_sum():
    # brute force over {0,1}^3 through the public single-point helpers
    entry = CAT.get("AI(4)")
    system = entry.root_system
    y = pick_generic(system).y
    total = 0
    for code in range(8):
        x = y.scale(F(1, 2))
        for j in range(3):
            if code >> j & 1:
                x = x + system.lattice.generators[j].scale(F(1, 2))
        total += (-1) ** epsilon_of(reduce_representative(x, system), system)
    assert total == 0


def test_fast_path_flags():
    rep = mapping_degree(CAT.get("AII(3)"))
    assert rep.fastpath_used and rep.generic_point is None and rep.degree == 4
    full = mapping_degree(CAT.get("AII(3)"), force_full=True)
    assert not full.fastpath_used and full.degree == 4


@pytest.mark.parametrize("name, expected", [("S(7)", True), ("S(6)", False), ("AII(3)", True)])
def test_is_gamma(name, expected):
    assert is_gamma_canonical(CAT.get(name)) is expected


def test_non_orientable_uo_even():
    for n in (2, 4, 6, 8):
        system = uo(n).root_system
        assert not is_orientable(system)
        assert orientation_character(system) == (1,) * n
        rep = mapping_degree(uo(n))
        assert rep.degree == 0 and not rep.orientable
        assert rep.signed_count == 2 ** (n // 2)


def test_theta_p_degree_sign():
    assert mapping_degree(CAT.get("S(3)")).theta_p_degree == -1
    assert mapping_degree(CAT.get("S(2)")).theta_p_degree == 1


def test_verbose_witnesses():
    rep = mapping_degree(uo(3), collect=True)
    assert len(rep.preimages) == 8
    assert sum(p.sign for p in rep.preimages) == rep.degree
    d = rep.to_dict(verbose=True)
    assert len(d["preimages"]) == 8 and d["y"] == ["-1/12", "-1/36", "-1/108"]


def test_rank_zero_point():
    assert mapping_degree(torus(0)).degree == 1


def test_capacity_limit():
    with pytest.raises(CapacityError):
        mapping_degree(uo(9), force_full=True, rank_limit=8)


def test_collect_limit():
    system = RestrictedRootSystem(21, [], Lattice.standard(21))
    with pytest.raises(CapacityError):
        degree_of_system(system, force_full=True, collect=True)
