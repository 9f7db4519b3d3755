from __future__ import annotations

import dataclasses

import pytest

from gammadeg.catalog import (
    Catalog,
    FreeRule,
    RestrictedRoot,
    RestrictedRootSystem,
    builtin_catalog,
    sphere,
)
from gammadeg.cohomology import (
    CohomologyMeta,
    free_cohomology,
    free_product,
    splitting_rank,
    verify_classification,
)
from gammadeg.errors import DataError

CAT = builtin_catalog()


@pytest.mark.parametrize("name, expected", [("S(7)", True), ("UO(5)", False), ("AII(4)", True)])
def test_splitting_rank(name, expected):
    assert splitting_rank(CAT.get(name)) is expected


def test_sphere7_multiplicity():
    assert CAT.get("S(7)").root_system.multiplicities == (6,)
    assert set(CAT.get("AII(4)").root_system.multiplicities) == {4}


@pytest.mark.parametrize("name, expected", [("AI(5)", True), ("S(4)", False), ("E6F4", True)])
def test_free_cohomology(name, expected):
    assert free_cohomology(CAT.get(name)) is expected


def test_rule_parity_contradiction():
    bad = dataclasses.replace(CAT.get("S(4)"), free_cohomology_rule=FreeRule.EXPLICIT_TRUE)
    with pytest.raises(DataError):
        free_cohomology(bad)


def test_ai_odd_rule_on_wrong_family():
    bad = dataclasses.replace(CAT.get("S(3)"), free_cohomology_rule=FreeRule.AI_ODD)
    with pytest.raises(DataError):
        free_cohomology(bad)


def test_meta_problems():
    assert CohomologyMeta(2, 4, True).problems() == []
    assert CohomologyMeta(2, 6, True).problems()
    assert CohomologyMeta(2, 4, False).problems()
    assert CohomologyMeta(None, 4, True).problems() == []


def test_free_product():
    assert free_product([True, True])
    assert not free_product([True, False])
    assert free_product([])


def test_builtin_classification_agrees():
    report = verify_classification(CAT)
    assert report.ok
    assert report.summary()["disagree"] == 0
    assert report.summary()["checked"] == len(report.rows) > 30
    assert set(report.skipped) == {"UO(2)", "UO(4)", "UO(6)", "UO(8)"}


def test_empty_catalog():
    report = verify_classification(Catalog([]))
    assert report.ok and report.rows == []


def test_corrupted_multiplicity_reported():
    s5 = sphere(5)
    root = s5.root_system.roots[0]
    bad = dataclasses.replace(
        s5,
        root_system=RestrictedRootSystem(1, [RestrictedRoot(root.form, 3)], s5.root_system.lattice),
    )
    report = verify_classification(Catalog([bad]))
    assert not report.ok and "S(5)" in report.problems


def test_corrupted_rule_disagrees():
    bad = dataclasses.replace(CAT.get("S(3)"), free_cohomology_rule=FreeRule.EXPLICIT_FALSE)
    report = verify_classification(Catalog([bad]))
    assert not report.ok
