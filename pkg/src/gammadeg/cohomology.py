"""Freeness of rational cohomology and the degree/freeness equivalence check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .catalog import Catalog, Family, FreeRule, Parity, SpaceDescriptor
from .errors import DataError


@dataclass(frozen=True)
class CohomologyMeta:
    rho: int | None
    total_dimension: int | None
    free: bool

    def problems(self) -> list[str]:
        """Exact comparison of dim H^* against 2^rho, when both are known.

        For a Cartan pair, H^* is a 2^rho-dimensional exterior algebra tensored
        with a quotient of a symmetric algebra, so freeness holds exactly when
        the total dimension is 2^rho.
        """
        if self.rho is None or self.total_dimension is None:
            return []
        matches = self.total_dimension == 2**self.rho
        if self.free and not matches:
            return [f"free but dim H^* = {self.total_dimension} ≠ 2^{self.rho}"]
        if not self.free and matches:
            return [f"not free but dim H^* = 2^{self.rho}"]
        return []


def splitting_rank(space: SpaceDescriptor) -> bool:
    """rank G = rank K + rank P, in its equivalent form: every multiplicity is even."""
    return space.root_system.all_even()


def _resolve_rule(space: SpaceDescriptor) -> bool:
    rule = space.free_cohomology_rule
    if rule is FreeRule.SPLITTING_RANK:
        return splitting_rank(space)
    if rule is FreeRule.AI_ODD:
        # U_{2m+1}/O_{2m+1} is finitely covered by S^1 x SU_{2m+1}/SO_{2m+1}
        if space.family not in (Family.AI, Family.UO) or len(space.params) != 1:
            raise DataError(f"{space.name}: rule AIOdd needs an AI(n) or UO(n) entry")
        return space.params[0] % 2 == 1
    if rule is FreeRule.TORUS_OR_POINT:
        return True
    return rule is FreeRule.EXPLICIT_TRUE


def free_cohomology(space: SpaceDescriptor) -> bool:
    """Is H^*(P; Q) a free graded-commutative algebra (on odd generators)?"""
    free = _resolve_rule(space)
    if space.parity_type is Parity.INNER and space.dimension > 0 and free:
        # inner spaces carry cohomology in even degrees only
        raise DataError(f"{space.name}: rule {space.free_cohomology_rule.value} says free, "
                        "but the space is inner")
    return free


def free_product(flags: Iterable[bool]) -> bool:
    """Kuenneth: a product is free iff every factor is."""
    return all(flags)


def cohomology_meta(space: SpaceDescriptor) -> CohomologyMeta:
    return CohomologyMeta(space.rho, space.total_dimension, free_cohomology(space))


@dataclass(frozen=True)
class ClassificationRow:
    name: str
    degree: int
    is_gamma: bool
    free: bool

    @property
    def agrees(self) -> bool:
        return self.is_gamma == self.free

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "degree": self.degree,
            "is_gamma": self.is_gamma,
            "free": self.free,
            "agrees": self.agrees,
        }


@dataclass
class ClassificationReport:
    rows: list[ClassificationRow] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    problems: dict[str, list[str]] = field(default_factory=dict)

    @property
    def disagreements(self) -> list[ClassificationRow]:
        return [row for row in self.rows if not row.agrees]

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.problems

    def summary(self) -> dict:
        return {
            "checked": len(self.rows),
            "agree": len(self.rows) - len(self.disagreements),
            "disagree": len(self.disagreements),
            "skipped": len(self.skipped),
            "invalid": len(self.problems),
        }


def verify_classification(catalog: Catalog, seed: int = 0, **degree_kwargs) -> ClassificationReport:
    """(deg theta != 0) versus free H^*(P;Q) for every connected-isotropy entry.

    Entries failing validation or the 2^rho dimension check are listed in
    ``problems`` and make the report fail.
    """
    from .catalog import validate
    from .degree import mapping_degree

    report = ClassificationReport()
    for entry in catalog:
        if not entry.connected_isotropy:
            report.skipped.append(entry.name)
            continue
        violations = validate(entry)
        if violations:
            report.problems[entry.name] = violations
            continue
        meta = cohomology_meta(entry)
        if meta.problems():
            report.problems[entry.name] = meta.problems()
        deg = mapping_degree(entry, seed, **degree_kwargs)
        report.rows.append(ClassificationRow(entry.name, deg.degree, deg.is_gamma, meta.free))
    return report
