"""Degree algebra for composite spaces.

Degrees multiply over Riemannian products and are unchanged under
orientation-preserving finite covers.  Expressions are written
``T(1) x AI(5)``; cover relations are built programmatically because they
are data (a claimed covering), never inferred.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Union

from .catalog import Catalog, builtin_catalog, canonical_name
from .cohomology import free_cohomology, free_product
from .degree import DegreeReport, mapping_degree
from .errors import DataError, ExpressionSyntaxError, UnknownSpace


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Product:
    factors: tuple[SpaceExpression, ...]

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class CoverOf:
    """``target`` is finitely covered by ``known_factor`` x (this expression)."""

    target: SpaceExpression
    known_factor: SpaceExpression

    def __str__(self) -> str:
        return f"[{self.target} / {self.known_factor}]"


SpaceExpression = Union[Atom, Product, CoverOf]

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)(?P<args>\([^()]*\))?|(?P<bad>\S))")


def parse_expression(text: str) -> SpaceExpression:
    """Parse ``atom ( x atom )*`` with ``atom := NAME | NAME(ints)``."""
    atoms: list[Atom] = []
    pos = 0
    expect_atom = True
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        start = m.start("name") if m.group("name") else m.start("bad")
        if m.group("bad"):
            raise ExpressionSyntaxError(f"unexpected character {m.group('bad')!r}", start)
        name, args = m.group("name"), m.group("args")
        if name == "x" and not args:
            if expect_atom:
                raise ExpressionSyntaxError("expected a space name, found 'x'", start)
            expect_atom = True
        else:
            if not expect_atom:
                raise ExpressionSyntaxError(f"expected 'x' before {name!r}", start)
            if args is not None:
                inner = args[1:-1].strip()
                parts = [p.strip() for p in inner.split(",")] if inner else []
                if not parts or not all(re.fullmatch(r"[+-]?\d+", p) for p in parts):
                    raise ExpressionSyntaxError(f"bad integer arguments {args!r}", m.start("args"))
                name = f"{name}({','.join(str(int(p)) for p in parts)})"
            atoms.append(Atom(canonical_name(name)))
            expect_atom = False
        pos = m.end()
    if expect_atom:
        raise ExpressionSyntaxError("expression ends where a space name is expected", len(text))
    return atoms[0] if len(atoms) == 1 else Product(tuple(atoms))


def product_degree(factors: Iterable[int]) -> int:
    return math.prod(factors)


def degree_via_cover(cover_degree: int) -> int:
    """The covered space's degree equals the covering space's degree."""
    return cover_degree


def _ai_cover(name: str, catalog: Catalog) -> CoverOf | None:
    """U_n/O_n is finitely covered by S^1 x SU_n/SO_n."""
    m = re.fullmatch(r"AI\((\d+)\)", name)
    if m and f"UO({m.group(1)})" in catalog and "T(1)" in catalog:
        return CoverOf(Atom(f"UO({m.group(1)})"), Atom("T(1)"))
    return None


def ai_cover_expression(n: int) -> CoverOf:
    return CoverOf(Atom(f"UO({n})"), Atom("T(1)"))


def _combine(name: str, reports: list[DegreeReport]) -> DegreeReport:
    return DegreeReport(
        space=name,
        degree=product_degree(r.degree for r in reports),
        rank=sum(r.rank for r in reports),
        generic_point=None,
        preimages=None,
        fastpath_used=all(r.fastpath_used for r in reports),
        theta_p_degree=product_degree(r.theta_p_degree for r in reports),
        orientable=all(r.orientable for r in reports),
        signed_count=product_degree(
            r.signed_count if r.signed_count is not None else r.degree for r in reports
        ),
        factors=tuple(reports),
    )


def evaluate_expression(
    expr: SpaceExpression | str,
    seed: int = 0,
    catalog: Catalog | None = None,
    **degree_kwargs,
) -> DegreeReport:
    if isinstance(expr, str):
        expr = parse_expression(expr)
    catalog = catalog if catalog is not None else builtin_catalog()

    if isinstance(expr, Atom):
        try:
            entry = catalog.get(expr.name)
        except UnknownSpace:
            cover = _ai_cover(expr.name, catalog)
            if cover is None:
                raise
            rep = evaluate_expression(cover, seed, catalog, **degree_kwargs)
            return DegreeReport(expr.name, rep.degree, rep.rank, None, None, rep.fastpath_used,
                                rep.theta_p_degree, rep.orientable, rep.signed_count, rep.factors)
        return mapping_degree(entry, seed, **degree_kwargs)

    if isinstance(expr, Product):
        reports = [evaluate_expression(f, seed, catalog, **degree_kwargs) for f in expr.factors]
        return _combine(str(expr), reports)

    if isinstance(expr, CoverOf):
        upstairs = evaluate_expression(expr.target, seed, catalog, **degree_kwargs)
        known = evaluate_expression(expr.known_factor, seed, catalog, **degree_kwargs)
        # deg(target) = deg(known) * deg(remainder) by multiplicativity over the cover
        total = degree_via_cover(upstairs.degree)
        if known.degree == 0 or total % known.degree:
            raise DataError(
                f"cover {expr}: degree {total} is not divisible by factor degree {known.degree}"
            )
        return DegreeReport(
            space=str(expr),
            degree=total // known.degree,
            rank=upstairs.rank - known.rank,
            generic_point=None,
            preimages=None,
            fastpath_used=upstairs.fastpath_used and known.fastpath_used,
            theta_p_degree=upstairs.theta_p_degree * known.theta_p_degree,
            orientable=upstairs.orientable,
            signed_count=None,
            factors=(upstairs, known),
        )
    raise TypeError(f"not a space expression: {expr!r}")


def atoms_of(expr: SpaceExpression) -> list[str]:
    if isinstance(expr, Atom):
        return [expr.name]
    if isinstance(expr, Product):
        return [a for f in expr.factors for a in atoms_of(f)]
    return atoms_of(expr.target)


def expression_free(expr: SpaceExpression | str, catalog: Catalog | None = None) -> bool:
    """Freeness of H^*(-;Q) for a product of catalog atoms."""
    if isinstance(expr, str):
        expr = parse_expression(expr)
    catalog = catalog if catalog is not None else builtin_catalog()
    return free_product(free_cohomology(catalog.get(name)) for name in atoms_of(expr))
