"""Declarative restricted-root data for compact symmetric spaces.

Each entry carries one representative form ``alpha`` per pair of roots
``+-alpha`` (so one per squared root ``lam = alpha**2``), its multiplicity,
and the unit lattice of the flat in pi-units.  Lattices are data, not
derived; every builtin entry names where its normalization comes from.
"""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import CatalogParseError, DataError, UnknownSpace
from .flatcore import (
    FlatVector,
    Lattice,
    LinearForm,
    evaluate,
    format_rational,
    parse_rational,
    rational_rank,
)

CATALOG_ENV = "GAMMADEG_CATALOG"


class Family(enum.Enum):
    SPHERE = "Sphere"
    TORUS = "Torus"
    AI = "AI"
    AII = "AII"
    UO = "UO"
    E6F4 = "E6F4"
    GROUP = "GroupType"
    CUSTOM = "Custom"


class Parity(enum.Enum):
    INNER = "Inner"
    OUTER = "Outer"


class FreeRule(enum.Enum):
    SPLITTING_RANK = "SplittingRank"
    AI_ODD = "AIOdd"
    TORUS_OR_POINT = "TorusOrPoint"
    EXPLICIT_TRUE = "ExplicitTrue"
    EXPLICIT_FALSE = "ExplicitFalse"


@dataclass(frozen=True)
class RestrictedRoot:
    form: LinearForm
    multiplicity: int


@dataclass(frozen=True)
class RestrictedRootSystem:
    rank: int
    roots: tuple[RestrictedRoot, ...]
    lattice: Lattice

    def __init__(self, rank: int, roots: Iterable[RestrictedRoot], lattice: Lattice):
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "roots", tuple(roots))
        object.__setattr__(self, "lattice", lattice)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(root.multiplicity for root in self.roots)

    def all_even(self) -> bool:
        return all(m % 2 == 0 for m in self.multiplicities)


@dataclass(frozen=True)
class SpaceDescriptor:
    name: str
    family: Family
    params: tuple[int, ...]
    rank: int
    dimension: int
    parity_type: Parity
    connected_isotropy: bool
    root_system: RestrictedRootSystem
    free_cohomology_rule: FreeRule
    provenance: str = ""
    # rank(g) - rank(k) and dim H^*(P;Q); optional, checked only when present
    rho: int | None = None
    total_dimension: int | None = None


@dataclass(frozen=True)
class Catalog:
    entries: tuple[SpaceDescriptor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for e in self.entries:
            if e.name in seen:
                raise DataError(f"duplicate catalog name {e.name!r}")
            seen.add(e.name)

    def __iter__(self) -> Iterator[SpaceDescriptor]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name: str) -> bool:
        try:
            self.get(name)
        except UnknownSpace:
            return False
        return True

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def get(self, name: str) -> SpaceDescriptor:
        key = canonical_name(name)
        for e in self.entries:
            if e.name == key:
                return e
        raise UnknownSpace(name)

    def replace(self, entry: SpaceDescriptor) -> Catalog:
        """Copy with the same-named entry swapped out (used for fault injection)."""
        return Catalog(entry if e.name == entry.name else e for e in self.entries)


_ALIASES = {"Sphere": "S", "Torus": "T", "SU/SO": "AI", "SU/Sp": "AII", "U/O": "UO"}


def canonical_name(name: str) -> str:
    name = re.sub(r"\s+", "", name)
    m = re.fullmatch(r"([^()]+)(\(.*\))?", name)
    if not m:
        return name
    head, tail = m.group(1), m.group(2) or ""
    return _ALIASES.get(head, head) + tail


# ---------------------------------------------------------------------------
# family constructors


def _unit_vector(i: int, n: int) -> list[int]:
    return [1 if k == i else 0 for k in range(n)]


def _a_type_roots(n: int, multiplicity: int) -> list[RestrictedRoot]:
    """Roots e_j - e_k (j < k) of A_{n-1} in the basis b_i = e_i - e_{i+1}.

    A trace-zero vector ``x = sum c_i b_i`` has ``x_m = c_m - c_{m-1}``
    (with ``c_0 = c_n = 0``), so ``x_j - x_k = c_j - c_{j-1} - c_k + c_{k-1}``.
    """
    r = n - 1
    roots = []
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            coeffs = [0] * r
            for idx, s in ((j, 1), (j - 1, -1), (k, -1), (k - 1, 1)):
                if 1 <= idx <= r:
                    coeffs[idx - 1] += s
            roots.append(RestrictedRoot(LinearForm(coeffs), multiplicity))
    return roots


def sphere(n: int) -> SpaceDescriptor:
    if n < 2:
        raise ValueError("round spheres need n >= 2 here")
    odd = n % 2 == 1
    return SpaceDescriptor(
        name=f"S({n})",
        family=Family.SPHERE,
        params=(n,),
        rank=1,
        dimension=n,
        parity_type=Parity.OUTER if odd else Parity.INNER,
        connected_isotropy=True,
        root_system=RestrictedRootSystem(
            1, [RestrictedRoot(LinearForm([1]), n - 1)], Lattice([[2]])
        ),
        free_cohomology_rule=FreeRule.SPLITTING_RANK,
        provenance=(
            "unit round sphere SO(n+1)/SO(n): R(V,X)X = |X|^2 V on X-perp, so one root "
            "alpha(x) = x of multiplicity n-1; closed geodesics have length 2*pi, "
            "lattice generator 2 in pi-units"
        ),
        rho=1 if odd else 0,
        total_dimension=2,
    )


def torus(r: int) -> SpaceDescriptor:
    return SpaceDescriptor(
        name=f"T({r})",
        family=Family.TORUS,
        params=(r,),
        rank=r,
        dimension=r,
        parity_type=Parity.OUTER if r else Parity.INNER,
        connected_isotropy=True,
        root_system=RestrictedRootSystem(r, [], Lattice.standard(r)),
        free_cohomology_rule=FreeRule.TORUS_OR_POINT,
        provenance="flat torus R^r / (pi Z)^r; no roots; r = 0 is the point",
        rho=r,
        total_dimension=2**r,
    )


def uo(n: int) -> SpaceDescriptor:
    """U_n/O_n, the Lagrangian Grassmannian of C^n."""
    roots = []
    for j in range(n):
        for k in range(j + 1, n):
            coeffs = [0] * n
            coeffs[j], coeffs[k] = 1, -1
            roots.append(RestrictedRoot(LinearForm(coeffs), 1))
    odd = n % 2 == 1
    m = n // 2
    return SpaceDescriptor(
        name=f"UO({n})",
        family=Family.UO,
        params=(n,),
        rank=n,
        dimension=n * (n + 1) // 2,
        parity_type=Parity.OUTER,
        # O_n/{+-I} is connected (= SO_n) only for odd n
        connected_isotropy=odd,
        root_system=RestrictedRootSystem(n, roots, Lattice.standard(n)),
        free_cohomology_rule=FreeRule.AI_ODD,
        provenance=(
            "Lagrangian Grassmannian U_n/O_n; squared roots (e_j - e_k)^2, multiplicity 1 "
            "(Helgason, Ch. X, p. 532); flat realized as diag(exp(2i x_j)), unit lattice "
            "pi Z^n; non-orientable for even n"
        ),
        rho=n - n // 2,
        total_dimension=2 ** (m + 1) if odd else None,
    )


def ai(n: int) -> SpaceDescriptor:
    """SU(n)/SO(n) on the trace-zero flat, coordinates in the basis e_i - e_{i+1}."""
    if n < 2:
        raise ValueError("AI(n) needs n >= 2")
    r = n - 1
    half_n = n // 2
    odd = n % 2 == 1
    return SpaceDescriptor(
        name=f"AI({n})",
        family=Family.AI,
        params=(n,),
        rank=r,
        dimension=(n - 1) * (n + 2) // 2,
        parity_type=Parity.INNER if n == 2 else Parity.OUTER,
        connected_isotropy=True,
        root_system=RestrictedRootSystem(
            r, _a_type_roots(n, 1), Lattice(_unit_vector(i, r) for i in range(r))
        ),
        free_cohomology_rule=FreeRule.AI_ODD,
        provenance=(
            "SU(n)/SO(n) as det-1 symmetric unitary matrices; flat = trace-zero part of "
            "the U_n/O_n flat, coordinates c in basis b_i = e_i - e_{i+1}; roots "
            "(e_j - e_k) multiplicity 1; unit lattice = pi * A_{n-1} root lattice, "
            "i.e. the unit vectors in c-coordinates"
        ),
        rho=(n - 1) - half_n,
        total_dimension=2 ** half_n,
    )


def aii(n: int) -> SpaceDescriptor:
    """SU(2n)/Sp(n)."""
    r = n - 1
    return SpaceDescriptor(
        name=f"AII({n})",
        family=Family.AII,
        params=(n,),
        rank=r,
        dimension=(n - 1) * (2 * n + 1),
        parity_type=Parity.OUTER,
        connected_isotropy=True,
        root_system=RestrictedRootSystem(
            r, _a_type_roots(n, 4), Lattice(_unit_vector(i, r) for i in range(r))
        ),
        free_cohomology_rule=FreeRule.SPLITTING_RANK,
        provenance=(
            "SU(2n)/Sp(n): restricted roots of type A_{n-1}, multiplicity 4 "
            "(forced by dim = 35 - 21 = 14 for n = 3); lattice entered in the same "
            "basis as AI(n) -- normalization chosen, not derived; checked by the "
            "splitting-rank degree 2^r"
        ),
        rho=n - 1,
        total_dimension=2 ** (n - 1),
    )


def e6f4() -> SpaceDescriptor:
    return SpaceDescriptor(
        name="E6F4",
        family=Family.E6F4,
        params=(),
        rank=2,
        dimension=26,
        parity_type=Parity.OUTER,
        connected_isotropy=True,
        root_system=RestrictedRootSystem(
            2, _a_type_roots(3, 8), Lattice([[1, 0], [0, 1]])
        ),
        free_cohomology_rule=FreeRule.SPLITTING_RANK,
        provenance=(
            "E6/F4: restricted roots of type A_2, multiplicity 8 (dim 78 - 52 = 26); "
            "lattice normalization chosen as for AI(3); cohomology Lambda(x9, x17) (Araki)"
        ),
        rho=2,
        total_dimension=4,
    )


def su_group(n: int) -> SpaceDescriptor:
    """SU(n) with a bi-invariant metric, viewed as a symmetric space."""
    r = n - 1
    return SpaceDescriptor(
        name=f"SU({n})",
        family=Family.GROUP,
        params=(n,),
        rank=r,
        dimension=n * n - 1,
        parity_type=Parity.OUTER,
        connected_isotropy=True,
        root_system=RestrictedRootSystem(
            r, _a_type_roots(n, 2), Lattice(_unit_vector(i, r) for i in range(r))
        ),
        free_cohomology_rule=FreeRule.SPLITTING_RANK,
        provenance=(
            "compact Lie group SU(n): every root has multiplicity 2 (Loos II, Thm. 4.4); "
            "curvature R(V,X)X = 1/4 [X,[X,V]] so with torus diag(exp(2 pi i u_j)) the "
            "roots are u_j - u_k and the lattice is the A_{n-1} root lattice; "
            "normalization tuned so that SU(2) matches the unit S^3"
        ),
        rho=n - 1,
        total_dimension=2 ** (n - 1),
    )


def so3_group() -> SpaceDescriptor:
    return SpaceDescriptor(
        name="SO(3)",
        family=Family.GROUP,
        params=(3,),
        rank=1,
        dimension=3,
        parity_type=Parity.OUTER,
        connected_isotropy=True,
        root_system=RestrictedRootSystem(
            1, [RestrictedRoot(LinearForm([1]), 2)], Lattice([[1]])
        ),
        free_cohomology_rule=FreeRule.SPLITTING_RANK,
        provenance=(
            "SO(3) = SU(2)/{+-1} = RP^3 with the metric of the unit S^3; closed "
            "geodesics have length pi, lattice generator 1 in pi-units"
        ),
        rho=1,
        total_dimension=2,
    )


def complex_projective(n: int) -> SpaceDescriptor:
    if n < 2:
        raise ValueError("CP(n) needs n >= 2 (CP(1) is S(2))")
    return SpaceDescriptor(
        name=f"CP({n})",
        family=Family.CUSTOM,
        params=(n,),
        rank=1,
        dimension=2 * n,
        parity_type=Parity.INNER,
        connected_isotropy=True,
        root_system=RestrictedRootSystem(
            1,
            [
                RestrictedRoot(LinearForm([1]), 2 * (n - 1)),
                RestrictedRoot(LinearForm([2]), 1),
            ],
            Lattice([[1]]),
        ),
        free_cohomology_rule=FreeRule.EXPLICIT_FALSE,
        provenance=(
            "CP^n with Fubini-Study metric (sectional curvature in [1,4]); restricted "
            "roots of type BC_1: alpha mult 2(n-1), 2 alpha mult 1; closed geodesics of "
            "length pi; H^* = Q[c]/(c^{n+1}) is not free"
        ),
        rho=0,
        total_dimension=n + 1,
    )


def quaternionic_projective(n: int) -> SpaceDescriptor:
    if n < 2:
        raise ValueError("HP(n) needs n >= 2 (HP(1) is S(4))")
    return SpaceDescriptor(
        name=f"HP({n})",
        family=Family.CUSTOM,
        params=(n,),
        rank=1,
        dimension=4 * n,
        parity_type=Parity.INNER,
        connected_isotropy=True,
        root_system=RestrictedRootSystem(
            1,
            [
                RestrictedRoot(LinearForm([1]), 4 * (n - 1)),
                RestrictedRoot(LinearForm([2]), 3),
            ],
            Lattice([[1]]),
        ),
        free_cohomology_rule=FreeRule.EXPLICIT_FALSE,
        provenance=(
            "HP^n with curvature in [1,4]; restricted roots BC_1: alpha mult 4(n-1), "
            "2 alpha mult 3; closed geodesics of length pi; H^* = Q[u]/(u^{n+1})"
        ),
        rho=0,
        total_dimension=n + 1,
    )


def builtin_catalog() -> Catalog:
    entries: list[SpaceDescriptor] = []
    entries += [sphere(n) for n in range(2, 12)]
    entries += [torus(r) for r in range(0, 9)]
    entries += [uo(n) for n in range(2, 10)]
    entries += [ai(n) for n in range(3, 10)]
    entries += [aii(n) for n in (3, 4)]
    entries.append(e6f4())
    entries += [su_group(n) for n in range(2, 6)]
    entries.append(so3_group())
    entries += [complex_projective(n) for n in (2, 3)]
    entries.append(quaternionic_projective(2))
    return Catalog(entries)


def active_catalog(path: str | os.PathLike | None = None) -> Catalog:
    """Catalog from ``path``, else ``$GAMMADEG_CATALOG``, else the builtin one."""
    path = path or os.environ.get(CATALOG_ENV)
    if path:
        return load(path)
    return builtin_catalog()


# ---------------------------------------------------------------------------
# validation


def _expected_shape(entry: SpaceDescriptor) -> dict | None:
    """(rank, number of roots, multiplicity set, dimension) implied by the family."""
    p = entry.params
    fam = entry.family
    if fam is Family.SPHERE and len(p) == 1:
        n = p[0]
        return dict(rank=1, nroots=1, mults={n - 1}, dimension=n)
    if fam is Family.TORUS and len(p) == 1:
        return dict(rank=p[0], nroots=0, mults=set(), dimension=p[0])
    if fam is Family.UO and len(p) == 1:
        n = p[0]
        return dict(rank=n, nroots=n * (n - 1) // 2, mults={1}, dimension=n * (n + 1) // 2)
    if fam is Family.AI and len(p) == 1:
        n = p[0]
        return dict(rank=n - 1, nroots=n * (n - 1) // 2, mults={1}, dimension=(n - 1) * (n + 2) // 2)
    if fam is Family.AII and len(p) == 1:
        n = p[0]
        return dict(rank=n - 1, nroots=n * (n - 1) // 2, mults={4}, dimension=(n - 1) * (2 * n + 1))
    if fam is Family.E6F4:
        return dict(rank=2, nroots=3, mults={8}, dimension=26)
    if fam is Family.GROUP:
        return dict(mults={2})
    if fam in (Family.SPHERE, Family.TORUS, Family.UO, Family.AI, Family.AII):
        return dict(params=1)
    return None


def validate(entry: SpaceDescriptor) -> list[str]:
    """Every violation found in ``entry``; an empty list means the entry is sound."""
    problems: list[str] = []
    sys_ = entry.root_system
    r = sys_.rank
    mults = sys_.multiplicities

    if entry.rank != r:
        problems.append(f"rank mismatch: descriptor {entry.rank} vs root system {r}")
    if sys_.lattice.rank != r:
        problems.append(f"lattice has {sys_.lattice.rank} generators for rank {r}")
    if sys_.lattice.rank and sys_.lattice.dimension != r:
        problems.append(f"lattice generators have length {sys_.lattice.dimension}, expected {r}")
    for root in sys_.roots:
        if len(root.form) != r:
            problems.append(f"root {root.form} has length {len(root.form)}, expected {r}")
        if root.multiplicity < 1:
            problems.append(f"root {root.form} has multiplicity {root.multiplicity} < 1")
        if root.form.is_zero():
            problems.append("root form vanishes identically")
    if r == 0 and sys_.roots:
        problems.append("rank 0 entry lists roots")

    total = r + sum(mults)
    if total != entry.dimension:
        problems.append(f"dimension identity: {r}+{sum(mults)} ≠ {entry.dimension}")

    forms = [root.form.coeffs for root in sys_.roots]
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            a, b = forms[i], forms[j]
            if a == b or a == tuple(-c for c in b):
                problems.append(f"Spec entries not distinct: {sys_.roots[i].form} and {sys_.roots[j].form}")

    lattice_ok = sys_.lattice.rank == r and (not r or sys_.lattice.dimension == r)
    if lattice_ok and r and not sys_.lattice.is_independent():
        problems.append("lattice generators are linearly dependent")
    if lattice_ok:
        for root in sys_.roots:
            if len(root.form) != r:
                continue
            for j, b in enumerate(sys_.lattice.generators):
                v = evaluate(root.form, b)
                if v.denominator != 1:
                    problems.append(f"root {root.form} takes non-integer value {v} on lattice generator {j + 1}")

    shape = _expected_shape(entry)
    if shape is not None:
        if shape.get("params") is not None:
            problems.append(f"family {entry.family.value} expects one integer parameter, got {list(entry.params)}")
        if "rank" in shape and shape["rank"] != r:
            problems.append(f"{entry.family.value} shape: rank {r}, expected {shape['rank']}")
        if "nroots" in shape and shape["nroots"] != len(sys_.roots):
            problems.append(f"{entry.family.value} shape: {len(sys_.roots)} roots, expected {shape['nroots']}")
        if "mults" in shape and sys_.roots and set(mults) != shape["mults"]:
            problems.append(f"{entry.family.value} shape: multiplicities {sorted(set(mults))}, expected {sorted(shape['mults'])}")
        if "dimension" in shape and shape["dimension"] != entry.dimension:
            problems.append(f"{entry.family.value} shape: dimension {entry.dimension}, expected {shape['dimension']}")

    rule = entry.free_cohomology_rule
    if entry.family is Family.CUSTOM and rule not in (FreeRule.EXPLICIT_TRUE, FreeRule.EXPLICIT_FALSE):
        problems.append("Custom entries must state freeness explicitly")
    if rule is FreeRule.AI_ODD and entry.family not in (Family.AI, Family.UO):
        problems.append(f"rule AIOdd does not apply to family {entry.family.value}")
    if rule is FreeRule.TORUS_OR_POINT and entry.family is not Family.TORUS:
        problems.append(f"rule TorusOrPoint does not apply to family {entry.family.value}")

    if not problems:
        from .cohomology import free_cohomology

        try:
            free_cohomology(entry)
        except DataError as exc:
            problems.append(str(exc))
    return problems


def validate_catalog(catalog: Catalog) -> dict[str, list[str]]:
    """Violations per entry name, omitting clean entries."""
    out = {}
    for e in catalog:
        v = validate(e)
        if v:
            out[e.name] = v
    return out


# ---------------------------------------------------------------------------
# file format: key: value lines, one block per entry, blank line terminates


def _fmt_vec(values: Sequence[Fraction]) -> str:
    return " ".join(format_rational(v) for v in values)


def dumps(catalog: Catalog) -> str:
    lines = ["# gammadeg catalog v1", ""]
    for e in catalog:
        lines.append(f"name: {e.name}")
        lines.append(f"family: {e.family.value}")
        lines.append("params: " + " ".join(str(p) for p in e.params))
        lines.append(f"rank: {e.rank}")
        lines.append(f"dimension: {e.dimension}")
        lines.append(f"parity: {e.parity_type.value}")
        lines.append(f"connected_isotropy: {'true' if e.connected_isotropy else 'false'}")
        lines.append(f"free_rule: {e.free_cohomology_rule.value}")
        if e.rho is not None:
            lines.append(f"rho: {e.rho}")
        if e.total_dimension is not None:
            lines.append(f"total_dimension: {e.total_dimension}")
        for root in e.root_system.roots:
            lines.append(f"root: {_fmt_vec(root.form.coeffs)} | {root.multiplicity}")
        for g in e.root_system.lattice.generators:
            lines.append(f"lattice: {_fmt_vec(g.coords)}")
        if e.provenance:
            lines.append("provenance: " + " ".join(e.provenance.split()))
        lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"


def save(catalog: Catalog, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(catalog), encoding="utf-8")


_REQUIRED = ("name", "family", "rank", "dimension", "parity", "connected_isotropy", "free_rule")
_SINGLE = set(_REQUIRED) | {"params", "rho", "total_dimension", "provenance"}


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise CatalogParseError(f"{what}: expected an integer, got {token.strip()!r}", line) from None


def _parse_vec(text: str, line: int) -> list[Fraction]:
    out = []
    for tok in text.split():
        try:
            out.append(parse_rational(tok))
        except ValueError as exc:
            raise CatalogParseError(f"bad rational {tok!r}: {exc}", line) from None
    return out


def _enum_value(enum_cls, token: str, line: int, what: str):
    try:
        return enum_cls(token.strip())
    except ValueError:
        allowed = ", ".join(m.value for m in enum_cls)
        raise CatalogParseError(f"unknown {what} {token.strip()!r} (allowed: {allowed})", line) from None


def _build_entry(block: dict, roots: list, lattice: list, start: int) -> SpaceDescriptor:
    for key in _REQUIRED:
        if key not in block:
            raise CatalogParseError(f"entry is missing key {key!r}", start)
    get = lambda k: block[k]  # noqa: E731
    rank = _parse_int(get("rank")[0], get("rank")[1], "rank")
    for coeffs, _, ln in roots:
        if len(coeffs) != rank:
            raise CatalogParseError(f"root has {len(coeffs)} coefficients, rank is {rank}", ln)
    for coords, ln in lattice:
        if len(coords) != rank:
            raise CatalogParseError(f"lattice vector has {len(coords)} coordinates, rank is {rank}", ln)
    ci_tok, ci_line = get("connected_isotropy")
    if ci_tok.strip() not in ("true", "false"):
        raise CatalogParseError(f"connected_isotropy must be true/false, got {ci_tok.strip()!r}", ci_line)
    params_tok = block.get("params", ("", start))
    params = tuple(_parse_int(t, params_tok[1], "params") for t in params_tok[0].split())
    opt = lambda k: _parse_int(block[k][0], block[k][1], k) if k in block else None  # noqa: E731
    system = RestrictedRootSystem(
        rank,
        [RestrictedRoot(LinearForm(c), m) for c, m, _ in roots],
        Lattice(FlatVector(c) for c, _ in lattice),
    )
    return SpaceDescriptor(
        name=get("name")[0].strip(),
        family=_enum_value(Family, *get("family"), "family"),
        params=params,
        rank=rank,
        dimension=_parse_int(get("dimension")[0], get("dimension")[1], "dimension"),
        parity_type=_enum_value(Parity, *get("parity"), "parity"),
        connected_isotropy=ci_tok.strip() == "true",
        root_system=system,
        free_cohomology_rule=_enum_value(FreeRule, *get("free_rule"), "free rule"),
        provenance=block.get("provenance", ("", 0))[0].strip(),
        rho=opt("rho"),
        total_dimension=opt("total_dimension"),
    )


_ENUM_KEYS = {"family": Family, "parity": Parity, "free_rule": FreeRule}


def loads(text: str) -> Catalog:
    entries = []
    block: dict = {}
    roots: list = []
    lattice: list = []
    start = 0

    def flush():
        nonlocal block, roots, lattice
        if block or roots or lattice:
            entries.append(_build_entry(block, roots, lattice, start))
        block, roots, lattice = {}, [], []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            flush()
            continue
        if line.startswith("#"):
            continue
        if ":" not in line:
            raise CatalogParseError(f"expected 'key: value', got {line!r}", lineno)
        if not (block or roots or lattice):
            start = lineno
        key, _, value = line.partition(":")
        key = key.strip()
        if key == "root":
            coeffs, bar, mult = value.partition("|")
            if not bar:
                raise CatalogParseError("root line needs 'coeffs | multiplicity'", lineno)
            roots.append((_parse_vec(coeffs, lineno), _parse_int(mult, lineno, "multiplicity"), lineno))
        elif key == "lattice":
            lattice.append((_parse_vec(value, lineno), lineno))
        elif key in _SINGLE:
            if key in block:
                raise CatalogParseError(f"duplicate key {key!r}", lineno)
            if key in _ENUM_KEYS:
                # fail on a bad keyword at its own line, before missing-key checks
                _enum_value(_ENUM_KEYS[key], value, lineno, key)
            block[key] = (value, lineno)
        else:
            raise CatalogParseError(f"unknown key {key!r}", lineno)
    flush()
    try:
        return Catalog(entries)
    except DataError as exc:
        raise CatalogParseError(str(exc)) from None


def load(path: str | os.PathLike) -> Catalog:
    return loads(Path(path).read_text(encoding="utf-8"))
