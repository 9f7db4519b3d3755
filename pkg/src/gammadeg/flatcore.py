"""Exact rational linear algebra on the tangent space of a flat.

Coordinates are stored in pi-units: a stored vector ``x`` stands for the
tangent vector ``pi * x``.  With a root ``alpha`` and ``lam = alpha**2`` the
curvature thresholds ``pi**2/4`` and ``pi**2`` turn into the rational
constants 1/2 and 1 applied to ``|alpha(x)|``, so every decision made by the
degree engine is an exact rational comparison.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CapacityError, DimensionError

Rational = Fraction

HALF = Fraction(1, 2)
ONE = Fraction(1)

DEFAULT_RANK_LIMIT = 26


def to_rational(value: int | str | Fraction) -> Fraction:
    """Coerce ``value`` to a Fraction; floats are refused on purpose."""
    if isinstance(value, float):
        raise TypeError("floating-point coordinates are not accepted")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(q))


def parse_rational(token: str) -> Fraction:
    token = token.strip()
    if "." in token or "e" in token.lower():
        raise ValueError(f"not an exact rational: {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in rational {token!r}") from None
    except ValueError:
        raise ValueError(f"malformed rational {token!r}") from None


@dataclass(frozen=True)
class FlatVector:
    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable[int | str | Fraction]):
        object.__setattr__(self, "coords", tuple(to_rational(c) for c in coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: FlatVector) -> FlatVector:
        _check_lengths(self.coords, other.coords)
        return FlatVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: FlatVector) -> FlatVector:
        _check_lengths(self.coords, other.coords)
        return FlatVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> FlatVector:
        return FlatVector(-a for a in self.coords)

    def scale(self, k: int | Fraction) -> FlatVector:
        k = to_rational(k)
        return FlatVector(k * a for a in self.coords)

    def __repr__(self) -> str:
        return "FlatVector(" + ", ".join(format_rational(c) for c in self.coords) + ")"

    @classmethod
    def zero(cls, rank: int) -> FlatVector:
        return cls([0] * rank)


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[int | str | Fraction]):
        object.__setattr__(self, "coeffs", tuple(to_rational(c) for c in coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __neg__(self) -> LinearForm:
        return LinearForm(-a for a in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        return "LinearForm(" + ", ".join(format_rational(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class Lattice:
    """Z-span of ``generators`` (pi-units)."""

    generators: tuple[FlatVector, ...]

    def __init__(self, generators: Iterable[FlatVector | Iterable]):
        gens = tuple(g if isinstance(g, FlatVector) else FlatVector(g) for g in generators)
        if gens:
            _check_lengths(*(g.coords for g in gens))
        object.__setattr__(self, "generators", gens)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def dimension(self) -> int:
        """Length of the generator vectors (ambient dimension)."""
        return len(self.generators[0]) if self.generators else 0

    def is_independent(self) -> bool:
        return rational_rank([g.coords for g in self.generators]) == len(self.generators)

    def translate(self, x: FlatVector, coefficients: Sequence[int]) -> FlatVector:
        """``x + sum(t_j * B_j)``."""
        if len(coefficients) != self.rank:
            raise DimensionError(f"{len(coefficients)} coefficients for rank {self.rank}")
        coords = list(x.coords)
        for t, b in zip(coefficients, self.generators):
            if t:
                for i, c in enumerate(b.coords):
                    coords[i] += t * c
        return FlatVector(coords)

    @classmethod
    def standard(cls, rank: int, scale: int | Fraction = 1) -> Lattice:
        return cls(
            FlatVector([scale if i == j else 0 for i in range(rank)]) for j in range(rank)
        )


def _check_lengths(*seqs: Sequence) -> None:
    n = len(seqs[0])
    for s in seqs[1:]:
        if len(s) != n:
            raise DimensionError(f"length mismatch: {n} vs {len(s)}")


def evaluate(form: LinearForm, x: FlatVector) -> Fraction:
    """Exact value ``sum(coeffs_i * coords_i)``."""
    _check_lengths(form.coeffs, x.coords)
    return sum((a * b for a, b in zip(form.coeffs, x.coords)), Fraction(0))


class Band(enum.Enum):
    """Position of ``|alpha(x)|`` relative to the thresholds 0, 1/2, 1."""

    ZERO = "Zero"
    INNER = "Inner"
    HALF = "Half"
    OUTER = "Outer"
    BEYOND = "Beyond"

    @property
    def regular(self) -> bool:
        return self in (Band.INNER, Band.OUTER)


def band_of(value: Fraction) -> Band:
    v = abs(value)
    if v == 0:
        return Band.ZERO
    if v < HALF:
        return Band.INNER
    if v == HALF:
        return Band.HALF
    if v < ONE:
        return Band.OUTER
    return Band.BEYOND


def classify_against_thresholds(form: LinearForm, x: FlatVector) -> Band:
    return band_of(evaluate(form, x))


def coset_representatives(
    y_half: FlatVector, lattice: Lattice, rank_limit: int = DEFAULT_RANK_LIMIT
) -> list[FlatVector]:
    """All ``y_half + 1/2 * sum(delta_j B_j)`` for delta in {0,1}^r.

    Binary counting order with ``delta_1`` as the lowest bit.
    """
    r = lattice.rank
    if r > rank_limit:
        raise CapacityError(f"rank {r} exceeds limit {rank_limit} (2^{r} preimages)")
    if r and len(y_half) != lattice.dimension:
        raise DimensionError(f"length mismatch: {len(y_half)} vs {lattice.dimension}")
    half_gens = [g.scale(HALF) for g in lattice.generators]
    out = []
    for rev in itertools.product((0, 1), repeat=r):
        delta = rev[::-1]
        v = y_half
        for d, h in zip(delta, half_gens):
            if d:
                v = v + h
        out.append(v)
    return out


def common_denominator(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators (1 for an empty input)."""
    den = 1
    for q in values:
        den = math.lcm(den, Fraction(q).denominator)
    return den


def scale_to_integers(values: Iterable[Fraction], denominator: int) -> list[int]:
    """Numerators over a shared ``denominator``; raises if any value does not fit."""
    out = []
    for q in values:
        n = q * denominator
        if n.denominator != 1:
            raise ValueError(f"{q} is not a multiple of 1/{denominator}")
        out.append(n.numerator)
    return out


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank
