"""Independent cross-checks for the degree engine.

Two routes that share no code with :mod:`gammadeg.degree`:

* a floating-point model of the round sphere ``S^n`` in ``R^{n+1}``, where
  ``s_x(y) = 2<x,y>x - y``; the degree is a signed count of preimages with
  Jacobian signs taken by central finite differences;
* a slow exact recomputation over the catalog data: lexicographic delta
  order, no incremental updates, no fast path, a different translate search
  and the unfiltered parity sum over all roots.

This is the only module that uses floating point.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .catalog import SpaceDescriptor
from .errors import CapacityError, GammadegError, NoGenericPoint, NoValidRepresentative

NAIVE_RANK_LIMIT = 12


class DegenerateTarget(GammadegError):
    """Every drawn target had a Jacobian determinant too close to zero."""


@dataclass(frozen=True)
class SphereModelConfig:
    n: int
    samples: int = 8
    fd_step: float = 1e-5
    tolerance: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("sphere model needs n >= 2")
        if self.tolerance <= 0 or self.fd_step <= 0 or self.samples < 1:
            raise ValueError("fd_step, tolerance and samples must be positive")


def _check_unit(v: np.ndarray, tol: float, what: str) -> None:
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise ValueError(f"{what} is not a unit vector (|{what}| = {np.linalg.norm(v)!r})")


def sphere_theta(x, q, tol: float = 1e-9) -> np.ndarray:
    """Geodesic symmetry of the unit sphere at ``x`` applied to ``q``."""
    x = np.asarray(x, dtype=float)
    q = np.asarray(q, dtype=float)
    _check_unit(x, tol, "x")
    _check_unit(q, tol, "q")
    return 2.0 * np.dot(x, q) * x - q


def _oriented_frame(p: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Orthonormal basis of the tangent space at ``p``, as columns, with det[p | F] > 0."""
    m = p.size
    a = np.column_stack([p, rng.standard_normal((m, m - 1))])
    qmat, _ = np.linalg.qr(a)
    if np.dot(qmat[:, 0], p) < 0:
        qmat[:, 0] = -qmat[:, 0]
    frame = qmat[:, 1:]
    if np.linalg.det(np.column_stack([p, frame])) < 0:
        frame[:, 0] = -frame[:, 0]
    return frame


def _jacobian_sign(x, q, y, cfg: SphereModelConfig, rng) -> tuple[int, float]:
    fx = _oriented_frame(x, rng)
    fy = _oriented_frame(y, rng)
    h = cfg.fd_step
    n = cfg.n
    jac = np.empty((n, n))
    for k in range(n):
        e = fx[:, k]
        plus = np.cos(h) * x + np.sin(h) * e
        minus = np.cos(h) * x - np.sin(h) * e
        d = (sphere_theta(plus, q) - sphere_theta(minus, q)) / (2 * h)
        jac[:, k] = fy.T @ d
    det = float(np.linalg.det(jac))
    return (1 if det > 0 else -1), det


def sphere_degree(config: SphereModelConfig | int) -> int:
    """Signed preimage count of ``x -> s_x(q)`` on ``S^n`` at a random regular target."""
    cfg = config if isinstance(config, SphereModelConfig) else SphereModelConfig(int(config))
    rng = np.random.default_rng(cfg.seed)
    m = cfg.n + 1
    q = np.zeros(m)
    q[0] = 1.0
    for _ in range(cfg.samples):
        u = rng.standard_normal(m)
        u[0] = 0.0
        u /= np.linalg.norm(u)
        phi = rng.uniform(0.3, np.pi - 0.3)
        y = np.cos(phi) * q + np.sin(phi) * u
        # theta doubles the angle from q inside span(q, u): psi with 2 psi = phi mod 2 pi
        preimages = [np.cos(psi) * q + np.sin(psi) * u for psi in (phi / 2, phi / 2 + np.pi)]
        total = 0
        degenerate = False
        for x in preimages:
            if np.linalg.norm(sphere_theta(x, q) - y) > 1e-9:
                raise AssertionError("planar preimage does not map to the target")
            sign, det = _jacobian_sign(x, q, y, cfg, rng)
            if abs(det) <= cfg.tolerance:
                degenerate = True
                break
            total += sign
        if not degenerate:
            return total
    raise DegenerateTarget(f"S^{cfg.n}: no target with |det| > {cfg.tolerance} in {cfg.samples} draws")


# ---------------------------------------------------------------------------
# naive exact recomputation


def _dot(a, b) -> Fraction:
    return sum((Fraction(s) * t for s, t in zip(a, b)), Fraction(0))


def _naive_orientable(forms, mults, gens) -> bool:
    for b in gens:
        if sum(m * _dot(f, b) for f, m in zip(forms, mults)) % 2:
            return False
    return True


def _find_translate(vals, shifts, box=2):
    """Backtracking from the last generator down, values -box..box in increasing order."""
    r = len(shifts)
    n = len(vals)
    reach = [[Fraction(0)] * n for _ in range(r + 1)]
    for j in range(r):
        for i in range(n):
            reach[j + 1][i] = reach[j][i] + box * abs(shifts[j][i])

    def go(cur, j):
        # coordinates j-1, ..., 0 remain free
        if any(abs(c) - reach[j][i] >= 1 for i, c in enumerate(cur)):
            return None
        if j == 0:
            return []
        for t in range(-box, box + 1):
            nxt = [c + t * s for c, s in zip(cur, shifts[j - 1])]
            rest = go(nxt, j - 1)
            if rest is not None:
                return rest + [t]
        return None

    return go(list(vals), r)


def naive_signed_count(space: SpaceDescriptor, seed: int = 0, max_attempts: int = 64) -> int:
    """Raw sum of (-1)^eps over all 2^r preimages, recomputed from scratch."""
    sys_ = space.root_system
    r = sys_.rank
    if r > NAIVE_RANK_LIMIT:
        raise CapacityError(f"naive oracle is limited to rank {NAIVE_RANK_LIMIT}")
    if r == 0:
        return 1
    forms = [root.form.coeffs for root in sys_.roots]
    mults = [root.multiplicity for root in sys_.roots]
    gens = [g.coords for g in sys_.lattice.generators]
    shifts = [[_dot(f, b) for f in forms] for b in gens]
    rng = random.Random(1_000_003 + seed)
    for _ in range(max_attempts):
        y = [Fraction(-rng.randrange(1, 997), 8 * 997) for _ in range(r)]
        total = 0
        for delta in itertools.product((0, 1), repeat=r):
            x = [y[i] / 2 + sum(Fraction(d, 2) * b[i] for d, b in zip(delta, gens)) for i in range(r)]
            vals = [_dot(f, x) for f in forms]
            t = _find_translate(vals, shifts)
            if t is None:
                break
            vals = [v + sum(tj * shifts[j][i] for j, tj in enumerate(t)) for i, v in enumerate(vals)]
            if any(v == 0 or abs(v) == Fraction(1, 2) for v in vals):
                break
            eps = sum(m for v, m in zip(vals, mults) if abs(v) > Fraction(1, 2)) % 2
            total += (-1) ** eps
        else:
            return total
    raise NoGenericPoint(f"naive oracle found no regular target for {space.name}")


def naive_degree(space: SpaceDescriptor, seed: int = 0) -> int:
    """Degree by exhaustive recomputation; 0 on non-orientable data (no fundamental class)."""
    sys_ = space.root_system
    count = naive_signed_count(space, seed)
    forms = [root.form.coeffs for root in sys_.roots]
    mults = [root.multiplicity for root in sys_.roots]
    gens = [g.coords for g in sys_.lattice.generators]
    return count if _naive_orientable(forms, mults, gens) else 0


__all__ = [
    "DegenerateTarget",
    "NoValidRepresentative",
    "SphereModelConfig",
    "naive_degree",
    "naive_signed_count",
    "sphere_degree",
    "sphere_theta",
]
