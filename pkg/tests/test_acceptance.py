"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines, or
``python3 tests/test_acceptance.py`` for a standalone report.
"""

from __future__ import annotations

import contextlib
import dataclasses
import io
import functools
import sys
import time

import pytest

from gammadeg.calculus import evaluate_expression
from gammadeg.catalog import (
    Catalog,
    Family,
    RestrictedRoot,
    RestrictedRootSystem,
    builtin_catalog,
    uo,
    validate,
)
from gammadeg.cli import main as cli_main
from gammadeg.cohomology import verify_classification
from gammadeg.degree import mapping_degree
from gammadeg.oracle import naive_degree, sphere_degree

CAT = builtin_catalog()
SEEDS = range(100)


def _timed(fn):
    t0 = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t0


def criterion_1():
    got, dt = _timed(lambda: {n: mapping_degree(CAT.get(f"S({n})")).degree for n in range(2, 12)})
    want = {n: 2 if n % 2 else 0 for n in range(2, 12)}
    return got == want and dt < 1.0, f"degrees={got} in {dt:.3f}s (limit 1s)"


def criterion_2():
    got, dt = _timed(lambda: {r: mapping_degree(CAT.get(f"T({r})")).degree for r in range(9)})
    return got == {r: 2**r for r in range(9)} and dt < 1.0, f"degrees={got} in {dt:.3f}s (limit 1s)"


def criterion_3():
    got, dt = _timed(lambda: {n: mapping_degree(CAT.get(f"UO({n})")).degree for n in range(2, 10)})
    want = {n: 2 ** ((n - 1) // 2 + 1) if n % 2 else 0 for n in range(2, 10)}
    return got == want and dt < 5.0, f"degrees={got} in {dt:.3f}s (limit 5s)"


def criterion_4():
    ns = [e.params[0] for e in CAT if e.family is Family.AI]
    bad = []
    for n in ns:
        lhs = evaluate_expression(f"T(1) x AI({n})", catalog=CAT).degree
        rhs = mapping_degree(CAT.get(f"UO({n})")).degree
        if lhs != rhs:
            bad.append((n, lhs, rhs))
        if n % 2 and evaluate_expression(f"AI({n})", catalog=CAT).degree != 2 ** ((n - 1) // 2):
            bad.append((n, "AI(2m+1) != 2^m"))
    return not bad, f"n={ns}; mismatches={bad}"


def criterion_5():
    expect = {"AII(3)": 4, "AII(4)": 8, "E6F4": 4}
    for e in CAT:
        if e.family is Family.GROUP:
            expect[e.name] = 2**e.rank
    bad = []
    for name, d in expect.items():
        fast = mapping_degree(CAT.get(name))
        full = mapping_degree(CAT.get(name), force_full=True)
        if not (fast.fastpath_used and fast.degree == full.degree == d):
            bad.append((name, fast.degree, full.degree, d))
    return not bad, f"{len(expect)} entries; mismatches={bad}"


def criterion_6():
    report = verify_classification(CAT)
    with contextlib.redirect_stdout(io.StringIO()):
        code = cli_main(["verify", "classification"])
    s = report.summary()
    ok = report.ok and s["agree"] == s["checked"] > 0 and code == 0
    return ok, f"{s['agree']}/{s['checked']} agree, skipped={s['skipped']}, exit={code}"


@functools.lru_cache(maxsize=None)
def _seed_sweep():
    return {e.name: tuple(mapping_degree(e, s, force_full=True).degree for s in SEEDS) for e in CAT}


def criterion_7():
    bad = sorted({(n, d) for n, ds in _seed_sweep().items() for d in ds
                  if d != 0 and (abs(d) & (abs(d) - 1))})
    return not bad, f"{len(CAT)} entries x {len(SEEDS)} seeds (full enumeration); non powers={bad}"


def criterion_8():
    bad = [n for n, ds in _seed_sweep().items() if len(set(ds)) != 1]
    return not bad, f"{len(CAT)} entries x {len(SEEDS)} seeds; varying={bad}"


def criterion_9():
    bad = []
    for n in range(2, 8):
        a, b = sphere_degree(n), mapping_degree(CAT.get(f"S({n})")).degree
        if a != b:
            bad.append((f"S({n})", a, b))
    checked = [e for e in CAT if e.rank <= 8]
    for e in checked:
        a, b = naive_degree(e), mapping_degree(e).degree
        if a != b:
            bad.append((e.name, a, b))
    return not bad, f"spheres 2..7 and {len(checked)} entries of rank <= 8; mismatches={bad}"


def criterion_10():
    identity = [e.name for e in CAT if e.dimension != e.rank + sum(e.root_system.multiplicities)]
    invalid = [e.name for e in CAT if validate(e)]
    missed = []
    trials = 0
    for e in CAT:
        roots = e.root_system.roots
        for i, root in enumerate(roots):
            for d in (-1, 1):
                changed = list(roots)
                changed[i] = RestrictedRoot(root.form, root.multiplicity + d)
                system = RestrictedRootSystem(e.rank, changed, e.root_system.lattice)
                bad = dataclasses.replace(e, root_system=system)
                trials += 1
                if not validate(bad) and verify_classification(Catalog([bad])).ok:
                    missed.append((e.name, i, d))
    ok = not identity and not invalid and not missed
    return ok, f"identity failures={identity}, invalid={invalid}; {trials} corruptions, missed={missed}"


def criterion_11():
    space = uo(21)
    r1, t1 = _timed(lambda: mapping_degree(space, force_full=True, threads=1))
    r8, t8 = _timed(lambda: mapping_degree(space, force_full=True, threads=8))
    same = (r1.degree, r1.signed_count, r1.generic_point) == (r8.degree, r8.signed_count, r8.generic_point)
    ok = r1.degree == 2**11 and same and max(t1, t8) < 60.0
    return ok, (f"UO(21) degree={r1.degree} (expected 2048); threads=1 {t1:.1f}s, "
                f"threads=8 {t8:.1f}s (limit 60s); identical={same}")


CRITERIA = [
    (1, "sphere degrees", criterion_1),
    (2, "torus degrees", criterion_2),
    (3, "Lagrangian Grassmannians", criterion_3),
    (4, "covering calculus", criterion_4),
    (5, "splitting rank", criterion_5),
    (6, "classification equivalence", criterion_6),
    (7, "power-of-two invariant", criterion_7),
    (8, "target invariance over 100 seeds", criterion_8),
    (9, "oracle equivalence", criterion_9),
    (10, "data validation and fault injection", criterion_10),
    (11, "performance and thread determinism", criterion_11),
]


def _report(number, title, fn):
    ok, detail = fn()
    print(f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    return ok


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    with capsys.disabled():
        ok = _report(number, title, fn)
    assert ok


if __name__ == "__main__":
    results = [_report(*c) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
