"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 engine error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import __version__
from .calculus import evaluate_expression, expression_free, parse_expression
from .catalog import Catalog, active_catalog, dumps, validate, validate_catalog
from .cohomology import free_cohomology, splitting_rank, verify_classification
from .errors import (
    CatalogParseError,
    ExpressionSyntaxError,
    GammadegError,
    UnknownSpace,
)
from .flatcore import format_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ENGINE = 0, 1, 2, 3


@dataclass(frozen=True)
class CliConfig:
    catalog_path: str | None = None
    seed: int = 0
    format: str = "md"
    verbose: bool = False
    force_full: bool = False
    threads: int | None = None

    def __post_init__(self):
        if self.threads is not None and self.threads < 1:
            raise ValueError("--threads must be >= 1")


class VerificationFailed(Exception):
    pass


# ---------------------------------------------------------------------------
# output helpers


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return str(v)


def render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, ensure_ascii=False) + "\n"
    if not rows:
        return "" if fmt == "csv" else "(no rows)\n"
    cols = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in rows:
            w.writerow([_cell(row[c]) for c in cols])
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "|".join("---" for _ in cols) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(_cell(row[c]) for c in cols) + " |")
    return "\n".join(lines) + "\n"


def render_mapping(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    flat = {k: (json.dumps(v, ensure_ascii=False) if isinstance(v, (list, dict)) else _cell(v))
            for k, v in data.items()}
    if fmt == "csv":
        return render_rows([flat], "csv")
    return render_rows([{"key": k, "value": v} for k, v in flat.items()], "md")


# ---------------------------------------------------------------------------
# commands


def cmd_list(cat: Catalog, cfg: CliConfig, args) -> int:
    rows = [
        {"name": e.name, "rank": e.rank, "dim": e.dimension, "family": e.family.value}
        for e in cat
    ]
    sys.stdout.write(render_rows(rows, cfg.format))
    return EXIT_OK


def _descriptor_dict(e) -> dict:
    return {
        "name": e.name,
        "family": e.family.value,
        "params": list(e.params),
        "rank": e.rank,
        "dimension": e.dimension,
        "parity": e.parity_type.value,
        "connected_isotropy": e.connected_isotropy,
        "free_rule": e.free_cohomology_rule.value,
        "rho": e.rho,
        "total_dimension": e.total_dimension,
        "roots": [
            {"form": [format_rational(c) for c in r.form.coeffs], "multiplicity": r.multiplicity}
            for r in e.root_system.roots
        ],
        "lattice": [[format_rational(c) for c in g.coords] for g in e.root_system.lattice.generators],
        "provenance": e.provenance,
        "violations": validate(e),
    }


def cmd_info(cat: Catalog, cfg: CliConfig, args) -> int:
    e = cat.get(args.name)
    data = _descriptor_dict(e)
    if cfg.format == "json":
        sys.stdout.write(render_mapping(data, "json"))
        return EXIT_OK
    if cfg.format == "csv":
        sys.stdout.write(render_mapping(data, "csv"))
        return EXIT_OK
    out = [f"# {e.name}", ""]
    for key in ("family", "params", "rank", "dimension", "parity", "connected_isotropy",
                "free_rule", "rho", "total_dimension"):
        out.append(f"- {key}: {_cell(data[key]) if not isinstance(data[key], list) else data[key]}")
    out.append(f"- roots ({len(data['roots'])}):")
    for r in data["roots"]:
        out.append(f"  - ({', '.join(r['form'])}) | multiplicity {r['multiplicity']}")
    out.append(f"- lattice ({len(data['lattice'])} generators, pi-units):")
    for g in data["lattice"]:
        out.append(f"  - ({', '.join(g)})")
    out.append(f"- provenance: {e.provenance}")
    out.append("- validation: " + ("ok" if not data["violations"] else "; ".join(data["violations"])))
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def _degree_kwargs(cfg: CliConfig) -> dict:
    return {"force_full": cfg.force_full, "threads": cfg.threads, "collect": cfg.verbose}


def cmd_degree(cat: Catalog, cfg: CliConfig, args) -> int:
    expr = parse_expression(args.expr)
    report = evaluate_expression(expr, cfg.seed, cat, **_degree_kwargs(cfg))
    data = report.to_dict(verbose=cfg.verbose)
    if not report.orientable:
        data["caveat"] = "non-orientable: top rational homology vanishes, degree reported as 0"
    sys.stdout.write(render_mapping(data, cfg.format))
    return EXIT_OK


def table_rows(cat: Catalog, cfg: CliConfig) -> list[dict]:
    rows = []
    for e in cat:
        rep = evaluate_expression(parse_expression(e.name), cfg.seed, cat,
                                  force_full=cfg.force_full, threads=cfg.threads)
        mults = sorted(set(e.root_system.multiplicities))
        rows.append({
            "name": e.name,
            "rank": e.rank,
            "dim": e.dimension,
            "mults": " ".join(map(str, mults)) if mults else "-",
            "splitting_rank": splitting_rank(e),
            "degree": rep.degree,
            "free": free_cohomology(e),
            "gamma": rep.is_gamma,
        })
    return rows


def cmd_table(cat: Catalog, cfg: CliConfig, args) -> int:
    sys.stdout.write(render_rows(table_rows(cat, cfg), cfg.format))
    return EXIT_OK


def cmd_validate(cat: Catalog, cfg: CliConfig, args) -> int:
    bad = validate_catalog(cat)
    rows = [{"name": e.name, "ok": e.name not in bad, "violations": "; ".join(bad.get(e.name, []))}
            for e in cat]
    sys.stdout.write(render_rows(rows, cfg.format))
    return EXIT_FAIL if bad else EXIT_OK


def cmd_export(cat: Catalog, cfg: CliConfig, args) -> int:
    sys.stdout.write(dumps(cat))
    return EXIT_OK


# --- verification suites ---------------------------------------------------


def _check(results: list[dict], item: str, check: str, ok: bool, detail: str = "") -> None:
    results.append({"item": item, "check": check, "status": "PASS" if ok else "FAIL", "detail": detail})


def suite_classification(cat: Catalog, cfg: CliConfig, results: list[dict]) -> None:
    report = verify_classification(cat, cfg.seed, threads=cfg.threads)
    for name, problems in report.problems.items():
        _check(results, name, "classification data", False, "; ".join(problems))
    for row in report.rows:
        _check(results, row.name, "gamma == free", row.agrees,
               f"degree={row.degree} gamma={_cell(row.is_gamma)} free={_cell(row.free)}")
    for name in report.skipped:
        results.append({"item": name, "check": "gamma == free", "status": "SKIP",
                        "detail": "isotropy not connected"})


def suite_invariants(cat: Catalog, cfg: CliConfig, results: list[dict], seeds: int) -> None:
    from .degree import mapping_degree

    bad = validate_catalog(cat)
    for e in cat:
        if e.name in bad:
            _check(results, e.name, "validate", False, "; ".join(bad[e.name]))
            continue
        r = e.rank
        base = mapping_degree(e, cfg.seed, force_full=True, threads=cfg.threads)
        d = abs(base.degree)
        _check(results, e.name, "power of two", d == 0 or (d & (d - 1) == 0 and d <= 2**r),
               f"degree={base.degree}")
        degrees = {mapping_degree(e, s, force_full=True, threads=cfg.threads).degree for s in range(seeds)}
        _check(results, e.name, f"Y-invariance ({seeds} seeds)", degrees == {base.degree},
               f"degrees={sorted(degrees)}")
        if splitting_rank(e):
            fast = mapping_degree(e, cfg.seed).degree
            _check(results, e.name, "splitting rank => 2^r", fast == base.degree == 2**r,
                   f"fast={fast} full={base.degree}")
        _check(results, e.name, "theta_p degree", base.theta_p_degree == (-1 if e.dimension % 2 else 1))
    for e in cat:
        if e.family.value == "AI" and e.name not in bad:
            n = e.params[0]
            if f"UO({n})" in cat and "T(1)" in cat:
                lhs = evaluate_expression(f"T(1) x AI({n})", cfg.seed, cat).degree
                rhs = evaluate_expression(f"UO({n})", cfg.seed, cat).degree
                _check(results, f"AI({n})", "T(1) x AI(n) == UO(n)", lhs == rhs, f"{lhs} vs {rhs}")


def suite_oracle(cat: Catalog, cfg: CliConfig, results: list[dict]) -> None:
    from .degree import mapping_degree
    from .oracle import NAIVE_RANK_LIMIT, naive_degree, sphere_degree

    for e in cat:
        if e.family.value == "Sphere" and e.params and 2 <= e.params[0] <= 7:
            a = sphere_degree(e.params[0])
            b = mapping_degree(e, cfg.seed).degree
            _check(results, e.name, "sphere model", a == b, f"model={a} engine={b}")
    bad = validate_catalog(cat)
    for e in cat:
        if e.name in bad:
            _check(results, e.name, "validate", False, "; ".join(bad[e.name]))
            continue
        if e.rank <= min(8, NAIVE_RANK_LIMIT):
            a = naive_degree(e, cfg.seed)
            b = mapping_degree(e, cfg.seed, threads=cfg.threads).degree
            _check(results, e.name, "naive oracle", a == b, f"naive={a} engine={b}")


def cmd_verify(cat: Catalog, cfg: CliConfig, args) -> int:
    results: list[dict] = []
    which = args.which
    if which in ("classification", "all"):
        suite_classification(cat, cfg, results)
    if which in ("invariants", "all"):
        suite_invariants(cat, cfg, results, args.seeds)
    if which in ("oracle", "all"):
        suite_oracle(cat, cfg, results)
    shown = results if cfg.verbose or cfg.format != "md" else [
        r for r in results if r["status"] != "PASS"
    ]
    failures = [r for r in results if r["status"] == "FAIL"]
    if cfg.format == "md":
        if shown:
            sys.stdout.write(render_rows(shown, "md"))
        passed = sum(r["status"] == "PASS" for r in results)
        skipped = sum(r["status"] == "SKIP" for r in results)
        sys.stdout.write(f"verify {which}: {passed} passed, {len(failures)} failed, {skipped} skipped\n")
    else:
        sys.stdout.write(render_rows(shown, cfg.format))
    if failures:
        first = failures[0]
        print(f"FAILED: {first['item']} ({first['check']}) {first['detail']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_oracle(cat: Catalog, cfg: CliConfig, args) -> int:
    from .degree import mapping_degree
    from .oracle import SphereModelConfig, naive_degree, sphere_degree

    if args.kind == "sphere":
        n = int(args.target)
        model = sphere_degree(SphereModelConfig(n, seed=cfg.seed))
        from .catalog import sphere

        engine = mapping_degree(sphere(n), cfg.seed).degree
        name = f"S({n})"
    else:
        entry = cat.get(args.target)
        model = naive_degree(entry, cfg.seed)
        engine = mapping_degree(entry, cfg.seed, threads=cfg.threads).degree
        name = entry.name
    agree = model == engine
    data = {"space": name, "oracle": args.kind, "oracle_degree": model,
            "engine_degree": engine, "agree": agree}
    sys.stdout.write(render_mapping(data, cfg.format))
    return EXIT_OK if agree else EXIT_FAIL


# ---------------------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    p.add_argument("--catalog", metavar="PATH", default=s, help="catalog file (else $GAMMADEG_CATALOG, else builtin)")
    p.add_argument("--seed", type=int, default=s, help="seed for the generic target (default 0)")
    p.add_argument("--format", choices=("md", "csv", "json"), default=s, help="output format (default md)")
    p.add_argument("--verbose", action="store_true", default=s, help="include preimage witnesses / passing checks")
    p.add_argument("--force-full", action="store_true", default=s, help="skip the splitting-rank fast path")
    p.add_argument("--threads", type=int, default=s, help="worker threads for enumeration")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="gammadeg",
        parents=[common],
        description="Mapping degree of the squaring map on compact symmetric spaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", parents=[common], help="list catalog entries")
    p.set_defaults(func=cmd_list)
    p = sub.add_parser("info", parents=[common], help="show one catalog entry")
    p.add_argument("name")
    p.set_defaults(func=cmd_info)
    p = sub.add_parser("degree", parents=[common], help="degree of a space expression, e.g. 'T(1) x AI(5)'")
    p.add_argument("expr")
    p.set_defaults(func=cmd_degree)
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("which", choices=("classification", "invariants", "oracle", "all"))
    p.add_argument("--seeds", type=int, default=100, help="seeds for the Y-invariance check")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("table", parents=[common], help="summary table over the catalog")
    p.set_defaults(func=cmd_table)
    p = sub.add_parser("oracle", parents=[common], help="compare engine with an oracle")
    p.add_argument("kind", choices=("sphere", "naive"))
    p.add_argument("target", help="N for sphere, a space name for naive")
    p.set_defaults(func=cmd_oracle)
    p = sub.add_parser("validate", parents=[common], help="validate every catalog entry")
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("export", parents=[common], help="write the active catalog in file format")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig(
            catalog_path=getattr(args, "catalog", None),
            seed=getattr(args, "seed", 0),
            format=getattr(args, "format", "md"),
            verbose=getattr(args, "verbose", False),
            force_full=getattr(args, "force_full", False),
            threads=getattr(args, "threads", None),
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        cat = active_catalog(cfg.catalog_path)
        return args.func(cat, cfg, args)
    except (UnknownSpace, ExpressionSyntaxError, CatalogParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GammadegError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
