"""Command-line interface.

    harbourne analyze FILE [--json]
    harbourne catalog list | show NAME [--json] | emit NAME FILE
    harbourne verify [--kind k3|enriques]

Exit status: 0 on success, 1 on input or usage errors, 2 when a check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .arrangement import (
    Arrangement,
    ArrangementError,
    ArrangementSummary,
    Curve,
    SingularPoint,
    SurfaceKind,
    check,
)
from .negativity import format_fraction, render, report

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2

_KINDS = {"k3": SurfaceKind.k3, "enriques": SurfaceKind.enriques}


class DocumentError(ValueError):
    pass


def _strict_keys(obj, allowed: set, required: set, where: str):
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise DocumentError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise DocumentError(f"{where}: missing field(s) {sorted(missing)}")


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: expected an integer, got {value!r}")
    return value


def _id(value, where: str) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(f"{where}: ids must be strings or integers, got {value!r}")
    return str(value)


def _parse_surface(obj) -> SurfaceKind:
    _strict_keys(obj, {"kind", "c2"}, {"kind"}, "surface")
    kind = obj["kind"]
    if kind in _KINDS:
        surface = _KINDS[kind]()
        if "c2" in obj and _int(obj["c2"], "surface.c2") != surface.c2:
            raise DocumentError(f"surface: {kind} has c2 = {surface.c2}, got {obj['c2']}")
        return surface
    if kind == "other":
        if "c2" not in obj:
            raise DocumentError("surface: kind 'other' needs an explicit c2")
        try:
            return SurfaceKind.other(_int(obj["c2"], "surface.c2"))
        except ValueError as exc:
            raise DocumentError(f"surface: {exc}") from None
    raise DocumentError(f"surface: unknown kind {kind!r} (expected k3, enriques or other)")


def parse_document(data) -> Arrangement | ArrangementSummary:
    """Turn a decoded document into an arrangement or a summary."""
    _strict_keys(data, {"surface", "curves", "points", "summary"}, {"surface"}, "document")
    surface = _parse_surface(data["surface"])
    full = "curves" in data or "points" in data
    if full == ("summary" in data):
        raise DocumentError("document needs exactly one of curves+points or summary")

    if "summary" in data:
        obj = data["summary"]
        _strict_keys(obj, {"n", "t", "self_intersection"}, {"n", "t"}, "summary")
        if not isinstance(obj["t"], dict):
            raise DocumentError("summary.t: expected an object mapping r to t_r")
        try:
            t = {int(r): _int(c, f"summary.t.{r}") for r, c in obj["t"].items()}
            return ArrangementSummary(
                surface,
                _int(obj["n"], "summary.n"),
                t,
                _int(obj.get("self_intersection", -2), "summary.self_intersection"),
            )
        except ValueError as exc:
            raise DocumentError(f"summary: {exc}") from None

    if "curves" not in data:
        raise DocumentError("document: missing field(s) ['curves']")
    if not isinstance(data["curves"], list) or not isinstance(data.get("points", []), list):
        raise DocumentError("curves and points must be lists")
    curves = []
    for i, c in enumerate(data["curves"]):
        where = f"curves[{i}]"
        _strict_keys(c, {"id", "self_intersection", "rational"}, {"id"}, where)
        rational = c.get("rational", True)
        if not isinstance(rational, bool):
            raise DocumentError(f"{where}.rational: expected a boolean")
        curves.append(Curve(
            _id(c["id"], f"{where}.id"),
            _int(c.get("self_intersection", -2), f"{where}.self_intersection"),
            rational,
        ))
    points = []
    for i, p in enumerate(data.get("points", [])):
        where = f"points[{i}]"
        _strict_keys(p, {"id", "curves"}, {"id", "curves"}, where)
        if not isinstance(p["curves"], list):
            raise DocumentError(f"{where}.curves: expected a list")
        points.append(SingularPoint(
            _id(p["id"], f"{where}.id"),
            [_id(c, f"{where}.curves") for c in p["curves"]],
        ))
    return check(Arrangement(surface, curves, points))


def load_document(path) -> Arrangement | ArrangementSummary:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: malformed JSON ({exc})") from None
    return parse_document(data)


def to_document(x: Arrangement | ArrangementSummary) -> dict:
    surface = {"kind": x.surface.variant.lower(), "c2": x.surface.c2}
    if isinstance(x, ArrangementSummary):
        return {
            "surface": surface,
            "summary": {
                "n": x.n,
                "t": {str(r): c for r, c in x.t.items()},
                "self_intersection": x.self_intersection,
            },
        }
    return {
        "surface": surface,
        "curves": [
            {"id": str(c.id), "self_intersection": c.self_intersection, "rational": c.rational}
            for c in x.curves
        ],
        "points": [{"id": str(p.id), "curves": [str(c) for c in p.curves]} for p in x.points],
    }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _print_report(rep, as_json: bool):
    print(_dump(rep.to_dict()) if as_json else rep.render())


def cmd_analyze(args) -> int:
    try:
        x = load_document(args.file)
        rep = report(x)
    except ArrangementError as exc:
        print("error: invalid arrangement", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _print_report(rep, args.json)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name, entry in catalog.CATALOG.items():
            print(f"{name:<20} {entry.fidelity:<8} h = {render(entry.expected.h)}")
        return EXIT_OK
    try:
        entry = catalog.catalog_entry(args.name)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    if args.action == "show":
        rep = entry.report()
        _print_report(rep, args.json)
        return EXIT_OK if rep.passed else EXIT_FAIL
    Path(args.path).write_text(_dump(to_document(entry.build())) + "\n", encoding="utf-8")
    print(f"wrote {entry.name} to {args.path}")
    return EXIT_OK


def run_verify(kind: str | None = None) -> tuple[list, int]:
    entries = [
        e for e in catalog.CATALOG.values()
        if kind is None or e.build().surface.variant.lower() == kind
    ]
    results = [catalog.verify_entry(e) for e in entries]
    return results, EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def cmd_verify(args) -> int:
    results, status = run_verify(args.kind)
    print(f"{'entry':<20} {'kind':<9} {'h':>8} {'bound':>9} {'miyaoka':>9}  result")
    for r in results:
        rep = r.report
        miyaoka = f"{rep.miyaoka_lhs}<={rep.miyaoka_cap}" if rep.miyaoka_lhs is not None else "n/a"
        h = format_fraction(rep.h) if rep.h is not None else "-"
        bound = format_fraction(rep.lower_bound) if rep.lower_bound is not None else "-"
        print(f"{r.name:<20} {r.kind:<9} {h:>8} {bound:>9} {miyaoka:>9}  {'ok' if r.ok else 'MISMATCH'}")
        for m in r.mismatches:
            print(f"    {m}")
    matched = sum(r.ok for r in results)
    print(f"{matched}/{len(results)} entries match")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harbourne",
        description="Harbourne constants of rational curve arrangements on K3 and Enriques surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze an arrangement document")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("catalog", help="list, show or export published configurations")
    csub = p.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    show = csub.add_parser("show")
    show.add_argument("name")
    show.add_argument("--json", action="store_true")
    emit = csub.add_parser("emit")
    emit.add_argument("name")
    emit.add_argument("path")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="recompute every catalog entry and compare with the published values")
    p.add_argument("--kind", choices=["k3", "enriques"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
