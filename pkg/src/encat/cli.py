"""Command-line driver.

Exit codes: 0 success / all checks pass; 1 check failure or round-trip
mismatch; 2 invalid input; 3 construction failure (missing or ambiguous
witness).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import (
    CheckReport,
    EncatError,
    EngineBugError,
    WitnessError,
    canonical_diff,
    structural_equal,
    validate_category,
)
from .equiv import (
    bimodule_completion,
    cylinder_to_module,
    cylinder_to_tensored,
    module_to_cylinder,
    tensored_to_cylinder,
)
from .instances import build_instance, parse_instance_name
from .interface import Document, DocumentError, parse, serialize
from .monoidal import check_closed, check_monoidal, check_symmetry
from .vcat import check_vcategory, underlying_category
from .vmodule import (
    check_closed_bimodule,
    check_closed_module,
    check_tensor_closed,
    check_vmodule,
    induced_vstructure,
)
from .vstruct import associated_vcategory, check_cylinder, check_path, check_vstructure

LAW_REGISTRY = (
    "pentagon", "triangle",
    "symmetry.invol", "symmetry.hexagon", "symmetry.unit",
    "closed.bijection",
    "vcat.assoc", "vcat.unit",
    "vstructure.assoc", "vstructure.left-action", "vstructure.right-action",
    "cylinder.cp1-1", "path.cp2-1-25",
    "module.assoc", "module.unit",
    "moduleclosed.naturality",
    "bimodule.cp2-8-1", "bimodule.cp2-8-2", "bimodule.cp2-8-3",
    "comodule.assoc", "comodule.unit",
)

_AUX_LAWS = (
    "category.assoc", "category.composable", "category.identity-shape",
    "category.reserved-id", "category.shape", "category.total", "category.unit",
    "tensor.identity", "tensor.interchange", "tensor.shape",
    "assoc.iso", "assoc.natural", "assoc.shape",
    "lunit.iso", "lunit.natural", "lunit.shape",
    "runit.iso", "runit.natural", "runit.shape",
    "symmetry.natural", "symmetry.shape",
    "closed.shape", "closed.pi-natural",
    "vcat.shape",
    "vfunctor.comp", "vfunctor.shape", "vfunctor.unit",
    "vnat.shape", "vnat.square", "vnat.hom-square",
    "tensored.iso", "tensored.shape", "tensored.vnatural",
    "vstructure.functor.composition", "vstructure.functor.identity",
    "vstructure.functor.shape", "vstructure.functor.total",
    "vstructure.phi-bijection", "vstructure.phi-natural", "vstructure.shape",
    "cylinder.phibar-iso", "cylinder.shape",
    "path.psibar-iso", "path.shape",
    "module.assoc-iso", "module.assoc-natural",
    "module.functor.composition", "module.functor.identity",
    "module.functor.shape", "module.functor.total",
    "module.lunit-iso", "module.lunit-natural", "module.shape",
    "moduleclosed.cotensor.composition", "moduleclosed.cotensor.identity",
    "moduleclosed.cotensor.shape", "moduleclosed.cotensor.total",
    "moduleclosed.functor.composition", "moduleclosed.functor.identity",
    "moduleclosed.functor.shape", "moduleclosed.functor.total",
    "comodule.assoc-iso", "comodule.assoc-natural",
    "comodule.functor.composition", "comodule.functor.identity",
    "comodule.functor.shape", "comodule.functor.total",
    "comodule.lunit-iso", "comodule.lunit-natural", "comodule.shape",
    "bimodule.opposite-vstructure",
)

KNOWN_LAWS = tuple(sorted(LAW_REGISTRY + _AUX_LAWS))

CONSTRUCT_OPS = (
    "underlying", "associated-vcat", "induced-vstructure", "module-to-cylinder",
    "cylinder-to-module", "tensored-to-cylinder", "cylinder-to-tensored",
    "bimodule-complete",
)


def _color_enabled() -> bool:
    env = os.environ.get("ENCAT_COLOR")
    if env == "1":
        return True
    if env == "0":
        return False
    return sys.stdout.isatty()


def _paint(text: str, code: str) -> str:
    if _color_enabled():
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def run_checks(doc: Document) -> list[CheckReport]:
    """The kind-appropriate checker stack for a parsed document."""
    kind, data = doc.kind, doc.data
    if kind == "fincategory":
        return validate_category(data)
    if kind == "monoidal":
        reports = validate_category(data.base)
        if reports:
            return reports
        reports = check_monoidal(data)
        if not reports and data.symmetry is not None:
            reports += check_symmetry(data)
        if not reports and data.closed is not None:
            reports += check_closed(data)
        return reports
    if kind == "vcategory":
        return check_vcategory(data)
    if kind == "vstructure":
        return check_vstructure(data)
    if kind == "cylinder":
        vs, cyl = data
        return check_vstructure(vs) + check_cylinder(vs, cyl)
    if kind == "path":
        vs, pth = data
        return check_vstructure(vs) + check_path(vs, None, pth)
    if kind == "vmodule":
        return check_vmodule(data)
    if kind == "tensorclosed":
        return check_tensor_closed(data)
    if kind == "closedmodule":
        return check_closed_module(data)
    if kind == "bimodule":
        return check_closed_bimodule(data)
    raise DocumentError(f"no checker for kind {kind!r}")


def _print_reports(reports: list[CheckReport], fmt: str, out) -> None:
    if fmt == "json":
        records = [{"law": r.law, "site": list(r.site), "lhs": r.lhs, "rhs": r.rhs}
                   for r in reports]
        print(json.dumps({"reports": records}, indent=2, sort_keys=True), file=out)
        return
    for r in reports:
        site = "(" + ", ".join(r.site) + ")"
        print(f"{_paint('FAIL', '31')} {_paint(r.law, '1')} site={site} "
              f"lhs={r.lhs} rhs={r.rhs}", file=out)
    if reports:
        print(f"{len(reports)} failing check(s)", file=out)
    else:
        print("OK: all checks passed", file=out)


def _construct(doc: Document, op: str) -> Document:
    kind, data = doc.kind, doc.data
    if op == "underlying":
        if kind != "vcategory":
            raise DocumentError("underlying needs a vcategory document")
        _cat, vs = underlying_category(data)
        return Document("vstructure", vs)
    if op == "associated-vcat":
        if kind != "vstructure":
            raise DocumentError("associated-vcat needs a vstructure document")
        return Document("vcategory", associated_vcategory(data))
    if op == "induced-vstructure":
        tc = _as_tensorclosed(doc)
        return Document("vstructure", induced_vstructure(tc))
    if op == "module-to-cylinder":
        tc = _as_tensorclosed(doc)
        return Document("cylinder", module_to_cylinder(tc))
    if op == "cylinder-to-module":
        if kind != "cylinder":
            raise DocumentError("cylinder-to-module needs a cylinder document")
        vs, cyl = data
        return Document("tensorclosed", cylinder_to_module(vs, cyl))
    if op in ("tensored-to-cylinder", "cylinder-to-tensored"):
        # tensor assignments share the cylinder wire format: the coevaluation
        # elements are recomputed from the units, so both ops route through it
        if kind != "cylinder":
            raise DocumentError(f"{op} needs a cylinder document")
        vs, cyl = data
        td = cylinder_to_tensored(vs, cyl)
        back = tensored_to_cylinder(associated_vcategory(vs), td)
        return Document("cylinder", (vs, back))
    if op == "bimodule-complete":
        if kind != "closedmodule":
            raise DocumentError("bimodule-complete needs a closedmodule document")
        return Document("bimodule", bimodule_completion(data))
    raise DocumentError(f"unknown construction {op!r}")


def _as_tensorclosed(doc: Document):
    if doc.kind == "tensorclosed":
        return doc.data
    if doc.kind == "closedmodule":
        return doc.data.tensorClosed
    if doc.kind == "bimodule":
        return doc.data.closedModule.tensorClosed
    raise DocumentError(f"expected a module document, got {doc.kind!r}")


def _roundtrip(doc: Document, pair: str, out) -> int:
    if pair == "module-cylinder":
        tc = _as_tensorclosed(doc)
        back = cylinder_to_module(*module_to_cylinder(tc))
        if structural_equal(back, tc):
            print("equal", file=out)
            return 0
        print(f"unequal: {canonical_diff(back, tc)}", file=out)
        return 1
    if pair == "cylinder-tensored":
        if doc.kind != "cylinder":
            raise DocumentError("cylinder-tensored round trip needs a cylinder document")
        vs, cyl = doc.data
        back = tensored_to_cylinder(associated_vcategory(vs),
                                    cylinder_to_tensored(vs, cyl))
        if structural_equal(back, cyl):
            print("equal", file=out)
            return 0
        print(f"unequal: {canonical_diff(back, cyl)}", file=out)
        return 1
    raise DocumentError(f"unknown round-trip pair {pair!r}")


def _load(path: str) -> Document:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())


def _save(doc: Document, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize(doc))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="encat",
        description="check and transform finite enriched-category documents")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run the kind-appropriate checker")
    p_check.add_argument("file")
    p_check.add_argument("--laws", default=None,
                         help="comma-separated law names to report")
    p_check.add_argument("--format", choices=("text", "json"), default="text")

    p_con = sub.add_parser("construct", help="run a named construction")
    p_con.add_argument("file")
    p_con.add_argument("--op", required=True, choices=CONSTRUCT_OPS)
    p_con.add_argument("-o", "--output", required=True)

    p_rt = sub.add_parser("roundtrip", help="verify a correspondence round trip")
    p_rt.add_argument("file")
    p_rt.add_argument("--pair", required=True,
                      choices=("module-cylinder", "cylinder-tensored"))

    p_inst = sub.add_parser("instance", help="emit a builtin instance")
    p_inst.add_argument("name")
    p_inst.add_argument("-o", "--output", required=True)
    return parser


def cli(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0

    try:
        if args.command == "check":
            doc = _load(args.file)
            reports = run_checks(doc)
            if args.laws is not None:
                wanted = [w.strip() for w in args.laws.split(",") if w.strip()]
                unknown = [w for w in wanted if w not in KNOWN_LAWS]
                if unknown:
                    print(f"unknown law name(s): {', '.join(unknown)}", file=out)
                    print("known laws: " + ", ".join(KNOWN_LAWS), file=out)
                    return 2
                reports = [r for r in reports if r.law in wanted]
            _print_reports(reports, args.format, out)
            return 1 if reports else 0

        if args.command == "construct":
            doc = _load(args.file)
            result = _construct(doc, args.op)
            _save(result, args.output)
            print(f"wrote {result.kind} document to {args.output}", file=out)
            return 0

        if args.command == "roundtrip":
            return _roundtrip(_load(args.file), args.pair, out)

        if args.command == "instance":
            spec = parse_instance_name(args.name)
            kind, data = build_instance(spec)
            _save(Document(kind, data), args.output)
            print(f"wrote {kind} document to {args.output}", file=out)
            return 0
    except (DocumentError, OSError) as exc:
        print(f"error: {exc}", file=out)
        return 2
    except WitnessError as exc:
        print(f"construction failed: {exc}", file=out)
        return 3
    except EngineBugError as exc:
        print(f"engine bug: {exc}", file=out)
        return 3
    except EncatError as exc:
        print(f"error: {exc}", file=out)
        return 2
    return 2


def main() -> None:
    raise SystemExit(cli())
