"""Command-line driver: run verification suites, export chain-operator
matrices, list the check catalog.

Exit codes: 0 all checks pass, 1 at least one check fails, 2 usage,
parse or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import coideal as co
from . import dsl, verify
from .coeff import rat, var
from .errors import FeasibilityExceeded, QonsagerError
from .repmat import (
    BoundaryParams, chain_operator, hamiltonian, matrix_to_coords,
)

PSI_PREFIXES = {
    "psi": "qOnsager",
    "psi_t": "triangular",
    "psi_d": "augmented",
    "psi_i": "gl2inv",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qonsager",
        description="exact verification workbench for the boundary symmetry "
                    "algebras of the open XXZ half-chain")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="builtin:<name> or a suite file path")
    v.add_argument("--sites", type=int, default=None,
                   help="chain length override (default 3 or per-check)")
    v.add_argument("--mode", choices=("symbolic", "generic"), default="symbolic")
    v.add_argument("--seed", type=int, default=None,
                   help="generic-point seed (required for generic mode)")
    v.add_argument("--case", default=None,
                   choices=tuple(verify.BOUNDARY_CASES),
                   help="restrict case-specific checks to one boundary case")
    v.add_argument("--report", default=None, help="write the JSON report here")
    v.add_argument("--e-order", choices=co.E_ORDERS, default=co.DEFAULT_E_ORDER,
                   help="bracket-ordering variant for the triangular tables")
    v.add_argument("--pt", choices=("zero", "symbolic"), default="zero",
                   help="third-generator counit value in specializations")
    v.add_argument("--timings", action="store_true",
                   help="include measured milliseconds in the JSON report "
                        "(off by default so identical runs are byte-identical)")
    v.add_argument("--allow-large", action="store_true",
                   help="override the documented site-count bounds")

    e = sub.add_parser("emit", help="export a chain operator matrix")
    e.add_argument("label", help="psi.W0, psi_t.T1, hamiltonian.generic, "
                                 "descendant.G1.polynomial, ...")
    e.add_argument("--sites", type=int, default=2)
    e.add_argument("--out", default=None, help="output path (default stdout)")

    sub.add_parser("list", help="print the check catalog")
    return parser


def resolve_suite(name: str):
    """Returns (suite_name, check declarations)."""
    if name.startswith("builtin:"):
        short = name.split(":", 1)[1]
        if short not in dsl.builtin_suite_names():
            raise QonsagerError(
                f"unknown builtin suite {short!r}; "
                f"available: {', '.join(dsl.builtin_suite_names())}")
        text = dsl.builtin_suite_text(short)
    else:
        with open(name, "r", encoding="utf-8") as fh:
            text = fh.read()
        short = name
    suite = dsl.parse_suite(text)
    return short, suite


def _case_matches(check_id: str, case: str) -> bool:
    if check_id.startswith("symmetry."):
        return check_id == f"symmetry.{case}"
    if check_id.startswith("specialization."):
        return check_id == f"specialization.{case.split('-')[0]}"
    return True


def cmd_verify(args) -> int:
    suite_name, suite = resolve_suite(args.suite)
    decls = list(suite.checks)
    if not decls:
        # a pure declaration suite still exercises the golden comparison
        decls = [dsl.CheckDecl("dsl.roundtrip", ())]
    unknown = [d.id for d in decls if d.id not in verify.CATALOG]
    if unknown:
        raise QonsagerError(f"unknown check ids: {', '.join(unknown)}")
    if args.case:
        decls = [d for d in decls if _case_matches(d.id, args.case)]
    if args.mode == "generic" and args.seed is None:
        raise QonsagerError("generic mode requires --seed")
    if args.mode == "symbolic" and args.seed is not None:
        raise QonsagerError("--seed only applies to generic mode")

    results = []
    contexts: dict = {}
    sites_used = args.sites if args.sites is not None else 3
    for decl in decls:
        settings = dict(decl.settings)
        sites = args.sites
        if sites is None:
            sites = int(settings.get("sites", 3))
        spec = verify.CheckSpec(
            sites=sites, mode=args.mode, seed=args.seed,
            pt_symbolic=(args.pt == "symbolic"), e_order=args.e_order,
            allow_large=args.allow_large)
        key = (spec.sites, spec.mode, spec.seed, spec.pt_symbolic, spec.e_order)
        if key not in contexts:
            contexts[key] = verify.Context(spec)
        results.append(verify.run_check(decl.id, spec, contexts[key]))
    report = verify.Report(suite_name, args.mode, args.seed, sites_used, results)
    sys.stdout.write(report.render_text())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(timings=args.timings))
    return 0 if report.all_pass else 1


def resolve_emit_label(label: str, sites: int):
    parts = label.split(".")
    if parts[0] in PSI_PREFIXES and len(parts) == 2:
        algebra = PSI_PREFIXES[parts[0]]
        if parts[1] not in co.GENERATORS[algebra]:
            raise QonsagerError(f"unknown generator {parts[1]!r} of {algebra}")
        return chain_operator(co.psi_image(algebra, parts[1]), sites,
                              provenance=label)
    if parts[0] == "hamiltonian" and len(parts) == 2:
        case = parts[1]
        if case not in verify.BOUNDARY_CASES:
            raise QonsagerError(f"unknown boundary case {case!r}")
        pin = verify.BOUNDARY_CASES[case][1]

        def val(name):
            return _const(pin[name]) if name in pin else var(name)

        params = BoundaryParams(val("kp"), val("km"), val("ep"), val("em"))
        return hamiltonian(sites, params)
    if parts[0] == "descendant" and len(parts) == 3:
        name, form = parts[1], parts[2]
        d = co.descendant(name, form)
        return chain_operator(d.element, sites, provenance=label)
    raise QonsagerError(f"cannot resolve emit label {label!r}")


def _const(v):
    return rat(v)


def cmd_emit(args) -> int:
    op = resolve_emit_label(args.label, args.sites)
    doc = matrix_to_coords(op)
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_list(args) -> int:
    for cid in verify.catalog_ids(include_controls=True):
        kind = "control (must fail)" if cid.startswith("control.") else "check"
        sys.stdout.write(f"{cid:36s} {kind}\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "emit":
            return cmd_emit(args)
        return cmd_list(args)
    except (dsl.ParseError, dsl.BindError, QonsagerError, FeasibilityExceeded,
            OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
