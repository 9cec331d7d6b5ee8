"""Command-line interface.

Exit codes: 0 the command ran (verdict outcomes are never exit codes),
1 invalid case or bad override, 2 usage error.  Reports go to stdout,
diagnostics to stderr.  Output is byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Optional

from . import __version__
from .casefile import (
    CaseLoadError,
    CaseModel,
    SearchConfig,
    audit_probe,
    case_to_document,
    load_case,
    partial_credence,
    validate_case,
)
from .evaluator import PASS, Evaluator
from .formula import render_formula
from .gatecrasher import (
    ANALYTIC,
    ENUMERATE,
    QUERIES,
    GatecrasherSpec,
    analytic_value,
    generate_document,
    run_suite,
)
from .worldmodel import Thresholds, audit_axioms


def _emit_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _parse_thresholds(text: str) -> Thresholds:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("expected four comma-separated rationals: a,s,r,n")
    def frac(p: str) -> Fraction:
        num, _, den = p.strip().partition("/")
        return Fraction(int(num), int(den)) if den else Fraction(int(num))
    a, s, r, n = (frac(p) for p in parts)
    return Thresholds(a=a, s=s, r=r, n=n)


def _load_with_overrides(args) -> CaseModel:
    with open(args.case, "r", encoding="utf-8") as fh:
        case = load_case(fh.read())
    if args.thresholds:
        case = replace(case, thresholds=_parse_thresholds(args.thresholds))
    search = case.search
    if args.max_disjunction is not None:
        search = replace(search, max_disjunction=args.max_disjunction)
    if args.gap_mode:
        search = replace(search, gap_mode=args.gap_mode)
    if args.commitment_variant:
        search = replace(search, commitment_variant=args.commitment_variant)
    if search is not case.search:
        case = replace(case, search=search)
    errors = [d for d in validate_case(case) if d.severity == "error"]
    if errors:
        raise CaseLoadError(errors)
    return case


def _add_case_options(p: argparse.ArgumentParser):
    p.add_argument("case", help="path to a case document (JSON)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--thresholds", metavar="a,s,r,n",
                   help="override thresholds, each a p/q rational")
    p.add_argument("--max-disjunction", type=int, metavar="K",
                   help="bound for disjunctive searches")
    p.add_argument("--gap-mode", choices=("direct", "commitment"))
    p.add_argument("--commitment-variant", choices=("evidential", "f-extended"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="narrcred",
        description="evaluate competing case narrations with exact partial credences",
    )
    parser.add_argument("--version", action="version", version=f"narrcred {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a case document")
    p.add_argument("case")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("evaluate", help="full evaluation report for a case")
    _add_case_options(p)

    p = sub.add_parser("audit", help="check the credence axioms over the case's probes")
    _add_case_options(p)

    p = sub.add_parser("resiliency", help="domination stability for one narration")
    _add_case_options(p)
    p.add_argument("--narration", required=True, metavar="ID")

    p = sub.add_parser("commitment-close",
                       help="close a narration's content under commitment")
    _add_case_options(p)
    p.add_argument("--narration", required=True, metavar="ID")

    p = sub.add_parser("gatecrasher", help="generate or study the gatecrasher scenario")
    p.add_argument("--n", type=int, required=True, metavar="N")
    p.add_argument("--variant", choices=("v1", "v2", "bullet"), default="v1")
    p.add_argument("--mode", choices=(ENUMERATE, ANALYTIC), default=ENUMERATE)
    p.add_argument("--suite", action="store_true",
                   help="evaluate all variants and report the findings")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--thresholds", metavar="a,s,r,n")
    return parser


def _cmd_validate(args) -> int:
    try:
        with open(args.case, "r", encoding="utf-8") as fh:
            case = load_case(fh.read())
    except FileNotFoundError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1
    except CaseLoadError as exc:
        for d in exc.diagnostics:
            print(str(d), file=sys.stderr)
        return 1
    diagnostics = validate_case(case)
    payload = {
        "valid": True,
        "diagnostics": [
            {"severity": d.severity, "code": d.code, "message": d.message}
            for d in diagnostics
        ],
    }
    if args.format == "json":
        sys.stdout.write(_emit_json(payload))
    else:
        sys.stdout.write("case is valid\n")
        for d in diagnostics:
            sys.stdout.write(f"{d}\n")
    return 0


def _with_case(args, handler) -> int:
    try:
        case = _load_with_overrides(args)
    except FileNotFoundError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1
    except (CaseLoadError, ValueError) as exc:
        if isinstance(exc, CaseLoadError):
            for d in exc.diagnostics:
                print(str(d), file=sys.stderr)
        else:
            print(f"error[override]: {exc}", file=sys.stderr)
        return 1
    return handler(case, args)


def _cmd_evaluate(case: CaseModel, args) -> int:
    report = Evaluator(case).evaluate()
    if args.format == "json":
        sys.stdout.write(_emit_json(report.to_dict()))
    else:
        sys.stdout.write(report.to_text())
    return 0


def _cmd_audit(case: CaseModel, args) -> int:
    report = audit_axioms(partial_credence(case), audit_probe(case))
    if args.format == "json":
        sys.stdout.write(_emit_json(report.to_dict()))
    else:
        d = report.to_dict()
        sys.stdout.write(f"axiom audit: {'ok' if d['ok'] else 'VIOLATIONS'}\n")
        for axiom in sorted(d["checked"]):
            sys.stdout.write(f"  {axiom}: {d['checked'][axiom]} instances\n")
        sys.stdout.write(f"  skipped (zero-mass conditions): {d['skipped']}\n")
        for v in d["violations"]:
            sys.stdout.write(f"  violation[{v['axiom']}]: {v['detail']}\n")
    return 0


def _cmd_resiliency(case: CaseModel, args) -> int:
    ev = Evaluator(case)
    try:
        dom = ev.dominates(args.narration)
    except KeyError as exc:
        print(f"error[narration]: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error[narration]: {exc}", file=sys.stderr)
        return 1
    payload: dict = {"narration": args.narration, "dominates": dom.to_dict()}
    if dom.status == PASS:
        payload["resilient"] = ev.resilient(args.narration).to_dict()
    else:
        payload["resilient"] = None
    if args.format == "json":
        sys.stdout.write(_emit_json(payload))
    else:
        sys.stdout.write(f"narration {args.narration}\n")
        sys.stdout.write(f"  dominates: {dom.status}\n")
        if payload["resilient"] is None:
            sys.stdout.write("  resilient: not evaluated (no domination)\n")
        else:
            sys.stdout.write(f"  resilient: {payload['resilient']['status']}\n")
    return 0


def _cmd_commitment_close(case: CaseModel, args) -> int:
    ev = Evaluator(case)
    try:
        violations = ev.commitment_violations(args.narration)
        closed = ev.commitment_closure(args.narration)
    except (KeyError, ValueError) as exc:
        print(f"error[narration]: {exc}", file=sys.stderr)
        return 1
    payload = {
        "narration": args.narration,
        "violations": [render_formula(p) for p in violations],
        "closed_content": [render_formula(p) for p in closed.content],
    }
    if args.format == "json":
        sys.stdout.write(_emit_json(payload))
    else:
        sys.stdout.write(f"narration {args.narration}\n")
        sys.stdout.write("  violations: " + (", ".join(payload["violations"]) or "none") + "\n")
        sys.stdout.write("  closed content: " + ", ".join(payload["closed_content"]) + "\n")
    return 0


def _cmd_gatecrasher(args) -> int:
    thresholds = Thresholds()
    if args.thresholds:
        try:
            thresholds = _parse_thresholds(args.thresholds)
        except ValueError as exc:
            print(f"error[override]: {exc}", file=sys.stderr)
            return 1
    try:
        if args.suite:
            report = run_suite(args.n, thresholds)
            if args.format == "json":
                sys.stdout.write(_emit_json(report.to_dict()))
            else:
                sys.stdout.write(report.to_text())
            return 0
        if args.mode == ANALYTIC:
            values = {q: analytic_value(args.n, q) for q in QUERIES}
            payload = {
                "n": args.n,
                "mode": ANALYTIC,
                "queries": {
                    q: f"{v.numerator}/{v.denominator}" for q, v in values.items()
                },
            }
            if args.format == "json":
                sys.stdout.write(_emit_json(payload))
            else:
                sys.stdout.write(f"gatecrasher analytic queries at n={args.n}\n")
                for q in QUERIES:
                    sys.stdout.write(f"  {q}: {payload['queries'][q]}\n")
            return 0
        spec = GatecrasherSpec(n=args.n, variant=args.variant, thresholds=thresholds)
        sys.stdout.write(_emit_json(generate_document(spec)))
        return 0
    except ValueError as exc:
        print(f"error[gatecrasher]: {exc}", file=sys.stderr)
        return 1


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return _cmd_validate(args)
    if args.command == "evaluate":
        return _with_case(args, _cmd_evaluate)
    if args.command == "audit":
        return _with_case(args, _cmd_audit)
    if args.command == "resiliency":
        return _with_case(args, _cmd_resiliency)
    if args.command == "commitment-close":
        return _with_case(args, _cmd_commitment_close)
    if args.command == "gatecrasher":
        return _cmd_gatecrasher(args)
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
