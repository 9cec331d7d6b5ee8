"""Exact-rational evaluation of competing case narrations under partial credences."""

__version__ = "0.1.0"

from .casefile import (
    CaseLoadError,
    CaseModel,
    ConditionBundle,
    Narration,
    bundle,
    case_to_document,
    load_case,
    partial_credence,
    validate_case,
    with_evidence,
)
from .evaluator import EvaluationReport, Evaluator, Verdict3, Witness, evaluate_case
from .formula import (
    Formula,
    GuiltDef,
    ParseContext,
    ParseError,
    collect_atoms,
    expand_guilt,
    parse_formula,
    render_formula,
    semantic_status,
)
from .gatecrasher import GatecrasherSpec, analytic_value, generate_case, run_suite
from .worldmodel import (
    Distribution,
    PartialCredence,
    StanceValue,
    Thresholds,
    Universe,
    audit_axioms,
    build_prior,
)

__all__ = [
    "__version__",
    "CaseLoadError",
    "CaseModel",
    "ConditionBundle",
    "Narration",
    "bundle",
    "case_to_document",
    "load_case",
    "partial_credence",
    "validate_case",
    "with_evidence",
    "EvaluationReport",
    "Evaluator",
    "Verdict3",
    "Witness",
    "evaluate_case",
    "Formula",
    "GuiltDef",
    "ParseContext",
    "ParseError",
    "collect_atoms",
    "expand_guilt",
    "parse_formula",
    "render_formula",
    "semantic_status",
    "GatecrasherSpec",
    "analytic_value",
    "generate_case",
    "run_suite",
    "Distribution",
    "PartialCredence",
    "StanceValue",
    "Thresholds",
    "Universe",
    "audit_axioms",
    "build_prior",
]
