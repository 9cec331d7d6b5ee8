"""Parametric gatecrasher scenario: generator, closed-form oracle, study suite.

N attendees, exactly N-1 of whom crashed the gate; the statistical evidence is
the sentence "exactly N-1 of g_1..g_N".  Suspect 1 is on trial.  Variant v1
pits the bare accusation {g1} against the bare denial {!g1}; v2 strengthens
the accusation to {g1, e}; bullet is v2 closed under commitment, which drags
in every other g_k and collapses against the evidence.

Closed forms under the uniform prior:
    posterior   P(g1 | e)          = (N-1)/N
    likelihood  P(e | g1)          = (N-1)/2^(N-1)
    cross       P(g2 | e, g1)      = (N-2)/(N-1)
    bullet      P(g1 & e & ... )   = 0 given e
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .casefile import (
    ACCUSING,
    DEFENDING,
    GAP_COMMITMENT,
    VARIANT_EVIDENTIAL,
    CaseModel,
    GuiltDef,
    Narration,
    PriorSpec,
    SearchConfig,
    case_to_document,
    default_suspended,
)
from .evaluator import FAIL, PASS, Evaluator, Verdict3
from .formula import (
    Atom,
    EvidenceLabel,
    Formula,
    GuiltConst,
    NarrationLabel,
    Not,
    conjoin,
    disjoin,
    render_formula,
)
from .worldmodel import Thresholds

V1 = "v1"
V2 = "v2"
BULLET = "bullet"
VARIANTS = (V1, V2, BULLET)

ENUMERATE = "enumerate"
ANALYTIC = "analytic"

QUERIES = ("posterior", "likelihood", "cross", "bullet")

ACCUSER_ID = "1"
DEFENDER_ID = "2"


@dataclass(frozen=True)
class GatecrasherSpec:
    n: int
    variant: str = V1
    mode: str = ENUMERATE
    thresholds: Thresholds = Thresholds()
    atom_bound: int = 16

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least two attendees")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.mode not in (ENUMERATE, ANALYTIC):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == ENUMERATE and self.n > self.atom_bound:
            raise ValueError(
                f"enumerate mode supports at most {self.atom_bound} attendees")
        if self.mode == ANALYTIC and self.n > 10 ** 6:
            raise ValueError("analytic mode supports at most 10^6 attendees")


def all_but_one_formula(atoms: list[Formula]) -> Formula:
    """Exactly len(atoms)-1 of the atoms are true, as an explicit disjunction."""
    disjuncts = []
    for i, missing in enumerate(atoms):
        parts = [Not(a) if a is missing else a for a in atoms]
        disjuncts.append(conjoin(parts))
    return disjoin(disjuncts)


def generate_case(spec: GatecrasherSpec) -> CaseModel:
    """The scenario as a standard case model (enumerate mode only)."""
    if spec.mode != ENUMERATE:
        raise ValueError("only enumerate mode produces a case model")
    names = [f"g{i}" for i in range(1, spec.n + 1)]
    g_atoms = [Atom(name) for name in names]
    e = all_but_one_formula(g_atoms)
    universe: tuple[Formula, ...] = (e, *g_atoms)
    g1 = g_atoms[0]

    if spec.variant == V1:
        accusing = (g1,)
    elif spec.variant == V2:
        accusing = (g1, e)
    else:
        accusing = (g1, e) + tuple(g_atoms[1:])
    narrations = (
        Narration(id=ACCUSER_ID, side=ACCUSING, content=accusing),
        Narration(id=DEFENDER_ID, side=DEFENDING, content=(Not(g1),)),
    )
    guilt = GuiltDef(constant="G", conjuncts=(g1,))
    suspended = default_suspended(names, universe, narrations, guilt)
    suspended = frozenset(suspended | set(g_atoms))
    return CaseModel(
        atoms=tuple(names),
        guilt=guilt,
        universe_sentences=universe,
        evidence=(e,),
        narrations=narrations,
        suspended=suspended,
        prior=PriorSpec(),
        thresholds=spec.thresholds,
        search=SearchConfig(max_disjunction=2, gap_mode=GAP_COMMITMENT,
                            commitment_variant=VARIANT_EVIDENTIAL),
    )


def generate_document(spec: GatecrasherSpec) -> dict:
    return case_to_document(generate_case(spec))


def analytic_value(n: int, query: str) -> Fraction:
    """Closed-form value of one of the four scenario queries."""
    if n < 2:
        raise ValueError("need at least two attendees")
    if query == "posterior":
        return Fraction(n - 1, n)
    if query == "likelihood":
        return Fraction(n - 1, 2 ** (n - 1))
    if query == "cross":
        return Fraction(n - 2, n - 1)
    if query == "bullet":
        return Fraction(0)
    raise ValueError(f"unknown query {query!r}")


def engine_value(n: int, query: str) -> Fraction:
    """The same four queries computed through the full engine."""
    if query == "bullet":
        case = generate_case(GatecrasherSpec(n=n, variant=BULLET))
        ev = Evaluator(case)
        content = conjoin(case.narration(ACCUSER_ID).content)
        sv = ev.p_variant("evidential", content)
    else:
        case = generate_case(GatecrasherSpec(n=n, variant=V1))
        ev = Evaluator(case)
        g1 = Atom("g1")
        e = case.evidence[0]
        if query == "posterior":
            sv = ev.p_variant("evidential", g1)
        elif query == "likelihood":
            sv = ev.p_variant("play-along", e, narration_id=ACCUSER_ID)
        elif query == "cross":
            sv = ev.p_variant("evidential", Atom("g2"), extra=(g1,))
        else:
            raise ValueError(f"unknown query {query!r}")
    if not sv.defined:
        raise ValueError(f"query {query} came back undefined: {sv}")
    return sv.value


def smallest_convincing_crowd(s: Fraction) -> int:
    """Least N with (N-1)/N >= s: any plausibility threshold is beaten by size."""
    return max(2, math.ceil(Fraction(1) / (1 - s)))


@dataclass(frozen=True)
class SuiteReport:
    """Reproducible study of the scenario at one crowd size."""

    n: int
    thresholds: Thresholds
    threshold_escalation: dict
    prior_sensitivity: dict
    unexplained_evidence: dict
    commitment_gap: dict
    overcommitted_narration: dict
    commitment_closure: list[str]
    verdicts: dict

    def to_dict(self) -> dict:
        from . import __version__

        thr = self.thresholds
        return {
            "engine": {"name": "narrcred", "version": __version__},
            "n": self.n,
            "thresholds": {
                "a": f"{thr.a.numerator}/{thr.a.denominator}",
                "s": f"{thr.s.numerator}/{thr.s.denominator}",
                "r": f"{thr.r.numerator}/{thr.r.denominator}",
                "n": f"{thr.n.numerator}/{thr.n.denominator}",
            },
            "threshold_escalation": self.threshold_escalation,
            "prior_sensitivity": self.prior_sensitivity,
            "unexplained_evidence": self.unexplained_evidence,
            "commitment_gap": self.commitment_gap,
            "overcommitted_narration": self.overcommitted_narration,
            "commitment_closure": self.commitment_closure,
            "verdicts": self.verdicts,
        }

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"gatecrasher suite at n={d['n']}"]
        thr = d["thresholds"]
        lines.append(
            f"thresholds: a={thr['a']} s={thr['s']} r={thr['r']} n={thr['n']}")
        te = d["threshold_escalation"]
        lines.append(
            f"threshold_escalation: crowd of {te['crowd']} pushes the posterior "
            f"to {te['posterior']} >= s")
        ps = d["prior_sensitivity"]
        lines.append(
            f"prior_sensitivity: illustrative reweight {ps['weight']} on g1 moves "
            f"the posterior from {ps['uniform_posterior']} to {ps['reweighted_posterior']}")
        ue = d["unexplained_evidence"]
        lines.append(
            f"unexplained_evidence: v1 explains_evidence={ue['v1']} "
            f"(value {ue['v1_value']}), v2 explains_evidence={ue['v2']}")
        cg = d["commitment_gap"]
        lines.append(
            f"commitment_gap: v2 gap={cg['status']} witness={cg['witness']} "
            f"value={cg['value']}")
        oc = d["overcommitted_narration"]
        lines.append(
            f"overcommitted_narration: bullet initial_plausibility={oc['status']} "
            f"value={oc['value']}")
        lines.append(
            "commitment_closure: " + ", ".join(d["commitment_closure"]))
        v = d["verdicts"]
        lines.append(
            f"beyond_reasonable_doubt: v1={v['v1']} v2={v['v2']} bullet={v['bullet']}")
        return "\n".join(lines) + "\n"


def run_suite(n: int, thresholds: Optional[Thresholds] = None) -> SuiteReport:
    """Evaluate all three variants at crowd size n and collect the findings."""
    thresholds = thresholds or Thresholds()
    cases = {
        variant: generate_case(GatecrasherSpec(n=n, variant=variant,
                                               thresholds=thresholds))
        for variant in VARIANTS
    }
    evaluators = {variant: Evaluator(case) for variant, case in cases.items()}

    crowd = smallest_convincing_crowd(thresholds.s)
    posterior = analytic_value(crowd, "posterior")
    escalation = {
        "crowd": crowd,
        "posterior": f"{posterior.numerator}/{posterior.denominator}",
        "beats_s": posterior >= thresholds.s,
    }

    # Illustrative only: a non-uniform prior detaches the credence from the
    # headcount; the weight is not a recommendation.
    demo_weight = Fraction(1, 100)
    uniform = analytic_value(n, "posterior")
    rew = demo_weight * (n - 1) / (demo_weight * (n - 1) + 1)
    prior_sensitivity = {
        "weight": f"{demo_weight.numerator}/{demo_weight.denominator}",
        "uniform_posterior": f"{uniform.numerator}/{uniform.denominator}",
        "reweighted_posterior": f"{rew.numerator}/{rew.denominator}",
        "below_s": rew < thresholds.s,
    }

    v1_explains = evaluators[V1].explains_evidence_accusing(ACCUSER_ID)
    v2_explains = evaluators[V2].explains_evidence_accusing(ACCUSER_ID)
    v1_value = v1_explains.witnesses[0].value
    unexplained = {
        "v1": v1_explains.status,
        "v1_value": None if v1_value is None
        else f"{v1_value.numerator}/{v1_value.denominator}",
        "v2": v2_explains.status,
    }

    gap = evaluators[V2].gap(ACCUSER_ID, mode=GAP_COMMITMENT)
    gap_witness = gap.witnesses[0]
    commitment_gap = {
        "status": gap.status,
        "witness": " v ".join(gap_witness.formulas) if gap_witness.formulas else None,
        "value": None if gap_witness.value is None
        else f"{gap_witness.value.numerator}/{gap_witness.value.denominator}",
    }

    bullet_initial = evaluators[BULLET].wellformedness()["initial_plausibility"]
    bullet_wit = next(
        (w for w in bullet_initial.witnesses if w.note == f"narration {ACCUSER_ID}"),
        bullet_initial.witnesses[0],
    )
    overcommitted = {
        "status": bullet_initial.status,
        "value": None if bullet_wit.value is None
        else f"{bullet_wit.value.numerator}/{bullet_wit.value.denominator}",
    }

    closure = evaluators[V2].commitment_closure(ACCUSER_ID)
    closure_texts = [render_formula(p) for p in closure.content]

    verdicts = {
        variant: evaluators[variant].beyond_reasonable_doubt().status
        for variant in VARIANTS
    }

    return SuiteReport(
        n=n,
        thresholds=thresholds,
        threshold_escalation=escalation,
        prior_sensitivity=prior_sensitivity,
        unexplained_evidence=unexplained,
        commitment_gap=commitment_gap,
        overcommitted_narration=overcommitted,
        commitment_closure=closure_texts,
        verdicts=verdicts,
    )
