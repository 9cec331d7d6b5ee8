"""Narration evaluation: credence variants, well-formedness, criteria, verdict.

Criteria are lifted to three-valued verdicts over partial credences: a direct
threshold comparison with an undefined side yields UNDETERMINED, while the
existential searches (missing evidence, gaps, destabilizing-evidence
candidates, relevance probes) skip candidates whose query is undefined -- an
undefined expectation cannot witness a complaint -- and report how many were
skipped.  A PASS or FAIL verdict therefore never rests on an undefined value.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .casefile import (
    ACCUSING,
    DEFENDING,
    GAP_COMMITMENT,
    GAP_DIRECT,
    VARIANT_F_EXTENDED,
    CaseModel,
    Narration,
    bundle,
    partial_credence,
    validate_case,
    with_evidence,
)
from .formula import (
    EvidenceLabel,
    Formula,
    GuiltConst,
    NarrationLabel,
    Not,
    conjoin,
    disjoin,
    render_formula,
)
from .worldmodel import StanceValue

PASS = "PASS"
FAIL = "FAIL"
UNDETERMINED = "UNDETERMINED"

_STATUS = {True: PASS, False: FAIL, None: UNDETERMINED}


def _kleene_and(values: Iterable[Optional[bool]]) -> Optional[bool]:
    out: Optional[bool] = True
    for v in values:
        if v is False:
            return False
        if v is None:
            out = None
    return out


def _kleene_or(values: Iterable[Optional[bool]]) -> Optional[bool]:
    out: Optional[bool] = False
    for v in values:
        if v is True:
            return True
        if v is None:
            out = None
    return out


def _ge(sv: StanceValue, bound: Fraction) -> Optional[bool]:
    if not sv.defined:
        return None
    return sv.value >= bound


@dataclass(frozen=True)
class Witness:
    formulas: tuple[str, ...] = ()
    value: Optional[Fraction] = None
    bundle: Optional[str] = None
    note: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "formulas": list(self.formulas),
            "value": None if self.value is None
            else f"{self.value.numerator}/{self.value.denominator}",
            "bundle": self.bundle,
            "note": self.note,
        }


@dataclass(frozen=True)
class Verdict3:
    status: str
    witnesses: tuple[Witness, ...] = ()

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _verdict(tri: Optional[bool], witnesses: Sequence[Witness]) -> Verdict3:
    return Verdict3(status=_STATUS[tri], witnesses=tuple(witnesses))


@dataclass(frozen=True)
class RelevanceResult:
    sentences: tuple[Formula, ...]
    minimal_sets: tuple[tuple[Formula, ...], ...]


class SearchBoundError(ValueError):
    pass


_RELEVANCE_SET_CAP = 20000


class Evaluator:
    """Evaluates one case; results are pure functions of the case model."""

    def __init__(self, case: CaseModel):
        self.case = case
        self.pc = partial_credence(case)
        self._credence_cache: dict = {}
        self._relevance: Optional[RelevanceResult] = None
        self._antecedent_cache: dict = {}

    # -- credence interface ------------------------------------------------

    def p_variant(self, tag: str, f: Formula, extra: Sequence[Formula] = (),
                  narration_id: Optional[str] = None) -> StanceValue:
        """Credence of f under one conditioning-table row plus extra premises."""
        b = bundle(self.case, tag, narration_id)
        gamma = b.members + tuple(extra)
        key = (f, frozenset(gamma))
        hit = self._credence_cache.get(key)
        if hit is None:
            hit = self.pc.credence(f, gamma)
            self._credence_cache[key] = hit
        return hit

    def _content(self, narration: Narration) -> Formula:
        return conjoin(narration.content)

    # -- well-formedness ----------------------------------------------------

    def wellformedness(self) -> dict[str, Verdict3]:
        case = self.case
        thr = case.thresholds
        out: dict[str, Verdict3] = {}

        tris, wits = [], []
        pairs = list(combinations(case.narrations, 2))
        for a, b in pairs:
            f = Not(conjoin((self._content(a), self._content(b))))
            sv = self.p_variant("full", f)
            tris.append(_ge(sv, thr.a))
            wits.append(Witness(formulas=(render_formula(f),), value=sv.value,
                                bundle="full", note=f"narrations {a.id},{b.id}"))
        if not pairs:
            wits.append(Witness(note="fewer than two narrations"))
        out["exclusion"] = _verdict(_kleene_and(tris), wits)

        tris, wits = [], []
        for n in case.narrations:
            target: Formula = GuiltConst(case.guilt.constant)
            if n.side == DEFENDING:
                target = Not(target)
            sv = self.p_variant("f-extended", target, narration_id=n.id)
            tris.append(_ge(sv, thr.a))
            wits.append(Witness(formulas=(render_formula(target),), value=sv.value,
                                bundle="f-extended", note=f"narration {n.id}"))
        out["decision"] = _verdict(_kleene_and(tris), wits)

        tris, wits = [], []
        for n in case.narrations:
            f = self._content(n)
            sv = self.p_variant("evidential", f)
            tris.append(_ge(sv, thr.n))
            wits.append(Witness(formulas=(render_formula(f),), value=sv.value,
                                bundle="evidential", note=f"narration {n.id}"))
        out["initial_plausibility"] = _verdict(_kleene_and(tris), wits)

        f = disjoin(self._content(n) for n in case.narrations)
        sv = self.p_variant("full", f)
        out["exhaustion"] = _verdict(
            _ge(sv, thr.s),
            [Witness(formulas=(render_formula(f),), value=sv.value, bundle="full")],
        )
        return out

    # -- explaining the evidence ---------------------------------------------

    def explains_evidence_accusing(self, narration_id: str) -> Verdict3:
        """Every evidence item the narration does not exclude as evidence must
        be strongly plausible when playing along with the narration."""
        n = self.case.narration(narration_id)
        if n.side != ACCUSING:
            raise ValueError(f"narration {narration_id} is not accusing")
        thr = self.case.thresholds
        tris, wits = [], []
        for e in self.case.evidence:
            excl = self.p_variant("play-along", Not(EvidenceLabel(e)),
                                  narration_id=narration_id)
            if excl.defined and excl.value >= thr.s:
                wits.append(Witness(formulas=(render_formula(e),), value=excl.value,
                                    bundle="play-along", note="excluded as evidence"))
                tris.append(True)
                continue
            sv = self.p_variant("play-along", e, narration_id=narration_id)
            tris.append(_ge(sv, thr.s))
            wits.append(Witness(formulas=(render_formula(e),), value=sv.value,
                                bundle="play-along"))
        if not self.case.evidence:
            wits.append(Witness(note="no evidence"))
        return _verdict(_kleene_and(tris), wits)

    def explains_evidence_defending(self, narration_id: str) -> Verdict3:
        """Evidence that confirms some accusing narration must not be rejected
        when playing along with the defending narration."""
        n = self.case.narration(narration_id)
        if n.side != DEFENDING:
            raise ValueError(f"narration {narration_id} is not defending")
        thr = self.case.thresholds
        accusers = self.case.accusing()
        tris, wits = [], []
        for e in self.case.evidence:
            sv = self.p_variant("play-along", e, narration_id=narration_id)
            if sv.defined and sv.value >= thr.r:
                tris.append(True)
                wits.append(Witness(formulas=(render_formula(e),), value=sv.value,
                                    bundle="play-along"))
                continue
            trigger: Optional[bool] = False
            for acc in accusers:
                content = self._content(acc)
                given = self.pc.credence(content, (e,))
                bare = self.pc.credence(content, ())
                if given.defined and bare.defined:
                    if given.value > bare.value:
                        trigger = True
                        break
                else:
                    trigger = None
            if trigger is False:
                tris.append(True)
                wits.append(Witness(formulas=(render_formula(e),),
                                    note="does not confirm any accusing narration"))
            elif trigger is True:
                tris.append(_ge(sv, thr.r))
                wits.append(Witness(formulas=(render_formula(e),), value=sv.value,
                                    bundle="play-along", note="confirms an accusing narration"))
            else:
                tris.append(None)
                wits.append(Witness(formulas=(render_formula(e),),
                                    note="confirmation comparison undefined"))
        if not self.case.evidence:
            wits.append(Witness(note="no evidence"))
        return _verdict(_kleene_and(tris), wits)

    def explains_evidence(self, narration_id: str) -> Verdict3:
        n = self.case.narration(narration_id)
        if n.side == ACCUSING:
            return self.explains_evidence_accusing(narration_id)
        return self.explains_evidence_defending(narration_id)

    # -- searches -------------------------------------------------------------

    def _subsets(self, candidates: Sequence[Formula]):
        for size in range(1, self.case.search.max_disjunction + 1):
            yield from combinations(candidates, size)

    def missing_evidence(self, narration_id: str) -> Verdict3:
        """PASS when some bounded disjunction of non-evidence labels is strongly
        expected under the narration together with the actual evidence."""
        case = self.case
        thr = case.thresholds
        evidence = set(case.evidence)
        candidates = [phi for phi in case.universe_sentences if phi not in evidence]
        skipped = 0
        best: Optional[Witness] = None
        for subset in self._subsets(candidates):
            query = disjoin(EvidenceLabel(phi) for phi in subset)
            sv = self.p_variant("n-extended", query, narration_id=narration_id)
            if not sv.defined:
                skipped += 1
                continue
            if sv.value >= thr.s:
                return Verdict3(PASS, (
                    Witness(formulas=tuple(render_formula(p) for p in subset),
                            value=sv.value, bundle="n-extended"),
                ))
            if best is None or sv.value > best.value:
                best = Witness(formulas=tuple(render_formula(p) for p in subset),
                               value=sv.value, bundle="n-extended")
        note = f"no expectable-evidence candidate reaches s; skipped {skipped} undefined"
        if best is None:
            return Verdict3(FAIL, (Witness(note=note),))
        return Verdict3(FAIL, (replace_witness_note(best, note),))

    def gap(self, narration_id: str, mode: Optional[str] = None) -> Verdict3:
        """PASS when the narration omits a bounded disjunction it should have
        chosen from: strongly plausible given everything plus the narration,
        and expected to be part of it (directly, or through commitment)."""
        case = self.case
        mode = mode or case.search.gap_mode
        if mode not in (GAP_DIRECT, GAP_COMMITMENT):
            raise ValueError(f"unknown gap mode {mode!r}")
        thr = case.thresholds
        n = case.narration(narration_id)
        content = set(n.content)
        candidates = [phi for phi in case.universe_sentences if phi not in content]
        skipped = 0
        best: Optional[Witness] = None

        def keep_best(subset, sv1, note):
            nonlocal best
            if best is None or sv1.value > best.value:
                best = Witness(formulas=tuple(render_formula(p) for p in subset),
                               value=sv1.value, bundle="f-extended", note=note)

        for subset in self._subsets(candidates):
            sv1 = self.p_variant("f-extended", disjoin(subset),
                                 narration_id=narration_id)
            if not sv1.defined:
                skipped += 1
                continue
            if sv1.value < thr.s:
                keep_best(subset, sv1, None)
                continue
            if mode == GAP_DIRECT:
                q = disjoin(NarrationLabel(narration_id, phi) for phi in subset)
                sv2 = self.p_variant("e-extended", q, narration_id=narration_id)
                if not sv2.defined:
                    skipped += 1
                    continue
                if sv2.value >= thr.s:
                    return Verdict3(PASS, (
                        Witness(formulas=tuple(render_formula(p) for p in subset),
                                value=sv1.value, bundle="f-extended",
                                note=f"narration-label credence {sv2}"),
                    ))
                keep_best(subset, sv1, "omitted claim not expected in the narration")
            else:
                if all(self._committed(narration_id, phi) for phi in subset):
                    return Verdict3(PASS, (
                        Witness(formulas=tuple(render_formula(p) for p in subset),
                                value=sv1.value, bundle="f-extended",
                                note="commitment discharges the expectation clause"),
                    ))
                keep_best(subset, sv1, "no commitment to the omitted claim")
        note = f"no omitted claim qualifies; skipped {skipped} undefined"
        if best is None:
            return Verdict3(FAIL, (Witness(note=note),))
        return Verdict3(FAIL, (replace_witness_note(best, note),))

    # -- relevance and commitment ----------------------------------------------

    def relevant_sentences(self) -> RelevanceResult:
        """Sentences belonging to some minimal set that is consistent with the
        evidential background and shifts some narration's credence."""
        if self._relevance is not None:
            return self._relevance
        case = self.case
        bg = bundle(case, "evidential").members
        literals: list[tuple[Formula, Formula]] = []
        for phi in case.universe_sentences:
            literals.append((phi, phi))
            literals.append((phi, Not(phi)))
        bound = max(case.search.max_disjunction, 1)
        total = sum(1 for _ in combinations(literals, min(bound, len(literals))))
        if total > _RELEVANCE_SET_CAP:
            raise SearchBoundError("relevance search bound exceeded")

        contents = [self._content(n) for n in case.narrations]
        base_vals = [self.pc.credence(c, bg) for c in contents]

        minimal: list[tuple[Formula, ...]] = []
        minimal_keys: list[frozenset[Formula]] = []
        sentences: set[Formula] = set()
        for size in range(1, bound + 1):
            for combo in combinations(literals, size):
                sents = [s for s, _ in combo]
                if len(set(sents)) != len(sents):
                    continue  # phi together with its own negation
                lits = tuple(l for _, l in combo)
                key = frozenset(lits)
                if any(mk < key for mk in minimal_keys):
                    continue  # a proper subset is already relevant
                if not self.pc.distribution.has_positive_mass(bg + lits):
                    continue
                shifted = False
                for c, base in zip(contents, base_vals):
                    if not base.defined:
                        continue
                    v = self.pc.credence(c, bg + lits)
                    if v.defined and v.value != base.value:
                        shifted = True
                        break
                if shifted:
                    minimal.append(lits)
                    minimal_keys.append(key)
                    sentences.update(sents)
        ordered = tuple(p for p in case.universe_sentences if p in sentences)
        self._relevance = RelevanceResult(sentences=ordered, minimal_sets=tuple(minimal))
        return self._relevance

    def _antecedent_value(self, f: Formula,
                          narration_id: Optional[str]) -> StanceValue:
        variant = self.case.search.commitment_variant
        if variant == VARIANT_F_EXTENDED:
            key = (f, variant, narration_id)
            if key not in self._antecedent_cache:
                self._antecedent_cache[key] = self.p_variant(
                    "f-extended", f, narration_id=narration_id)
        else:
            key = (f, variant, None)
            if key not in self._antecedent_cache:
                self._antecedent_cache[key] = self.p_variant("evidential", f)
        return self._antecedent_cache[key]

    def _committed(self, narration_id: str, phi: Formula) -> bool:
        """Commitment antecedent: phi is relevant and at least as credible as
        the guilt statement under the configured conditioning."""
        if phi not in set(self.relevant_sentences().sentences):
            return False
        av = self._antecedent_value(phi, narration_id)
        gv = self._antecedent_value(GuiltConst(self.case.guilt.constant), narration_id)
        return av.defined and gv.defined and av.value >= gv.value

    def commitment_violations(self, narration_id: str) -> tuple[Formula, ...]:
        """Relevant sentences the narration is committed to but whose narration
        label is not strongly plausible (or not even defined)."""
        n = self.case.narration(narration_id)
        if n.side != ACCUSING:
            raise ValueError(f"narration {narration_id} is not accusing")
        thr = self.case.thresholds
        out = []
        for phi in self.case.universe_sentences:
            if not self._committed(narration_id, phi):
                continue
            lv = self.p_variant("e-extended", NarrationLabel(narration_id, phi),
                                narration_id=narration_id)
            if not (lv.defined and lv.value >= thr.s):
                out.append(phi)
        return tuple(out)

    def commitment_closure(self, narration_id: str) -> Narration:
        """Least extension of the narration's content closed under commitment."""
        case = self.case
        ev: Evaluator = self
        while True:
            violations = ev.commitment_violations(narration_id)
            missing = [p for p in violations
                       if p not in set(case.narration(narration_id).content)]
            if not missing:
                return case.narration(narration_id)
            narrations = tuple(
                replace(n, content=n.content + tuple(missing))
                if n.id == narration_id else n
                for n in case.narrations
            )
            case = replace(case, narrations=narrations)
            ev = Evaluator(case)

    # -- domination, resiliency, doubt, verdict ---------------------------------

    def dominates(self, narration_id: str) -> Verdict3:
        """No missing evidence, no gap, maximal full-bundle credence among
        accusers, and strongly plausible overall."""
        n = self.case.narration(narration_id)
        if n.side != ACCUSING:
            raise ValueError(f"narration {narration_id} is not accusing")
        thr = self.case.thresholds
        tris, wits = [], []

        me = self.missing_evidence(narration_id)
        tris.append(me.status != PASS)
        if me.status == PASS:
            wits.append(replace_witness_note(me.witnesses[0], "missing evidence"))

        gap = self.gap(narration_id)
        tris.append(gap.status != PASS)
        if gap.status == PASS:
            wits.append(replace_witness_note(gap.witnesses[0], "gap"))

        mine = self.p_variant("full", self._content(n))
        wits.append(Witness(formulas=(render_formula(self._content(n)),),
                            value=mine.value, bundle="full", note="own credence"))
        for other in self.case.accusing():
            if other.id == narration_id:
                continue
            theirs = self.p_variant("full", self._content(other))
            if mine.defined and theirs.defined:
                tris.append(mine.value >= theirs.value)
            else:
                tris.append(None)
            if not (mine.defined and theirs.defined) or mine.value < theirs.value:
                wits.append(Witness(formulas=(render_formula(self._content(other)),),
                                    value=theirs.value, bundle="full",
                                    note=f"rival {other.id}"))
        tris.append(_ge(mine, thr.s))
        return _verdict(_kleene_and(tris), wits)

    def resilient(self, narration_id: str) -> Verdict3:
        """Domination survives adding any non-negligible potential evidence."""
        dom = self.dominates(narration_id)
        if dom.status != PASS:
            raise ValueError(
                f"narration {narration_id} does not dominate; resiliency undefined")
        thr = self.case.thresholds
        evidence = set(self.case.evidence)
        skipped = 0
        undetermined: list[Witness] = []
        for phi in self.case.universe_sentences:
            if phi in evidence:
                continue
            sv = self.p_variant("n-full", EvidenceLabel(phi))
            if not sv.defined:
                skipped += 1
                continue
            if sv.value < thr.n:
                continue
            modified = with_evidence(self.case, phi)
            verdict = Evaluator(modified).dominates(narration_id)
            if verdict.status == FAIL:
                return Verdict3(FAIL, (
                    Witness(formulas=(render_formula(phi),), value=sv.value,
                            bundle="n-full", note="domination lost if admitted"),
                ))
            if verdict.status == UNDETERMINED:
                undetermined.append(Witness(
                    formulas=(render_formula(phi),), value=sv.value,
                    bundle="n-full", note="re-check undetermined"))
        if undetermined:
            return Verdict3(UNDETERMINED, tuple(undetermined))
        return Verdict3(PASS, (
            Witness(note=f"no destabilizing candidate; skipped {skipped} undefined"),
        ))

    def reasonable_doubt(self, narration_id: str) -> Verdict3:
        """Gap-free defending narration that has not been rejected."""
        n = self.case.narration(narration_id)
        if n.side != DEFENDING:
            raise ValueError(f"narration {narration_id} is not defending")
        thr = self.case.thresholds
        gap = self.gap(narration_id)
        sv = self.p_variant("full", self._content(n))
        wits = [
            Witness(formulas=(render_formula(self._content(n)),), value=sv.value,
                    bundle="full", note="credence vs r"),
        ]
        if gap.status == PASS:
            wits.append(replace_witness_note(gap.witnesses[0], "gap"))
        tri = _kleene_and([gap.status != PASS, _ge(sv, thr.r)])
        return _verdict(tri, wits)

    def beyond_reasonable_doubt(self) -> Verdict3:
        """Some accusing narration dominates and is resilient, and no defending
        narration raises reasonable doubt."""
        exists: list[Optional[bool]] = []
        wits: list[Witness] = []
        for n in self.case.accusing():
            dom = self.dominates(n.id)
            if dom.status == PASS:
                res = self.resilient(n.id)
                tri = {PASS: True, FAIL: False, UNDETERMINED: None}[res.status]
                exists.append(tri)
                wits.append(Witness(note=f"narration {n.id}: dominates, resilient={res.status}"))
            else:
                exists.append({FAIL: False, UNDETERMINED: None}[dom.status])
                wits.append(Witness(note=f"narration {n.id}: dominates={dom.status}"))
        exists_tri = _kleene_or(exists)

        clear: list[Optional[bool]] = []
        for n in self.case.defending():
            rd = self.reasonable_doubt(n.id)
            clear.append({PASS: False, FAIL: True, UNDETERMINED: None}[rd.status])
            wits.append(Witness(note=f"narration {n.id}: reasonable_doubt={rd.status}"))
        return _verdict(_kleene_and([exists_tri, _kleene_and(clear)]), wits)

    # -- full report -------------------------------------------------------------

    def evaluate(self) -> "EvaluationReport":
        case = self.case
        wf = self.wellformedness()
        entries = []
        for n in case.narrations:
            entry = {
                "id": n.id,
                "side": n.side,
                "explains_evidence": self.explains_evidence(n.id),
                "missing_evidence": self.missing_evidence(n.id),
                "gap": self.gap(n.id),
            }
            if n.side == ACCUSING:
                dom = self.dominates(n.id)
                entry["dominates"] = dom
                entry["resilient"] = self.resilient(n.id) if dom.status == PASS else None
            else:
                entry["reasonable_doubt"] = self.reasonable_doubt(n.id)
            entries.append(entry)
        brd = self.beyond_reasonable_doubt()
        notes = (
            f"disjunctive searches bounded by max_disjunction={case.search.max_disjunction}",
            "potential-evidence and relevance searches range over the declared universe",
            f"gap_mode={case.search.gap_mode}",
            f"commitment_variant={case.search.commitment_variant}",
        )
        warnings = tuple(str(d) for d in validate_case(case) if d.severity == "warning")
        return EvaluationReport(
            case=case,
            wellformedness=wf,
            narration_entries=tuple(entries),
            brd=brd,
            notes=notes,
            warnings=warnings,
        )


def replace_witness_note(w: Witness, note: str) -> Witness:
    return Witness(formulas=w.formulas, value=w.value, bundle=w.bundle, note=note)


@dataclass(frozen=True)
class EvaluationReport:
    """Per-criterion verdicts plus the final verdict, deterministically ordered."""

    case: CaseModel
    wellformedness: dict[str, Verdict3]
    narration_entries: tuple[dict, ...]
    brd: Verdict3
    notes: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def wellformed(self) -> bool:
        return all(v.status == PASS for v in self.wellformedness.values())

    def to_dict(self) -> dict:
        from . import __version__

        thr = self.case.thresholds
        narrations = []
        for entry in self.narration_entries:
            row: dict = {"id": entry["id"], "side": entry["side"]}
            for key in ("explains_evidence", "missing_evidence", "gap",
                        "dominates", "resilient", "reasonable_doubt"):
                if key in entry:
                    v = entry[key]
                    row[key] = v.to_dict() if v is not None else None
            narrations.append(row)
        return {
            "engine": {"name": "narrcred", "version": __version__},
            "thresholds": {
                "a": f"{thr.a.numerator}/{thr.a.denominator}",
                "s": f"{thr.s.numerator}/{thr.s.denominator}",
                "r": f"{thr.r.numerator}/{thr.r.denominator}",
                "n": f"{thr.n.numerator}/{thr.n.denominator}",
            },
            "search": {
                "max_disjunction": self.case.search.max_disjunction,
                "gap_mode": self.case.search.gap_mode,
                "commitment_variant": self.case.search.commitment_variant,
            },
            "wellformedness": {k: v.to_dict() for k, v in self.wellformedness.items()},
            "wellformed": self.wellformed,
            "narrations": narrations,
            "beyond_reasonable_doubt": self.brd.to_dict(),
            "notes": list(self.notes),
            "warnings": list(self.warnings),
        }

    def to_text(self) -> str:
        lines = []
        d = self.to_dict()
        lines.append(f"narrcred {d['engine']['version']} evaluation report")
        thr = d["thresholds"]
        lines.append(
            f"thresholds: a={thr['a']} s={thr['s']} r={thr['r']} n={thr['n']}")
        lines.append(
            f"search: max_disjunction={d['search']['max_disjunction']} "
            f"gap_mode={d['search']['gap_mode']} "
            f"commitment_variant={d['search']['commitment_variant']}")
        lines.append("")
        lines.append("well-formedness:")
        for key in ("exclusion", "decision", "initial_plausibility", "exhaustion"):
            lines.append(f"  {key}: {_verdict_line(self.wellformedness[key])}")
        for entry in self.narration_entries:
            lines.append("")
            lines.append(f"narration {entry['id']} ({entry['side']}):")
            for key in ("explains_evidence", "missing_evidence", "gap",
                        "dominates", "resilient", "reasonable_doubt"):
                if key not in entry:
                    continue
                v = entry[key]
                if v is None:
                    lines.append(f"  {key}: not evaluated (no domination)")
                else:
                    lines.append(f"  {key}: {_verdict_line(v)}")
        lines.append("")
        lines.append(f"beyond_reasonable_doubt: {_verdict_line(self.brd)}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def _verdict_line(v: Verdict3) -> str:
    parts = [v.status]
    for w in v.witnesses[:4]:
        bits = []
        if w.formulas:
            bits.append(" v ".join(w.formulas))
        if w.value is not None:
            bits.append(f"{w.value.numerator}/{w.value.denominator}")
        if w.bundle:
            bits.append(f"@{w.bundle}")
        if w.note:
            bits.append(w.note)
        parts.append("[" + "; ".join(bits) + "]")
    if len(v.witnesses) > 4:
        parts.append(f"(+{len(v.witnesses) - 4} more)")
    return " ".join(parts)


def evaluate_case(case: CaseModel) -> EvaluationReport:
    """One-shot evaluation of a case model."""
    return Evaluator(case).evaluate()
