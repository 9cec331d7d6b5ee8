"""Case data model, its JSON document format, validation, and conditioning bundles.

A case document is a UTF-8 JSON object:

    {
      "atoms": ["g1", "g2"],                      # base atom names
      "guilt": {"constant": "G", "conjuncts": ["g1"]},
      "universe": ["g1", "(g1 & g2)"],            # sentence universe A
      "evidence": ["g1"],                         # subset of the universe
      "narrations": [{"id": "1", "side": "accusing", "content": ["g1"]}],
      "suspended_atoms": ["G", "g1", "E(g1)"],    # full suspended set (optional)
      "prior": {"base": "uniform",
                "reweight": [{"formula": "g1", "weight": "3/1"}]},
      "thresholds": {"a": "99/100", "s": "17/20", "r": "3/20", "n": "1/100"},
      "search": {"max_disjunction": 2, "gap_mode": "direct",
                 "commitment_variant": "evidential"}
    }

Rationals are "p/q" strings.  Unknown keys are rejected.  When
`suspended_atoms` is absent the default applies: the guilt constant plus
every label atom.  Supplying the key replaces the default wholesale, which is
how a case unsuspends labels to express prior stances about potential
evidence or narration descriptions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Optional, Union

from .formula import (
    Atom,
    EvidenceLabel,
    Formula,
    GuiltConst,
    GuiltDef,
    NarrationLabel,
    Not,
    ParseContext,
    ParseError,
    collect_atoms,
    is_label,
    parse_formula,
    render_formula,
)
from .worldmodel import (
    DEFAULT_WORLD_BOUND,
    Distribution,
    PartialCredence,
    Thresholds,
    Universe,
    WorldBoundError,
    build_prior,
)

ACCUSING = "accusing"
DEFENDING = "defending"

GAP_DIRECT = "direct"
GAP_COMMITMENT = "commitment"
VARIANT_EVIDENTIAL = "evidential"
VARIANT_F_EXTENDED = "f-extended"

BUNDLE_TAGS = (
    "full",
    "n-full",
    "informed",
    "evidential",
    "argued",
    "play-along",
    "n-extended",
    "e-extended",
    "f-extended",
)
_PLAY_ALONG_TAGS = ("play-along", "n-extended", "e-extended", "f-extended")


@dataclass
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity}[{self.code}]: {self.message}"


class CaseLoadError(ValueError):
    """Document failed to load; carries the error diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


@dataclass(frozen=True)
class Narration:
    id: str
    side: str
    content: tuple[Formula, ...]


@dataclass(frozen=True)
class PriorSpec:
    reweight: tuple[tuple[Formula, Fraction], ...] = ()


@dataclass(frozen=True)
class SearchConfig:
    max_disjunction: int = 2
    gap_mode: str = GAP_DIRECT
    commitment_variant: str = VARIANT_EVIDENTIAL


@dataclass(frozen=True)
class CaseModel:
    atoms: tuple[str, ...]
    guilt: GuiltDef
    universe_sentences: tuple[Formula, ...]
    evidence: tuple[Formula, ...]
    narrations: tuple[Narration, ...]
    suspended: frozenset[Formula]
    prior: PriorSpec = PriorSpec()
    thresholds: Thresholds = Thresholds()
    search: SearchConfig = SearchConfig()
    world_bound: int = DEFAULT_WORLD_BOUND

    def narration(self, narration_id: str) -> Narration:
        for n in self.narrations:
            if n.id == narration_id:
                return n
        raise KeyError(f"unknown narration id {narration_id!r}")

    def accusing(self) -> tuple[Narration, ...]:
        return tuple(n for n in self.narrations if n.side == ACCUSING)

    def defending(self) -> tuple[Narration, ...]:
        return tuple(n for n in self.narrations if n.side == DEFENDING)


@dataclass(frozen=True)
class ConditionBundle:
    """One row of the conditioning table: an ordered formula set plus its tag."""

    members: tuple[Formula, ...]
    tag: str
    narration_id: Optional[str] = None

    @property
    def as_set(self) -> frozenset[Formula]:
        return frozenset(self.members)


def build_universe(case: CaseModel) -> Universe:
    """Base atoms plus one E-label per universe sentence and one N-label per
    narration and universe sentence."""
    base = tuple(Atom(name) for name in case.atoms)
    labels: list[Formula] = [EvidenceLabel(phi) for phi in case.universe_sentences]
    for n in case.narrations:
        labels.extend(NarrationLabel(n.id, phi) for phi in case.universe_sentences)
    return Universe(
        base_atoms=base,
        label_atoms=tuple(labels),
        guilt=case.guilt,
        world_bound=case.world_bound,
    )


def build_distribution(case: CaseModel) -> Distribution:
    return build_prior(build_universe(case), case.prior.reweight)


def partial_credence(case: CaseModel) -> PartialCredence:
    return PartialCredence(
        distribution=build_distribution(case), suspended=case.suspended
    )


def default_suspended(case_atoms: Iterable[str], universe_sentences: Iterable[Formula],
                      narrations: Iterable[Narration],
                      guilt: GuiltDef) -> frozenset[Formula]:
    """Guilt marker plus every label atom; base atoms keep their priors."""
    sentences = tuple(universe_sentences)
    out: set[Formula] = {GuiltConst(guilt.constant)}
    out.update(EvidenceLabel(phi) for phi in sentences)
    for n in narrations:
        out.update(NarrationLabel(n.id, phi) for phi in sentences)
    return frozenset(out)


def _description_parts(case: CaseModel):
    universe = case.universe_sentences
    evidence = case.evidence
    e_set = set(evidence)
    e_d = tuple(EvidenceLabel(phi) for phi in evidence)
    e_neg = tuple(Not(EvidenceLabel(phi)) for phi in universe if phi not in e_set)
    n_d: list[Formula] = []
    n_neg: list[Formula] = []
    u_set = set(universe)
    for n in case.narrations:
        content = set(n.content)
        n_d.extend(NarrationLabel(n.id, phi) for phi in n.content if phi in u_set)
        n_neg.extend(Not(NarrationLabel(n.id, phi))
                     for phi in universe if phi not in content)
    return evidence, e_d, e_neg, tuple(n_d), tuple(n_neg), (case.guilt.biconditional(),)


def bundle(case: CaseModel, tag: str,
           narration_id: Optional[str] = None) -> ConditionBundle:
    """The conditioning set for one table row, in deterministic member order."""
    if tag not in BUNDLE_TAGS:
        raise ValueError(f"unknown bundle tag {tag!r}")
    if (narration_id is not None) != (tag in _PLAY_ALONG_TAGS):
        if narration_id is None:
            raise ValueError(f"bundle {tag!r} needs a narration id")
        raise ValueError(f"bundle {tag!r} does not take a narration id")

    e, e_d, e_neg, n_d, n_neg, g = _description_parts(case)
    n_j: tuple[Formula, ...] = ()
    if narration_id is not None:
        n_j = case.narration(narration_id).content

    rows = {
        "full": e + e_d + e_neg + n_d + n_neg + g,
        "n-full": e + e_d + n_d + n_neg + g,
        "informed": e + e_d + n_d + g,
        "evidential": e + e_d + e_neg + g,
        "argued": n_d + g,
        "play-along": n_j + n_d + n_neg + g,
        "n-extended": n_j + e + e_d + n_d + n_neg + g,
        "e-extended": n_j + e + e_d + e_neg + n_d + g,
        "f-extended": n_j + e + e_d + e_neg + n_d + n_neg + g,
    }
    members = rows[tag]
    # Dedupe while preserving order: content formulas may repeat evidence.
    seen: set[Formula] = set()
    ordered = []
    for m in members:
        if m not in seen:
            seen.add(m)
            ordered.append(m)
    return ConditionBundle(members=tuple(ordered), tag=tag, narration_id=narration_id)


def with_evidence(case: CaseModel, phi: Formula) -> CaseModel:
    """A new case with phi added to the evidence; the input is unchanged."""
    if phi not in case.universe_sentences:
        raise ValueError(f"{render_formula(phi)} is not in the sentence universe")
    if phi in case.evidence:
        raise ValueError(f"{render_formula(phi)} is already evidence")
    new_e = set(case.evidence) | {phi}
    ordered = tuple(s for s in case.universe_sentences if s in new_e)
    return replace(case, evidence=ordered)


def _fraction(text: str, where: str, errors: list[Diagnostic]) -> Optional[Fraction]:
    if not isinstance(text, str):
        errors.append(Diagnostic("error", "schema", f"{where}: rational must be a \"p/q\" string"))
        return None
    try:
        num, _, den = text.partition("/")
        value = Fraction(int(num), int(den)) if den else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        errors.append(Diagnostic("error", "schema", f"{where}: bad rational {text!r}"))
        return None
    return value


def _fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _check_keys(obj: dict, allowed: set[str], where: str, errors: list[Diagnostic]):
    for key in obj:
        if key not in allowed:
            errors.append(Diagnostic("error", "schema", f"{where}: unknown key {key!r}"))


_ATOM_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_RESERVED = {"E", "true", "false"}


def load_case(document: Union[str, bytes, dict]) -> CaseModel:
    """Parse and validate a case document; raises CaseLoadError on any error."""
    errors: list[Diagnostic] = []
    if isinstance(document, (str, bytes)):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise CaseLoadError([Diagnostic("error", "json", str(exc))]) from exc
    else:
        data = document
    if not isinstance(data, dict):
        raise CaseLoadError([Diagnostic("error", "schema", "top level must be an object")])

    _check_keys(
        data,
        {"atoms", "suspended_atoms", "guilt", "universe", "evidence",
         "narrations", "prior", "thresholds", "search"},
        "document", errors,
    )

    atoms = data.get("atoms")
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        errors.append(Diagnostic("error", "schema", "atoms: must be a list of strings"))
        raise CaseLoadError(errors)

    guilt_obj = data.get("guilt")
    if not isinstance(guilt_obj, dict):
        errors.append(Diagnostic("error", "schema", "guilt: must be an object"))
        raise CaseLoadError(errors)
    _check_keys(guilt_obj, {"constant", "conjuncts"}, "guilt", errors)
    guilt_name = guilt_obj.get("constant", "G")

    import re as _re
    for name in atoms:
        if not _re.fullmatch(_ATOM_NAME, name):
            errors.append(Diagnostic("error", "atoms", f"bad atom name {name!r}"))
        if name in _RESERVED or name == guilt_name:
            errors.append(Diagnostic("error", "atoms", f"atom name {name!r} is reserved"))
    if len(set(atoms)) != len(atoms):
        errors.append(Diagnostic("error", "atoms", "duplicate atom names"))

    narr_list = data.get("narrations", [])
    if not isinstance(narr_list, list):
        errors.append(Diagnostic("error", "schema", "narrations: must be a list"))
        raise CaseLoadError(errors)
    narr_ids = []
    for i, n in enumerate(narr_list):
        if not isinstance(n, dict):
            errors.append(Diagnostic("error", "schema", f"narrations[{i}]: must be an object"))
            continue
        _check_keys(n, {"id", "side", "content"}, f"narrations[{i}]", errors)
        nid = n.get("id")
        if not isinstance(nid, str) or not _re.fullmatch(r"[A-Za-z0-9_]+", nid):
            errors.append(Diagnostic("error", "narrations", f"narrations[{i}]: bad id {nid!r}"))
        else:
            narr_ids.append(nid)
    if len(set(narr_ids)) != len(narr_ids):
        errors.append(Diagnostic("error", "narrations", "duplicate narration ids"))
    if errors:
        raise CaseLoadError(errors)

    context = ParseContext(
        atoms=frozenset(atoms),
        narration_ids=frozenset(narr_ids),
        guilt_constant=guilt_name,
    )

    def parse(text, where, base_only=False):
        if not isinstance(text, str):
            errors.append(Diagnostic("error", "schema", f"{where}: formula must be a string"))
            return None
        try:
            f = parse_formula(text, context)
        except ParseError as exc:
            errors.append(Diagnostic("error", "parse", f"{where}: {exc}"))
            return None
        if base_only:
            bad = [a for a in collect_atoms(f) if not isinstance(a, Atom)]
            if bad:
                errors.append(Diagnostic(
                    "error", "parse",
                    f"{where}: labels and the guilt constant are not allowed here",
                ))
                return None
        return f

    conjuncts = guilt_obj.get("conjuncts")
    if not isinstance(conjuncts, list) or not conjuncts:
        errors.append(Diagnostic("error", "guilt", "guilt.conjuncts must be a nonempty list"))
        raise CaseLoadError(errors)
    parsed_conjuncts = [parse(c, f"guilt.conjuncts[{i}]", base_only=True)
                        for i, c in enumerate(conjuncts)]
    if errors:
        raise CaseLoadError(errors)
    guilt = GuiltDef(constant=guilt_name, conjuncts=tuple(parsed_conjuncts))

    universe_texts = data.get("universe", list(atoms))
    if not isinstance(universe_texts, list):
        errors.append(Diagnostic("error", "schema", "universe: must be a list"))
        raise CaseLoadError(errors)
    universe = []
    for i, text in enumerate(universe_texts):
        f = parse(text, f"universe[{i}]", base_only=True)
        if f is not None:
            if f in universe:
                errors.append(Diagnostic("error", "universe", f"duplicate sentence {text!r}"))
            else:
                universe.append(f)

    evidence_texts = data.get("evidence", [])
    if not isinstance(evidence_texts, list):
        errors.append(Diagnostic("error", "schema", "evidence: must be a list"))
        raise CaseLoadError(errors)
    evidence = []
    for i, text in enumerate(evidence_texts):
        f = parse(text, f"evidence[{i}]", base_only=True)
        if f is None:
            continue
        if f not in universe:
            errors.append(Diagnostic(
                "error", "evidence", f"evidence[{i}] is not in the sentence universe"))
        elif f in evidence:
            errors.append(Diagnostic("error", "evidence", f"duplicate evidence {text!r}"))
        else:
            evidence.append(f)
    evidence = [phi for phi in universe if phi in set(evidence)]

    narrations = []
    for i, n in enumerate(narr_list):
        side = n.get("side")
        if side not in (ACCUSING, DEFENDING):
            errors.append(Diagnostic(
                "error", "narrations", f"narrations[{i}]: side must be accusing or defending"))
            continue
        content_texts = n.get("content")
        if not isinstance(content_texts, list) or not content_texts:
            errors.append(Diagnostic(
                "error", "narrations", f"narrations[{i}]: content must be a nonempty list"))
            continue
        content = []
        for j, text in enumerate(content_texts):
            f = parse(text, f"narrations[{i}].content[{j}]")
            if f is not None:
                content.append(f)
        narrations.append(Narration(id=n["id"], side=side, content=tuple(content)))
    if errors:
        raise CaseLoadError(errors)

    prior_obj = data.get("prior", {})
    if not isinstance(prior_obj, dict):
        errors.append(Diagnostic("error", "schema", "prior: must be an object"))
        raise CaseLoadError(errors)
    _check_keys(prior_obj, {"base", "reweight"}, "prior", errors)
    if prior_obj.get("base", "uniform") != "uniform":
        errors.append(Diagnostic("error", "prior", "prior.base must be \"uniform\""))
    reweight = []
    for i, rule in enumerate(prior_obj.get("reweight", [])):
        if not isinstance(rule, dict):
            errors.append(Diagnostic("error", "schema", f"prior.reweight[{i}]: must be an object"))
            continue
        _check_keys(rule, {"formula", "weight"}, f"prior.reweight[{i}]", errors)
        f = parse(rule.get("formula"), f"prior.reweight[{i}].formula")
        w = _fraction(rule.get("weight"), f"prior.reweight[{i}].weight", errors)
        if f is not None and w is not None:
            if w <= 0:
                errors.append(Diagnostic(
                    "error", "prior", f"prior.reweight[{i}]: weight must be positive"))
            else:
                reweight.append((f, w))

    thr_obj = data.get("thresholds", {})
    if not isinstance(thr_obj, dict):
        errors.append(Diagnostic("error", "schema", "thresholds: must be an object"))
        raise CaseLoadError(errors)
    _check_keys(thr_obj, {"a", "s", "r", "n"}, "thresholds", errors)
    defaults = Thresholds()
    raw = {}
    for name in ("a", "s", "r", "n"):
        if name in thr_obj:
            v = _fraction(thr_obj[name], f"thresholds.{name}", errors)
            if v is not None:
                raw[name] = v
        else:
            raw[name] = getattr(defaults, name)
    thresholds = None
    if not errors and len(raw) == 4:
        try:
            thresholds = Thresholds(**raw)
        except ValueError as exc:
            errors.append(Diagnostic("error", "thresholds", str(exc)))

    search_obj = data.get("search", {})
    if not isinstance(search_obj, dict):
        errors.append(Diagnostic("error", "schema", "search: must be an object"))
        raise CaseLoadError(errors)
    _check_keys(search_obj, {"max_disjunction", "gap_mode", "commitment_variant"},
                "search", errors)
    max_disjunction = search_obj.get("max_disjunction", 2)
    if not isinstance(max_disjunction, int) or max_disjunction < 0:
        errors.append(Diagnostic(
            "error", "search", "search.max_disjunction must be a nonnegative integer"))
        max_disjunction = 2
    gap_mode = search_obj.get("gap_mode", GAP_DIRECT)
    if gap_mode not in (GAP_DIRECT, GAP_COMMITMENT):
        errors.append(Diagnostic("error", "search", f"bad gap_mode {gap_mode!r}"))
        gap_mode = GAP_DIRECT
    commitment_variant = search_obj.get("commitment_variant", VARIANT_EVIDENTIAL)
    if commitment_variant not in (VARIANT_EVIDENTIAL, VARIANT_F_EXTENDED):
        errors.append(Diagnostic(
            "error", "search", f"bad commitment_variant {commitment_variant!r}"))
        commitment_variant = VARIANT_EVIDENTIAL
    search = SearchConfig(max_disjunction=max_disjunction, gap_mode=gap_mode,
                          commitment_variant=commitment_variant)

    suspended_texts = data.get("suspended_atoms")
    if suspended_texts is None:
        suspended = default_suspended(atoms, universe, narrations, guilt)
    else:
        if not isinstance(suspended_texts, list):
            errors.append(Diagnostic("error", "schema", "suspended_atoms: must be a list"))
            raise CaseLoadError(errors)
        chosen: set[Formula] = set()
        for i, text in enumerate(suspended_texts):
            f = parse(text, f"suspended_atoms[{i}]")
            if f is None:
                continue
            if not isinstance(f, (Atom, EvidenceLabel, NarrationLabel, GuiltConst)):
                errors.append(Diagnostic(
                    "error", "suspended",
                    f"suspended_atoms[{i}] must be an atom, a label, or the guilt constant"))
            else:
                chosen.add(f)
        suspended = frozenset(chosen)

    if errors or thresholds is None:
        raise CaseLoadError(errors)

    case = CaseModel(
        atoms=tuple(atoms),
        guilt=guilt,
        universe_sentences=tuple(universe),
        evidence=tuple(evidence),
        narrations=tuple(narrations),
        suspended=suspended,
        prior=PriorSpec(reweight=tuple(reweight)),
        thresholds=thresholds,
        search=search,
    )
    hard = [d for d in validate_case(case) if d.severity == "error"]
    if hard:
        raise CaseLoadError(hard)
    return case


def validate_case(case: CaseModel) -> list[Diagnostic]:
    """Structural and probabilistic sanity checks; errors and warnings."""
    out: list[Diagnostic] = []
    atom_names = set(case.atoms)
    universe = set(case.universe_sentences)

    for phi in case.evidence:
        if phi not in universe:
            out.append(Diagnostic("error", "evidence",
                                  f"evidence {render_formula(phi)} not in universe"))

    for phi in case.universe_sentences:
        for a in collect_atoms(phi):
            if not isinstance(a, Atom):
                out.append(Diagnostic(
                    "error", "universe",
                    f"universe sentence {render_formula(phi)} must stay in the base language"))
                break

    for n in case.narrations:
        if not n.content:
            out.append(Diagnostic("error", "narrations", f"narration {n.id}: empty content"))
        labelled = [phi for phi in n.content if any(
            is_label(a) for a in collect_atoms(phi))]
        if labelled:
            out.append(Diagnostic(
                "warning", "narrations",
                f"narration {n.id} asserts label facts: "
                + ", ".join(render_formula(p) for p in labelled)))
        for phi in n.content:
            for a in collect_atoms(phi):
                if isinstance(a, Atom) and a.name not in atom_names:
                    out.append(Diagnostic(
                        "error", "narrations",
                        f"narration {n.id}: unknown atom {a.name}"))
                if is_label(a) and a.arg not in universe:
                    out.append(Diagnostic(
                        "error", "narrations",
                        f"narration {n.id}: label argument "
                        f"{render_formula(a.arg)} not in universe"))

    contents = {}
    for n in case.narrations:
        key = frozenset(n.content)
        if key in contents:
            out.append(Diagnostic(
                "warning", "narrations",
                f"narrations {contents[key]} and {n.id} are identical; "
                "mutual exclusion cannot hold"))
        else:
            contents[key] = n.id

    for f, w in case.prior.reweight:
        if w <= 0:
            out.append(Diagnostic("error", "prior", f"nonpositive weight {w}"))

    if any(d.severity == "error" for d in out):
        return out  # probabilistic checks need a structurally sound case

    try:
        pc = partial_credence(case)
    except (ValueError, WorldBoundError) as exc:
        out.append(Diagnostic("error", "universe", str(exc)))
        return out

    for a in case.suspended:
        if a not in pc.universe.atom_index and a != GuiltConst(case.guilt.constant):
            out.append(Diagnostic(
                "error", "suspended",
                f"suspended atom {render_formula(a)} is not a universe atom"))

    for tag in ("full", "n-full", "informed", "evidential", "argued"):
        b = bundle(case, tag)
        if not pc.distribution.has_positive_mass(b.members):
            out.append(Diagnostic("error", "bundle", f"bundle {tag} has zero probability"))
    for n in case.narrations:
        for tag in _PLAY_ALONG_TAGS:
            b = bundle(case, tag, n.id)
            if not pc.distribution.has_positive_mass(b.members):
                out.append(Diagnostic(
                    "warning", "bundle",
                    f"bundle {tag} for narration {n.id} has zero probability"))
    return out


def case_to_document(case: CaseModel) -> dict:
    """The JSON-ready document for a case; load_case round-trips it."""
    return {
        "atoms": list(case.atoms),
        "guilt": {
            "constant": case.guilt.constant,
            "conjuncts": [render_formula(c) for c in case.guilt.conjuncts],
        },
        "universe": [render_formula(phi) for phi in case.universe_sentences],
        "evidence": [render_formula(phi) for phi in case.evidence],
        "narrations": [
            {"id": n.id, "side": n.side,
             "content": [render_formula(phi) for phi in n.content]}
            for n in case.narrations
        ],
        "suspended_atoms": sorted(render_formula(a) for a in case.suspended),
        "prior": {
            "base": "uniform",
            "reweight": [
                {"formula": render_formula(f), "weight": _fraction_str(w)}
                for f, w in case.prior.reweight
            ],
        },
        "thresholds": {
            "a": _fraction_str(case.thresholds.a),
            "s": _fraction_str(case.thresholds.s),
            "r": _fraction_str(case.thresholds.r),
            "n": _fraction_str(case.thresholds.n),
        },
        "search": {
            "max_disjunction": case.search.max_disjunction,
            "gap_mode": case.search.gap_mode,
            "commitment_variant": case.search.commitment_variant,
        },
    }


def audit_probe(case: CaseModel) -> list[tuple[Formula, tuple[Formula, ...]]]:
    """Probe pairs for the axiom audit: the subformula closure of the case's
    formulas, closed under negation and conjunct swap, against the bare prior
    and the case-level bundles plus each narration's play-along set."""
    from .formula import And as _And, Not as _Not, Top as _Top, Bottom as _Bottom
    from .formula import subformulas

    pool: set[Formula] = set()
    for phi in case.universe_sentences:
        pool |= subformulas(phi)
    for phi in case.evidence:
        pool |= subformulas(phi)
    for c in case.guilt.conjuncts:
        pool |= subformulas(c)
    pool.add(GuiltConst(case.guilt.constant))
    for n in case.narrations:
        for phi in n.content:
            pool |= subformulas(phi)
    pool.add(_Top())
    pool.add(_Bottom())

    closed = set(pool)
    for f in pool:
        closed.add(_Not(f))
        if isinstance(f, _And):
            closed.add(_And(f.right, f.left))
    formulas = sorted(closed, key=render_formula)

    gammas: list[tuple[Formula, ...]] = [()]
    for tag in ("evidential", "full"):
        gammas.append(bundle(case, tag).members)
    for n in case.narrations:
        gammas.append(bundle(case, "play-along", n.id).members)

    return [(f, g) for g in gammas for f in formulas]
