"""Finite possible-world semantics, exact distributions, partial credences.

A universe fixes an ordered list of base atoms and label atoms; a world is a
total truth assignment over all of them.  Distributions start uniform and are
reshaped by multiplicative reweight rules, all arithmetic exact rationals.
Queries never materialize the full world set: conditioning literals on atoms
that neither the query, the non-literal conditions, nor any reweight rule
touches cancel out of the conditional ratio, so only the remaining "active"
atoms are enumerated.

A PartialCredence filters the distribution through a definedness rule driven
by a suspended-atom set: a query is defined when it is semantically decided,
a member of the conditioning set, covered (every suspended atom it mentions
also occurs in the conditioning set), or a conjunction with a defined
zero-valued conjunct.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .formula import (
    CONTINGENT,
    CONTRADICTION,
    TAUTOLOGY,
    And,
    Atom,
    EvidenceLabel,
    Formula,
    GuiltConst,
    GuiltDef,
    NarrationLabel,
    Not,
    UnknownAtomError,
    collect_atoms,
    compile_predicate,
    expand_guilt,
    is_atomic,
    occurring_atoms,
    render_formula,
    semantic_status,
)

DEFAULT_WORLD_BOUND = 2 ** 24

ZERO = Fraction(0)
ONE = Fraction(1)


class ZeroConditionError(ValueError):
    """Conditioning set has probability zero (no extension implemented for that)."""


class WorldBoundError(ValueError):
    """A query would enumerate more worlds than the configured bound."""


@dataclass(frozen=True)
class Thresholds:
    """The four stance thresholds: acceptability, strong plausibility,
    rejectability, negligibility."""

    a: Fraction = Fraction(99, 100)
    s: Fraction = Fraction(17, 20)
    r: Fraction = Fraction(3, 20)
    n: Fraction = Fraction(1, 100)

    def __post_init__(self):
        for name in ("a", "s", "r", "n"):
            v = getattr(self, name)
            if not (ZERO < v < ONE):
                raise ValueError(f"threshold {name} must lie strictly between 0 and 1")
        if not (self.a > self.s > self.r > self.n):
            raise ValueError("thresholds must satisfy a > s > r > n")
        if self.r != 1 - self.s:
            raise ValueError("rejectability must equal 1 - strong plausibility")
        if self.n != 1 - self.a:
            raise ValueError("negligibility must equal 1 - acceptability")


@dataclass(frozen=True)
class StanceValue:
    """A credence query result: an exact rational in [0,1], or undefined."""

    value: Optional[Fraction]
    reason: Optional[str] = None

    @classmethod
    def of(cls, value: Fraction) -> "StanceValue":
        if not (ZERO <= value <= ONE):
            raise ValueError(f"credence out of range: {value}")
        return cls(value=value, reason=None)

    @classmethod
    def undefined(cls, reason: str) -> "StanceValue":
        return cls(value=None, reason=reason)

    @property
    def defined(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.value is None:
            return f"undefined({self.reason})"
        return f"{self.value.numerator}/{self.value.denominator}"


@dataclass(frozen=True)
class Universe:
    """Ordered atom carrier: base atoms first, then label atoms."""

    base_atoms: tuple[Formula, ...]
    label_atoms: tuple[Formula, ...]
    guilt: GuiltDef
    world_bound: int = DEFAULT_WORLD_BOUND

    def __post_init__(self):
        seen = set()
        for a in self.base_atoms:
            if not isinstance(a, Atom):
                raise ValueError(f"not a base atom: {render_formula(a)}")
            if a in seen:
                raise ValueError(f"duplicate atom {render_formula(a)}")
            seen.add(a)
        for a in self.label_atoms:
            if not isinstance(a, (EvidenceLabel, NarrationLabel)):
                raise ValueError(f"not a label atom: {render_formula(a)}")
            if a in seen:
                raise ValueError(f"duplicate atom {render_formula(a)}")
            seen.add(a)
        if 2 ** len(self.base_atoms) > self.world_bound:
            raise WorldBoundError(
                f"{len(self.base_atoms)} base atoms exceed the world bound "
                f"{self.world_bound}"
            )

    @cached_property
    def atoms(self) -> tuple[Formula, ...]:
        return self.base_atoms + self.label_atoms

    @cached_property
    def atom_index(self) -> dict[Formula, int]:
        return {a: i for i, a in enumerate(self.atoms)}

    @property
    def world_count(self) -> int:
        return 2 ** len(self.atoms)

    def check_known(self, f: Formula):
        for a in collect_atoms(expand_guilt(f, self.guilt)):
            if a not in self.atom_index:
                raise UnknownAtomError(f"unknown atom {render_formula(a)}")

    def worlds(self) -> Iterator[dict[Formula, bool]]:
        """All worlds as explicit assignments; only sensible for small universes."""
        if self.world_count > self.world_bound:
            raise WorldBoundError("universe too large to materialize")
        atoms = self.atoms
        for mask in range(self.world_count):
            yield {a: bool(mask >> i & 1) for i, a in enumerate(atoms)}


def _as_literal(f: Formula) -> Optional[tuple[Formula, bool]]:
    if is_atomic(f):
        return f, True
    if isinstance(f, Not) and is_atomic(f.operand):
        return f.operand, False
    return None


@dataclass(frozen=True)
class Distribution:
    """Uniform measure over the universe reshaped by multiplicative reweights.

    Each rule (formula, weight) multiplies the weight of every satisfying
    world; the normalization constant cancels inside every query.
    """

    universe: Universe
    factors: tuple[tuple[Formula, Fraction], ...] = ()

    @cached_property
    def _expanded_factors(self) -> tuple[tuple[Formula, Fraction], ...]:
        g = self.universe.guilt
        return tuple((expand_guilt(f, g), w) for f, w in self.factors)

    @cached_property
    def _has_zero_factor(self) -> bool:
        return any(w == 0 for _, w in self._expanded_factors)

    def probability(self, f: Formula) -> Fraction:
        return self.conditional(f, ())

    def conditional(self, f: Formula, gamma: Iterable[Formula]) -> Fraction:
        """P(f | /\\gamma); raises ZeroConditionError on a zero-mass condition."""
        num, den = self._sums(f, tuple(gamma))
        if den == 0:
            raise ZeroConditionError("conditioning set has zero probability")
        return num / den

    def has_positive_mass(self, gamma: Iterable[Formula]) -> bool:
        _, den = self._sums(None, tuple(gamma))
        return den > 0

    def world_weights(self) -> dict[int, Fraction]:
        """Normalized weight of every world, keyed by mask; small universes only."""
        u = self.universe
        if u.world_count > u.world_bound:
            raise WorldBoundError("universe too large to materialize")
        index = u.atom_index
        preds = [(compile_predicate(f, index), w) for f, w in self._expanded_factors]
        weights = {}
        total = ZERO
        for mask in range(u.world_count):
            w = ONE
            for pred, factor in preds:
                if pred(mask):
                    w *= factor
            weights[mask] = w
            total += w
        if total == 0:
            raise ZeroConditionError("distribution has zero total mass")
        return {m: w / total for m, w in weights.items()}

    def _sums(self, f: Optional[Formula],
              gamma: tuple[Formula, ...]) -> tuple[Fraction, Fraction]:
        """Weighted mass of (f and gamma) and of gamma over the active atoms."""
        u = self.universe
        guilt = u.guilt
        query = expand_guilt(f, guilt) if f is not None else None
        if query is not None:
            u.check_known(query)

        pinned: dict[Formula, bool] = {}
        constraints: list[Formula] = []
        for raw in gamma:
            g = expand_guilt(raw, guilt)
            u.check_known(g)
            lit = _as_literal(g)
            if lit is not None:
                atom, polarity = lit
                if pinned.get(atom, polarity) != polarity:
                    return ZERO, ZERO
                pinned[atom] = polarity
                continue
            status = semantic_status(g)
            if status == TAUTOLOGY:
                continue
            if status == CONTRADICTION:
                return ZERO, ZERO
            constraints.append(g)

        active: set[Formula] = set()
        if query is not None:
            active |= collect_atoms(query)
        for c in constraints:
            active |= collect_atoms(c)
        if self._has_zero_factor:
            # Zero-weight rules can silently zero whole slices, so nothing may
            # be cancelled: enumerate every pinned and factor atom as well.
            active |= set(pinned)
            for ff, _ in self._expanded_factors:
                active |= collect_atoms(ff)
            kept_factors = list(self._expanded_factors)
        else:
            kept_factors = []
            pending = list(self._expanded_factors)
            changed = True
            while changed:
                changed = False
                still = []
                for ff, w in pending:
                    fa = collect_atoms(ff)
                    if fa & active:
                        kept_factors.append((ff, w))
                        extra = fa - set(pinned)
                        if not extra <= active:
                            active |= extra
                            changed = True
                        continue
                    still.append((ff, w))
                pending = still

        free = sorted(
            (a for a in active if a not in pinned),
            key=lambda a: u.atom_index[a],
        )
        if 2 ** len(free) > u.world_bound:
            raise WorldBoundError(
                f"query activates {len(free)} atoms, beyond the world bound"
            )
        index = {a: i for i, a in enumerate(free)}
        base = 0
        nbits = len(free)
        for a in sorted(pinned, key=lambda a: u.atom_index[a]):
            index[a] = nbits
            if pinned[a]:
                base |= 1 << nbits
            nbits += 1

        cond_preds = [compile_predicate(c, index) for c in constraints]
        factor_preds = [(compile_predicate(ff, index), w) for ff, w in kept_factors]
        query_pred = compile_predicate(query, index) if query is not None else None

        num = ZERO
        den = ZERO
        for bits in range(1 << len(free)):
            mask = base | bits
            ok = True
            for pred in cond_preds:
                if not pred(mask):
                    ok = False
                    break
            if not ok:
                continue
            w = ONE
            for pred, factor in factor_preds:
                if pred(mask):
                    w *= factor
            den += w
            if query_pred is not None and query_pred(mask):
                num += w
        return num, den


def build_prior(universe: Universe,
                reweight: Sequence[tuple[Formula, Fraction]]) -> Distribution:
    """Uniform distribution reshaped by the given positive reweight rules."""
    for f, w in reweight:
        universe.check_known(f)
        if w <= 0:
            raise ValueError(f"reweight weight must be positive, got {w}")
    dist = Distribution(universe=universe, factors=tuple(reweight))
    if not dist.has_positive_mass(()):
        raise ZeroConditionError("reweighting left the distribution with zero mass")
    return dist


REASON_SUSPENDED = "suspended"
REASON_ZERO_MASS = "zero-mass"
REASON_BOUND = "world-bound"


@dataclass(frozen=True)
class PartialCredence:
    """Exact distribution plus the definedness rule over a suspended-atom set."""

    distribution: Distribution
    suspended: frozenset[Formula]

    def __post_init__(self):
        known = set(self.distribution.universe.atom_index)
        known.add(GuiltConst(self.guilt.constant))
        for a in self.suspended:
            if a not in known:
                raise ValueError(f"suspended atom not in universe: {render_formula(a)}")

    @property
    def universe(self) -> Universe:
        return self.distribution.universe

    @property
    def guilt(self) -> GuiltDef:
        return self.distribution.universe.guilt

    def _coverage_atoms(self, f: Formula) -> frozenset[Formula]:
        # The guilt marker counts as occurring wherever the constant does, on
        # top of the atoms of the expanded formula; label arguments are
        # transparent (a description of a claim is about the claim's atoms).
        return occurring_atoms(f) | occurring_atoms(expand_guilt(f, self.guilt))

    def _covered(self, f: Formula, gamma_cover: frozenset[Formula]) -> bool:
        needed = self.suspended & self._coverage_atoms(f)
        return needed <= gamma_cover

    def _gamma_cover(self, gamma: tuple[Formula, ...]) -> frozenset[Formula]:
        cover: set[Formula] = set()
        for g in gamma:
            cover |= self._coverage_atoms(g)
        return frozenset(cover)

    def is_defined(self, f: Formula, gamma: Iterable[Formula]) -> bool:
        """Definedness rule; invariant under negation and conjunct order."""
        gamma = tuple(gamma)
        return self._is_defined(f, gamma, self._gamma_cover(gamma))

    def _is_defined(self, f: Formula, gamma: tuple[Formula, ...],
                    cover: frozenset[Formula]) -> bool:
        core = f
        while isinstance(core, Not):
            core = core.operand
        if semantic_status(core, self.guilt) != CONTINGENT:
            return True
        if f in gamma or core in gamma:
            return True
        if self._covered(core, cover):
            return True
        if isinstance(core, And):
            for part in (core.left, core.right):
                if self._is_defined(part, gamma, cover):
                    try:
                        if self.distribution.conditional(part, gamma) == 0:
                            return True
                    except (ZeroConditionError, WorldBoundError):
                        pass
        return False

    def credence(self, f: Formula, gamma: Iterable[Formula] = ()) -> StanceValue:
        """Three-way lift of conditional probability through the definedness rule."""
        gamma = tuple(gamma)
        if not self.is_defined(f, gamma):
            return StanceValue.undefined(REASON_SUSPENDED)
        status = semantic_status(f, self.guilt)
        if status == TAUTOLOGY:
            return StanceValue.of(ONE)
        if status == CONTRADICTION:
            return StanceValue.of(ZERO)
        try:
            return StanceValue.of(self.distribution.conditional(f, gamma))
        except ZeroConditionError:
            return StanceValue.undefined(REASON_ZERO_MASS)
        except WorldBoundError:
            return StanceValue.undefined(REASON_BOUND)


@dataclass
class AuditViolation:
    axiom: str
    detail: str


@dataclass
class AuditReport:
    """Outcome of checking the credence axioms over a probe set."""

    checked: dict[str, int] = field(default_factory=dict)
    violations: list[AuditViolation] = field(default_factory=list)
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, axiom: str):
        self.checked[axiom] = self.checked.get(axiom, 0) + 1

    def flag(self, axiom: str, detail: str):
        self.violations.append(AuditViolation(axiom, detail))

    def to_dict(self) -> dict:
        return {
            "checked": {k: self.checked[k] for k in sorted(self.checked)},
            "violations": [
                {"axiom": v.axiom, "detail": v.detail} for v in self.violations
            ],
            "skipped": self.skipped,
            "ok": self.ok,
        }


def _satisfiable_with(pc: PartialCredence, f: Formula,
                      gamma: tuple[Formula, ...]) -> bool:
    conj = f
    for g in gamma:
        conj = And(conj, g)
    try:
        return semantic_status(conj, pc.guilt) != CONTRADICTION
    except ValueError:
        # Too many atoms to decide; treat the zero as logically forced so the
        # instance is not flagged on size grounds alone.
        return False


def audit_axioms(pc: PartialCredence,
                 probe: Iterable[tuple[Formula, Iterable[Formula]]]) -> AuditReport:
    """Check the six partial-credence axioms over the given (formula, set) probes.

    Zero-mass conditioning sets are recorded as skipped: conditioning on them
    is out of scope, so nothing can be asserted there.  A conjunction whose
    zero is logically forced given the conditioning set is exempt from the
    numeric zero-propagation axiom, which only constrains measure zeros.
    """
    report = AuditReport()
    seen: set[tuple[Formula, frozenset[Formula]]] = set()
    mass_cache: dict[frozenset[Formula], bool] = {}
    for f, raw_gamma in probe:
        gamma = tuple(raw_gamma)
        key = (f, frozenset(gamma))
        if key in seen:
            continue
        seen.add(key)

        if key[1] not in mass_cache:
            try:
                mass_cache[key[1]] = pc.distribution.has_positive_mass(gamma)
            except WorldBoundError:
                mass_cache[key[1]] = False
        if not mass_cache[key[1]]:
            report.skipped += 1
            continue

        gdesc = "{" + ", ".join(render_formula(g) for g in gamma) + "}"

        def describe(x: Formula) -> str:
            return f"{render_formula(x)} | {gdesc}"

        sv = pc.credence(f, gamma)

        report.count("part1")
        status = semantic_status(f, pc.guilt)
        if status == TAUTOLOGY and sv.value != ONE:
            report.flag("part1", f"tautology {describe(f)} is not 1: {sv}")
        if status == CONTRADICTION and sv.value != ZERO:
            report.flag("part1", f"contradiction {describe(f)} is not 0: {sv}")

        if f in gamma:
            report.count("part2")
            if not sv.defined:
                report.flag("part2", f"member {describe(f)} is undefined")
            elif sv.value != ONE:
                report.flag("part2", f"member {describe(f)} is not 1: {sv}")

        report.count("part3")
        if pc.is_defined(f, gamma) != pc.is_defined(Not(f), gamma):
            report.flag("part3", f"negation asymmetry at {describe(f)}")
        if isinstance(f, And):
            swapped = And(f.right, f.left)
            if pc.is_defined(f, gamma) != pc.is_defined(swapped, gamma):
                report.flag("part3", f"conjunct-order asymmetry at {describe(f)}")

        if isinstance(f, And):
            left = pc.credence(f.left, gamma)
            right = pc.credence(f.right, gamma)

            report.count("part4")
            if sv.defined and sv.value > 0 and not (left.defined and right.defined):
                report.flag(
                    "part4",
                    f"positive conjunction {describe(f)} with undefined conjunct",
                )
            for side, other in ((left, right), (right, left)):
                if side.defined and side.value == 0:
                    if not sv.defined:
                        report.flag(
                            "part4",
                            f"zero conjunct but undefined conjunction {describe(f)}",
                        )
                    elif sv.value != 0:
                        report.flag(
                            "part4",
                            f"zero conjunct but nonzero conjunction {describe(f)}",
                        )

            report.count("part5")
            for side, other in ((left, right), (right, left)):
                if not side.defined and sv.defined:
                    escape = other.defined and other.value == 0
                    if not escape and semantic_status(f, pc.guilt) == CONTINGENT:
                        report.flag(
                            "part5",
                            f"defined conjunction {describe(f)} over an undefined "
                            "conjunct without a zero escape",
                        )

            report.count("part6")
            if sv.defined and sv.value == 0:
                for side, other in ((left, right), (right, left)):
                    if side.defined and side.value > 0:
                        if not _satisfiable_with(pc, f, gamma):
                            continue  # zero forced by logic, not by the measure
                        if not (other.defined and other.value == 0):
                            report.flag(
                                "part6",
                                f"measure-zero conjunction {describe(f)} with a "
                                f"positive conjunct, yet the other conjunct is "
                                f"{other}",
                            )
    return report
