"""Syntax of the object language: atoms, connectives, label atoms, guilt constant.

ASCII connectives ``! & | -> <->`` with precedence ``!`` > ``&`` > ``|`` >
``->`` > ``<->`` and right-associative ``->``.  ``E(phi)`` and ``N<id>(phi)``
are label atoms ("phi is part of the evidence" / "phi is part of narration
<id>"); their argument must stay inside the base language, so E/N/guilt
constant inside an operator argument is rejected at parse time.  ``true`` and
``false`` are literals.  The guilt constant (default ``G``) abbreviates the
conjunction of a GuiltDef's conditions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from typing import Iterable, Mapping, Optional

TAUTOLOGY = "tautology"
CONTRADICTION = "contradiction"
CONTINGENT = "contingent"


class ParseError(ValueError):
    """Malformed formula text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NestedOperatorError(ParseError):
    """E/N/guilt constant used inside an operator argument."""


class UnknownAtomError(ValueError):
    pass


@dataclass(frozen=True)
class Formula:
    """Base class for formula nodes; all nodes are immutable and hashable."""


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class EvidenceLabel(Formula):
    """Label atom E(arg): arg is part of the evidence."""

    arg: Formula


@dataclass(frozen=True)
class NarrationLabel(Formula):
    """Label atom N<narration>(arg): arg is part of that narration."""

    narration: str
    arg: Formula


@dataclass(frozen=True)
class GuiltConst(Formula):
    name: str = "G"


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


TRUE = Top()
FALSE = Bottom()

_ATOMIC = (Atom, EvidenceLabel, NarrationLabel, GuiltConst)


def is_atomic(f: Formula) -> bool:
    """True for the formulas that receive truth values directly in a world."""
    return isinstance(f, _ATOMIC)


def is_label(f: Formula) -> bool:
    return isinstance(f, (EvidenceLabel, NarrationLabel))


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-fold conjunction; empty input yields `true`."""
    items = list(formulas)
    if not items:
        return TRUE
    return reduce(And, items)


def disjoin(formulas: Iterable[Formula]) -> Formula:
    items = list(formulas)
    if not items:
        return FALSE
    return reduce(Or, items)


@dataclass(frozen=True)
class GuiltDef:
    """Definition of the guilt constant as a conjunction of base-language conditions."""

    constant: str = "G"
    conjuncts: tuple[Formula, ...] = ()

    def __post_init__(self):
        if not self.conjuncts:
            raise ValueError("guilt definition needs at least one conjunct")
        for c in self.conjuncts:
            bad = [a for a in collect_atoms(c) if not isinstance(a, Atom)]
            if bad:
                raise ValueError(
                    "guilt conjuncts must be label-free and must not use the "
                    f"guilt constant: {render_formula(c)}"
                )

    def conjunction(self) -> Formula:
        return conjoin(self.conjuncts)

    def biconditional(self) -> Formula:
        """The defining sentence `G <-> g_1 & ... & g_l` used in conditioning sets."""
        return Iff(GuiltConst(self.constant), self.conjunction())


@dataclass(frozen=True)
class ParseContext:
    """Optional declarations the parser validates references against."""

    atoms: Optional[frozenset[str]] = None
    narration_ids: Optional[frozenset[str]] = None
    guilt_constant: str = "G"


_TOKEN_RE = re.compile(r"<->|->|[()!&|]|[A-Za-z_][A-Za-z0-9_]*")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class _Parser:
    def __init__(self, text: str, context: ParseContext):
        self.text = text
        self.context = context
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            self.tokens.append((m.group(), pos))
            pos = m.end()
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, tok: str):
        if self.peek() != tok:
            raise ParseError(f"expected {tok!r}", self.pos())
        self.take()

    def parse(self) -> Formula:
        f = self.iff(operators=True)
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.peek()!r}", self.pos())
        return f

    def iff(self, operators: bool) -> Formula:
        f = self.imp(operators)
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.imp(operators))
        return f

    def imp(self, operators: bool) -> Formula:
        f = self.disj(operators)
        if self.peek() == "->":
            self.take()
            return Implies(f, self.imp(operators))
        return f

    def disj(self, operators: bool) -> Formula:
        f = self.conj(operators)
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj(operators))
        return f

    def conj(self, operators: bool) -> Formula:
        f = self.unary(operators)
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary(operators))
        return f

    def unary(self, operators: bool) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary(operators))
        return self.primary(operators)

    def primary(self, operators: bool) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        if tok == "(":
            self.take()
            f = self.iff(operators)
            self.expect(")")
            return f
        if not _IDENT_RE.match(tok):
            raise ParseError(f"unexpected token {tok!r}", self.pos())
        at = self.pos()
        self.take()
        if self.peek() == "(":
            return self.application(tok, at, operators)
        return self.name(tok, at, operators)

    def application(self, head: str, at: int, operators: bool) -> Formula:
        if not operators:
            raise NestedOperatorError(
                "operators cannot be nested inside an operator argument", at
            )
        self.expect("(")
        arg = self.iff(operators=False)
        self.expect(")")
        if head == "E":
            return EvidenceLabel(arg)
        if head.startswith("N") and len(head) > 1:
            index = head[1:]
            ids = self.context.narration_ids
            if ids is not None and index not in ids:
                raise ParseError(f"unknown narration index {index!r}", at)
            return NarrationLabel(index, arg)
        raise ParseError(f"{head!r} is not an operator", at)

    def name(self, tok: str, at: int, operators: bool) -> Formula:
        if tok == "true":
            return TRUE
        if tok == "false":
            return FALSE
        if tok == self.context.guilt_constant:
            if not operators:
                raise NestedOperatorError(
                    "the guilt constant cannot occur inside an operator argument", at
                )
            return GuiltConst(tok)
        atoms = self.context.atoms
        if atoms is not None and tok not in atoms:
            raise ParseError(f"unknown atom {tok!r}", at)
        return Atom(tok)


def parse_formula(text: str, context: Optional[ParseContext] = None) -> Formula:
    """Parse `text` into a formula tree, validating against `context` if given."""
    if not text or not text.strip():
        raise ParseError("empty formula", 0)
    return _Parser(text, context or ParseContext()).parse()


def render_formula(f: Formula) -> str:
    """Canonical fully-parenthesized text; parse(render(f)) == f."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, GuiltConst):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, EvidenceLabel):
        return f"E({render_formula(f.arg)})"
    if isinstance(f, NarrationLabel):
        return f"N{f.narration}({render_formula(f.arg)})"
    if isinstance(f, Not):
        return f"(!{render_formula(f.operand)})"
    if isinstance(f, And):
        return f"({render_formula(f.left)} & {render_formula(f.right)})"
    if isinstance(f, Or):
        return f"({render_formula(f.left)} | {render_formula(f.right)})"
    if isinstance(f, Implies):
        return f"({render_formula(f.left)} -> {render_formula(f.right)})"
    if isinstance(f, Iff):
        return f"({render_formula(f.left)} <-> {render_formula(f.right)})"
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=None)
def collect_atoms(f: Formula) -> frozenset[Formula]:
    """All atomic subformulas of f; the guilt constant is reported as its own marker."""
    if is_atomic(f):
        return frozenset([f])
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, Not):
        return collect_atoms(f.operand)
    if isinstance(f, (And, Or, Implies, Iff)):
        return collect_atoms(f.left) | collect_atoms(f.right)
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=None)
def occurring_atoms(f: Formula) -> frozenset[Formula]:
    """Atoms occurring anywhere in f, label arguments included.

    A label atom contributes both itself and the atoms of its argument: a
    narration or evidence description is about whatever its argument mentions.
    """
    if isinstance(f, (EvidenceLabel, NarrationLabel)):
        return frozenset([f]) | occurring_atoms(f.arg)
    if is_atomic(f):
        return frozenset([f])
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, Not):
        return occurring_atoms(f.operand)
    if isinstance(f, (And, Or, Implies, Iff)):
        return occurring_atoms(f.left) | occurring_atoms(f.right)
    raise TypeError(f"not a formula: {f!r}")


def expand_guilt(f: Formula, guilt: GuiltDef) -> Formula:
    """Replace every guilt-constant occurrence with the defining conjunction."""
    if isinstance(f, GuiltConst):
        return guilt.conjunction()
    if isinstance(f, Not):
        return Not(expand_guilt(f.operand, guilt))
    if isinstance(f, And):
        return And(expand_guilt(f.left, guilt), expand_guilt(f.right, guilt))
    if isinstance(f, Or):
        return Or(expand_guilt(f.left, guilt), expand_guilt(f.right, guilt))
    if isinstance(f, Implies):
        return Implies(expand_guilt(f.left, guilt), expand_guilt(f.right, guilt))
    if isinstance(f, Iff):
        return Iff(expand_guilt(f.left, guilt), expand_guilt(f.right, guilt))
    return f


def subformulas(f: Formula) -> frozenset[Formula]:
    """f together with all of its subformulas (label arguments included)."""
    out = {f}
    if isinstance(f, Not):
        out |= subformulas(f.operand)
    elif isinstance(f, (And, Or, Implies, Iff)):
        out |= subformulas(f.left) | subformulas(f.right)
    elif isinstance(f, (EvidenceLabel, NarrationLabel)):
        out |= subformulas(f.arg)
    return frozenset(out)


def satisfies(assignment: Mapping[Formula, bool], f: Formula,
              guilt: Optional[GuiltDef] = None) -> bool:
    """Classical truth of f under a total assignment to its atoms.

    The guilt constant is evaluated through its definition, so `guilt` is
    required whenever f mentions it.
    """
    if guilt is not None:
        f = expand_guilt(f, guilt)
    return _eval(assignment, f)


def _eval(assignment: Mapping[Formula, bool], f: Formula) -> bool:
    if is_atomic(f):
        if isinstance(f, GuiltConst):
            raise ValueError("expand the guilt constant before evaluation")
        try:
            return assignment[f]
        except KeyError:
            raise UnknownAtomError(f"no truth value for {render_formula(f)}") from None
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _eval(assignment, f.operand)
    if isinstance(f, And):
        return _eval(assignment, f.left) and _eval(assignment, f.right)
    if isinstance(f, Or):
        return _eval(assignment, f.left) or _eval(assignment, f.right)
    if isinstance(f, Implies):
        return (not _eval(assignment, f.left)) or _eval(assignment, f.right)
    if isinstance(f, Iff):
        return _eval(assignment, f.left) == _eval(assignment, f.right)
    raise TypeError(f"not a formula: {f!r}")


def compile_predicate(f: Formula, bit_index: Mapping[Formula, int]):
    """Compile a guilt-free formula into a fast mask -> bool closure.

    `bit_index` maps every atom of f to its bit position in the world mask.
    """
    if is_atomic(f):
        if isinstance(f, GuiltConst):
            raise ValueError("expand the guilt constant before compiling")
        bit = 1 << bit_index[f]
        return lambda m: (m & bit) != 0
    if isinstance(f, Top):
        return lambda m: True
    if isinstance(f, Bottom):
        return lambda m: False
    if isinstance(f, Not):
        g = compile_predicate(f.operand, bit_index)
        return lambda m: not g(m)
    if isinstance(f, And):
        a = compile_predicate(f.left, bit_index)
        b = compile_predicate(f.right, bit_index)
        return lambda m: a(m) and b(m)
    if isinstance(f, Or):
        a = compile_predicate(f.left, bit_index)
        b = compile_predicate(f.right, bit_index)
        return lambda m: a(m) or b(m)
    if isinstance(f, Implies):
        a = compile_predicate(f.left, bit_index)
        b = compile_predicate(f.right, bit_index)
        return lambda m: (not a(m)) or b(m)
    if isinstance(f, Iff):
        a = compile_predicate(f.left, bit_index)
        b = compile_predicate(f.right, bit_index)
        return lambda m: a(m) == b(m)
    raise TypeError(f"not a formula: {f!r}")


_STATUS_GUARD = 22  # exhaustive evaluation over a formula's own atoms


@lru_cache(maxsize=None)
def semantic_status(f: Formula, guilt: Optional[GuiltDef] = None) -> str:
    """Classify f as tautology/contradiction/contingent by exhaustive evaluation."""
    if guilt is not None:
        f = expand_guilt(f, guilt)
    atoms = sorted(collect_atoms(f), key=render_formula)
    if any(isinstance(a, GuiltConst) for a in atoms):
        raise ValueError("cannot classify a formula with an unexpanded guilt constant")
    if len(atoms) > _STATUS_GUARD:
        raise ValueError(f"formula over {len(atoms)} atoms exceeds the evaluation guard")
    index = {a: i for i, a in enumerate(atoms)}
    pred = compile_predicate(f, index)
    seen_true = seen_false = False
    for mask in range(1 << len(atoms)):
        if pred(mask):
            seen_true = True
        else:
            seen_false = True
        if seen_true and seen_false:
            return CONTINGENT
    return TAUTOLOGY if seen_true else CONTRADICTION
