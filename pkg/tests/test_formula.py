import random
from itertools import product

import pytest

from narrcred.formula import (
    CONTINGENT,
    CONTRADICTION,
    TAUTOLOGY,
    And,
    Atom,
    Bottom,
    EvidenceLabel,
    GuiltConst,
    GuiltDef,
    Iff,
    Implies,
    NarrationLabel,
    NestedOperatorError,
    Not,
    Or,
    ParseContext,
    ParseError,
    Top,
    collect_atoms,
    expand_guilt,
    occurring_atoms,
    parse_formula,
    render_formula,
    semantic_status,
)


def test_parse_basic_conjunction():
    assert parse_formula("g1 & !g2") == And(Atom("g1"), Not(Atom("g2")))


def test_parse_evidence_label():
    f = parse_formula("E(g1 | g2)")
    assert f == EvidenceLabel(Or(Atom("g1"), Atom("g2")))


def test_parse_narration_label():
    assert parse_formula("N1(g1)") == NarrationLabel("1", Atom("g1"))
    assert parse_formula("Nleft(g1)") == NarrationLabel("left", Atom("g1"))


def test_nested_operator_rejected():
    with pytest.raises(NestedOperatorError):
        parse_formula("E(E(g1))")
    with pytest.raises(NestedOperatorError):
        parse_formula("N1(E(g1))")
    with pytest.raises(NestedOperatorError):
        parse_formula("E(G)")


def test_unknown_narration_index():
    ctx = ParseContext(narration_ids=frozenset({"1"}))
    parse_formula("N1(g1)", ctx)
    with pytest.raises(ParseError, match="unknown narration index"):
        parse_formula("N2(g1)", ctx)


def test_unknown_atom_with_context():
    ctx = ParseContext(atoms=frozenset({"g1"}))
    parse_formula("g1", ctx)
    with pytest.raises(ParseError, match="unknown atom"):
        parse_formula("g2", ctx)


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_formula("g1 & )")
    assert err.value.position == 5


def test_empty_formula_rejected():
    with pytest.raises(ParseError):
        parse_formula("   ")


def test_precedence_and_associativity():
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    assert parse_formula("a | b & c") == Or(a, And(b, c))
    assert parse_formula("!a & b") == And(Not(a), b)
    assert parse_formula("a -> b -> c") == Implies(a, Implies(b, c))
    assert parse_formula("a <-> b <-> c") == Iff(Iff(a, b), c)
    assert parse_formula("a -> b | c") == Implies(a, Or(b, c))


def test_constants():
    assert parse_formula("true") == Top()
    assert parse_formula("false") == Bottom()
    assert parse_formula("G") == GuiltConst("G")
    ctx = ParseContext(guilt_constant="Guilty")
    assert parse_formula("Guilty", ctx) == GuiltConst("Guilty")


def test_render_examples():
    assert render_formula(And(Atom("g1"), Not(Atom("g2")))) == "(g1 & (!g2))"
    assert render_formula(GuiltConst()) == "G"
    assert render_formula(EvidenceLabel(Atom("g1"))) == "E(g1)"
    assert render_formula(NarrationLabel("2", Atom("g1"))) == "N2(g1)"


def _random_tree(rng, depth):
    if depth == 0:
        return rng.choice([
            Atom("a"), Atom("b"), Atom("c"), Top(), Bottom(), GuiltConst(),
            EvidenceLabel(Atom("a")), NarrationLabel("1", Or(Atom("a"), Atom("b"))),
        ])
    kind = rng.randrange(5)
    if kind == 0:
        return Not(_random_tree(rng, depth - 1))
    ctor = [And, Or, Implies, Iff][kind - 1]
    return ctor(_random_tree(rng, depth - 1), _random_tree(rng, depth - 1))


def test_render_parse_round_trip():
    rng = random.Random(42)
    ctx = ParseContext(narration_ids=frozenset({"1"}))
    for _ in range(300):
        tree = _random_tree(rng, rng.randint(0, 4))
        assert parse_formula(render_formula(tree), ctx) == tree


def test_collect_atoms():
    assert collect_atoms(parse_formula("g1 & !g1")) == frozenset({Atom("g1")})
    assert collect_atoms(parse_formula("E(g1) & g2")) == frozenset(
        {EvidenceLabel(Atom("g1")), Atom("g2")})
    assert collect_atoms(parse_formula("G")) == frozenset({GuiltConst("G")})


def test_occurring_atoms_sees_label_arguments():
    f = parse_formula("!N1(g1 & g2)")
    assert occurring_atoms(f) == frozenset(
        {NarrationLabel("1", And(Atom("g1"), Atom("g2"))), Atom("g1"), Atom("g2")})


def test_expand_guilt():
    one = GuiltDef(constant="G", conjuncts=(Atom("g1"),))
    two = GuiltDef(constant="G", conjuncts=(Atom("g1"), Atom("g2")))
    assert expand_guilt(GuiltConst("G"), one) == Atom("g1")
    assert expand_guilt(Not(GuiltConst("G")), two) == Not(And(Atom("g1"), Atom("g2")))
    assert expand_guilt(Atom("g3"), two) == Atom("g3")


def test_expand_guilt_leaves_no_constant():
    rng = random.Random(7)
    guilt = GuiltDef(constant="G", conjuncts=(Atom("a"), Atom("b")))
    for _ in range(100):
        tree = _random_tree(rng, 3)
        expanded = expand_guilt(tree, guilt)
        assert not any(isinstance(x, GuiltConst) for x in collect_atoms(expanded))


def test_guilt_def_rejects_labels():
    with pytest.raises(ValueError):
        GuiltDef(constant="G", conjuncts=(EvidenceLabel(Atom("a")),))
    with pytest.raises(ValueError):
        GuiltDef(constant="G", conjuncts=())


def test_semantic_status_examples():
    assert semantic_status(parse_formula("g1 | !g1")) == TAUTOLOGY
    assert semantic_status(parse_formula("g1 & !g1")) == CONTRADICTION
    assert semantic_status(parse_formula("g1")) == CONTINGENT
    assert semantic_status(parse_formula("true")) == TAUTOLOGY
    assert semantic_status(parse_formula("false")) == CONTRADICTION


def _truth_table_status(f):
    # Independent classifier: plain dict-based evaluation over all assignments.
    atoms = sorted(collect_atoms(f), key=render_formula)

    def ev(w, g):
        if isinstance(g, (Atom, EvidenceLabel, NarrationLabel)):
            return w[g]
        if isinstance(g, Top):
            return True
        if isinstance(g, Bottom):
            return False
        if isinstance(g, Not):
            return not ev(w, g.operand)
        if isinstance(g, And):
            return ev(w, g.left) and ev(w, g.right)
        if isinstance(g, Or):
            return ev(w, g.left) or ev(w, g.right)
        if isinstance(g, Implies):
            return (not ev(w, g.left)) or ev(w, g.right)
        return ev(w, g.left) == ev(w, g.right)

    values = {ev(dict(zip(atoms, bits)), f)
              for bits in product((False, True), repeat=len(atoms))}
    if values == {True}:
        return TAUTOLOGY
    if values == {False}:
        return CONTRADICTION
    return CONTINGENT


def test_semantic_status_matches_truth_table_oracle():
    rng = random.Random(99)
    guilt = GuiltDef(constant="G", conjuncts=(Atom("a"), Atom("d")))
    for _ in range(200):
        tree = _random_tree(rng, rng.randint(1, 3))
        expanded = expand_guilt(tree, guilt)
        if len(collect_atoms(expanded)) > 4:
            continue
        assert semantic_status(tree, guilt) == _truth_table_status(expanded)
