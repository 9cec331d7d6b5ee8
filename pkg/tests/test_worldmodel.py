import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracle import Oracle
from randcases import random_case

from narrcred.casefile import (
    audit_probe,
    build_universe,
    bundle,
    load_case,
    partial_credence,
)
from narrcred.formula import (
    CONTINGENT,
    And,
    Atom,
    EvidenceLabel,
    GuiltConst,
    GuiltDef,
    NarrationLabel,
    Not,
    Or,
    conjoin,
    parse_formula,
    render_formula,
    semantic_status,
)
from narrcred.gatecrasher import GatecrasherSpec, generate_case
from narrcred.worldmodel import (
    Distribution,
    PartialCredence,
    StanceValue,
    Thresholds,
    Universe,
    WorldBoundError,
    ZeroConditionError,
    audit_axioms,
    build_prior,
)


def _simple_case(**overrides):
    doc = {
        "atoms": ["g1", "g2"],
        "guilt": {"constant": "G", "conjuncts": ["g1"]},
        "universe": ["g1"],
        "evidence": [],
        "narrations": [{"id": "1", "side": "accusing", "content": ["g1"]}],
    }
    doc.update(overrides)
    return load_case(doc)


class TestThresholds:
    def test_defaults_are_consistent(self):
        t = Thresholds()
        assert t.a > t.s > t.r > t.n
        assert t.r == 1 - t.s and t.n == 1 - t.a

    def test_order_violation(self):
        with pytest.raises(ValueError):
            Thresholds(a=Fraction(17, 20), s=Fraction(17, 20),
                       r=Fraction(3, 20), n=Fraction(3, 20))

    def test_tie_violations(self):
        with pytest.raises(ValueError):
            Thresholds(a=Fraction(99, 100), s=Fraction(17, 20),
                       r=Fraction(1, 10), n=Fraction(1, 100))
        with pytest.raises(ValueError):
            Thresholds(a=Fraction(99, 100), s=Fraction(17, 20),
                       r=Fraction(3, 20), n=Fraction(1, 50))

    def test_extremes_rejected(self):
        with pytest.raises(ValueError):
            Thresholds(a=Fraction(1), s=Fraction(17, 20),
                       r=Fraction(3, 20), n=Fraction(0))


class TestUniverse:
    def test_atom_counting(self):
        case = _simple_case()
        u = build_universe(case)
        assert set(u.atoms) == {Atom("g1"), Atom("g2"),
                                EvidenceLabel(Atom("g1")),
                                NarrationLabel("1", Atom("g1"))}
        assert u.world_count == 16

    def test_no_narrations_only_evidence_labels(self):
        case = _simple_case(narrations=[])
        u = build_universe(case)
        assert set(u.label_atoms) == {EvidenceLabel(Atom("g1"))}

    def test_gatecrasher_universe(self):
        case = generate_case(GatecrasherSpec(n=4))
        u = build_universe(case)
        # 4 base atoms; 5 evidence labels; 2 narrations x 5 narration labels
        assert len(u.base_atoms) == 4
        assert len(u.label_atoms) == 5 + 10
        e = case.evidence[0]
        assert EvidenceLabel(e) in u.label_atoms
        assert NarrationLabel("2", Atom("g3")) in u.label_atoms

    def test_duplicate_atom_rejected(self):
        with pytest.raises(ValueError):
            Universe(base_atoms=(Atom("a"), Atom("a")), label_atoms=(),
                     guilt=GuiltDef(conjuncts=(Atom("a"),)))

    def test_base_bound(self):
        atoms = tuple(Atom(f"b{i}") for i in range(6))
        with pytest.raises(WorldBoundError):
            Universe(base_atoms=atoms, label_atoms=(),
                     guilt=GuiltDef(conjuncts=(atoms[0],)), world_bound=2 ** 5)


class TestDistribution:
    def test_uniform_world_weights(self):
        case = _simple_case()
        dist = build_prior(build_universe(case), ())
        weights = dist.world_weights()
        assert len(weights) == 16
        assert all(w == Fraction(1, 16) for w in weights.values())

    def test_reweight_single_atom(self):
        case = _simple_case(prior={"base": "uniform",
                                   "reweight": [{"formula": "g1", "weight": "3/1"}]})
        dist = build_prior(build_universe(case), case.prior.reweight)
        assert dist.probability(Atom("g1")) == Fraction(3, 4)

    def test_contradictory_reweight_is_inert(self):
        u = build_universe(_simple_case())
        plain = build_prior(u, ())
        rigged = build_prior(u, ((parse_formula("g1 & !g1"), Fraction(2)),))
        assert plain.world_weights() == rigged.world_weights()

    def test_probability_exactly_three_of_four(self):
        case = generate_case(GatecrasherSpec(n=4))
        dist = build_prior(build_universe(case), ())
        e = case.evidence[0]
        assert dist.probability(e) == Fraction(1, 4)

    def test_probability_constants(self):
        dist = build_prior(build_universe(_simple_case()), ())
        assert dist.probability(parse_formula("true")) == 1
        assert dist.probability(parse_formula("false")) == 0

    def test_conditional_gatecrasher_four(self):
        case = generate_case(GatecrasherSpec(n=4))
        dist = build_prior(build_universe(case), ())
        e = case.evidence[0]
        assert dist.conditional(Atom("g1"), (e,)) == Fraction(3, 4)
        assert dist.conditional(Atom("g2"), (e, Atom("g1"))) == Fraction(2, 3)

    def test_conditioning_idempotence(self):
        case = generate_case(GatecrasherSpec(n=4))
        dist = build_prior(build_universe(case), ())
        gamma = bundle(case, "full").members
        for g in gamma:
            assert dist.conditional(g, gamma) == 1

    def test_zero_condition_raises(self):
        dist = build_prior(build_universe(_simple_case()), ())
        with pytest.raises(ZeroConditionError):
            dist.conditional(Atom("g1"), (parse_formula("g1 & !g1"),))

    def test_query_bound_guard(self):
        case = _simple_case()
        u = build_universe(case)
        small = Universe(base_atoms=u.base_atoms, label_atoms=u.label_atoms,
                         guilt=u.guilt, world_bound=4)
        dist = Distribution(universe=small)
        with pytest.raises(WorldBoundError):
            dist.probability(parse_formula("g1 & g2 & E(g1)"))

    def test_complement_additivity(self):
        rng = random.Random(3)
        for seed in range(10):
            case = random_case(random.Random(seed))
            dist = build_prior(build_universe(case), case.prior.reweight)
            for phi in case.universe_sentences:
                assert dist.probability(phi) + dist.probability(Not(phi)) == 1

    def test_entailment_monotonicity(self):
        for seed in range(10):
            case = random_case(random.Random(100 + seed))
            dist = build_prior(build_universe(case), case.prior.reweight)
            for phi in case.universe_sentences:
                weaker = Or(phi, Atom(case.atoms[0]))
                assert dist.probability(phi) <= dist.probability(weaker)


class TestPartialCredence:
    def test_guilt_prior_undefined_when_suspended(self):
        case = _simple_case()
        pc = partial_credence(case)
        assert GuiltConst("G") in case.suspended
        assert not pc.is_defined(GuiltConst("G"), ())

    def test_guilt_defined_given_definition_bundle(self):
        case = _simple_case()
        pc = partial_credence(case)
        gamma = (case.guilt.biconditional(),)
        assert pc.is_defined(GuiltConst("G"), gamma)

    def test_tautology_defined_bare(self):
        pc = partial_credence(_simple_case())
        assert pc.is_defined(parse_formula("true"), ())
        assert pc.credence(parse_formula("true"), ()) == StanceValue.of(Fraction(1))

    def test_contradiction_is_zero_everywhere(self):
        pc = partial_credence(_simple_case())
        assert pc.credence(parse_formula("false"), (Atom("g2"),)).value == 0

    def test_suspended_label_prior_undefined(self):
        case = _simple_case()
        pc = partial_credence(case)
        sv = pc.credence(EvidenceLabel(Atom("g1")), ())
        assert not sv.defined and sv.reason == "suspended"

    def test_zero_mass_bundle_undefined_with_reason(self):
        case = _simple_case()
        pc = partial_credence(case)
        sv = pc.credence(Atom("g2"), (Atom("g1"), Not(Atom("g1"))))
        assert not sv.defined and sv.reason == "zero-mass"

    def test_negation_invariance(self):
        for seed in range(8):
            case = random_case(random.Random(200 + seed))
            pc = partial_credence(case)
            gamma = bundle(case, "evidential").members
            for phi in case.universe_sentences:
                assert pc.is_defined(phi, gamma) == pc.is_defined(Not(phi), gamma)
                assert pc.is_defined(phi, ()) == pc.is_defined(Not(phi), ())

    def test_conjunct_swap_invariance(self):
        for seed in range(8):
            case = random_case(random.Random(300 + seed))
            pc = partial_credence(case)
            sentences = case.universe_sentences
            for a in sentences:
                for b in sentences:
                    f, g = And(a, b), And(b, a)
                    assert pc.is_defined(f, ()) == pc.is_defined(g, ())

    def test_part6_numeric_on_constructive_models(self):
        # Measure zeros coincide with logical zeros under positive reweights,
        # so any defined zero conjunction given a set is unsatisfiable with it.
        for seed in range(8):
            case = random_case(random.Random(400 + seed))
            pc = partial_credence(case)
            gamma = bundle(case, "evidential").members
            for a in case.universe_sentences:
                for b in case.universe_sentences:
                    f = And(a, b)
                    whole = pc.credence(f, gamma)
                    left = pc.credence(a, gamma)
                    if not (whole.defined and left.defined):
                        continue
                    if left.value > 0 and whole.value == 0:
                        conj = conjoin((f,) + gamma)
                        if semantic_status(conj, pc.guilt) != CONTINGENT:
                            continue
                        right = pc.credence(b, gamma)
                        assert right.defined and right.value == 0

    def test_credence_matches_oracle(self):
        for seed in range(10):
            case = random_case(random.Random(500 + seed), unsuspend_labels=seed % 2 == 0)
            pc = partial_credence(case)
            orc = Oracle(case)
            gammas = [(), bundle(case, "evidential").members,
                      bundle(case, "full").members]
            queries = list(case.universe_sentences)
            queries.append(GuiltConst("G"))
            queries += [Not(q) for q in list(queries)]
            for gamma in gammas:
                for q in queries:
                    sv = pc.credence(q, gamma)
                    expected = orc.stance(q, gamma)
                    got = sv.value if sv.defined else None
                    assert got == expected, (seed, render_formula(q), gamma)


class TestAudit:
    def test_constructive_models_pass(self):
        for seed in range(10):
            case = random_case(random.Random(600 + seed))
            report = audit_axioms(partial_credence(case), audit_probe(case))
            assert report.ok, report.violations

    def test_top_instance_passes_with_value_one(self):
        case = _simple_case()
        pc = partial_credence(case)
        gamma = bundle(case, "evidential").members
        report = audit_axioms(pc, [(parse_formula("true"), gamma)])
        assert report.ok and report.checked["part1"] == 1

    def test_zero_mass_probe_skipped(self):
        case = _simple_case()
        pc = partial_credence(case)
        report = audit_axioms(pc, [(Atom("g1"), (parse_formula("g1 & !g1"),))])
        assert report.skipped == 1 and report.ok

    def test_dropped_membership_clause_caught(self):
        case = _simple_case()
        pc = partial_credence(case)

        class Broken(PartialCredence):
            def is_defined(self, f, gamma):
                return semantic_status(f, self.guilt) != CONTINGENT

        report = audit_axioms(Broken(pc.distribution, pc.suspended), audit_probe(case))
        assert any(v.axiom == "part2" for v in report.violations)

    def test_dropped_negation_symmetry_caught(self):
        case = _simple_case()
        pc = partial_credence(case)

        class Broken(PartialCredence):
            def is_defined(self, f, gamma):
                if isinstance(f, Not) and semantic_status(f, self.guilt) == CONTINGENT:
                    return False
                return super().is_defined(f, gamma)

        report = audit_axioms(Broken(pc.distribution, pc.suspended), audit_probe(case))
        assert any(v.axiom == "part3" for v in report.violations)

    def test_dropped_conjunction_clause_caught(self):
        case = _simple_case(universe=["g1", "(g1 & g2)"],
                            suspended_atoms=["G", "g2", "E(g1)", "E((g1 & g2))",
                                             "N1(g1)", "N1((g1 & g2))"])
        pc = partial_credence(case)

        class Broken(PartialCredence):
            def is_defined(self, f, gamma):
                if isinstance(f, And):
                    return True
                return super().is_defined(f, gamma)

        report = audit_axioms(Broken(pc.distribution, pc.suspended), audit_probe(case))
        assert any(v.axiom == "part5" for v in report.violations)

    def test_hand_built_measure_zero_caught_by_part6(self):
        case = _simple_case(universe=["g1", "g2", "(g1 & g2)"])
        pc = partial_credence(case)
        rigged = Distribution(universe=pc.universe,
                              factors=((parse_formula("g1 & g2"), Fraction(0)),))
        broken = PartialCredence(distribution=rigged, suspended=frozenset())
        report = audit_axioms(broken, audit_probe(case))
        assert any(v.axiom == "part6" for v in report.violations)
