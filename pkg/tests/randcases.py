"""Seeded random case documents for property and equivalence testing.

Cases stay tiny (at most 10-12 universe atoms including labels) so that both
the engine and the brute-force oracle stay fast.  Invalid draws (zero-mass
case bundles, contradictory evidence) are rejected and redrawn, keeping the
stream deterministic per seed.
"""

from __future__ import annotations

import random

from narrcred.casefile import CaseLoadError, load_case


def _literal(rng: random.Random, atoms: list[str]) -> str:
    a = rng.choice(atoms)
    return a if rng.random() < 0.7 else f"(!{a})"


def _formula(rng: random.Random, atoms: list[str], depth: int = 2) -> str:
    if depth == 0 or rng.random() < 0.45:
        return _literal(rng, atoms)
    op = rng.choice(["&", "|", "->"])
    return f"({_formula(rng, atoms, depth - 1)} {op} {_formula(rng, atoms, depth - 1)})"


def random_document(rng: random.Random, unsuspend_labels: bool = False) -> dict:
    n_base = rng.randint(2, 3)
    atoms = [f"p{i}" for i in range(n_base)]

    universe = [rng.choice(atoms)]
    if rng.random() < 0.7:
        extra = _formula(rng, atoms)
        if extra not in universe:
            universe.append(extra)

    evidence = [u for u in universe if rng.random() < 0.5][:1]

    narrations = [{
        "id": "1",
        "side": "accusing",
        "content": sorted({rng.choice(universe + atoms)
                           for _ in range(rng.randint(1, 2))}),
    }]
    if rng.random() < 0.7:
        narrations.append({
            "id": "2",
            "side": "defending",
            "content": [f"(!{rng.choice(atoms)})"],
        })

    guilt_conjuncts = [rng.choice(atoms)]
    if rng.random() < 0.3:
        other = rng.choice(atoms)
        if other not in guilt_conjuncts:
            guilt_conjuncts.append(other)

    label_pool = [f"E({u})" for u in universe]
    for n in narrations:
        label_pool.extend(f"N{n['id']}({u})" for u in universe)

    suspended = ["G"] + label_pool
    suspended += [a for a in atoms if rng.random() < 0.4]
    if unsuspend_labels:
        suspended = ["G"] + [lab for lab in label_pool if rng.random() < 0.6]
        suspended += [a for a in atoms if rng.random() < 0.3]

    reweight = []
    for _ in range(rng.randint(0, 2)):
        num = rng.randint(1, 6)
        den = rng.randint(1, 6)
        target = _formula(rng, atoms)
        if unsuspend_labels and rng.random() < 0.3:
            target = rng.choice(label_pool)
        reweight.append({"formula": target, "weight": f"{num}/{den}"})

    thresholds = {"a": "99/100", "s": "17/20", "r": "3/20", "n": "1/100"}
    if rng.random() < 0.3:
        thresholds = {"a": "99/100", "s": "4/5", "r": "1/5", "n": "1/100"}

    return {
        "atoms": atoms,
        "guilt": {"constant": "G", "conjuncts": guilt_conjuncts},
        "universe": universe,
        "evidence": evidence,
        "narrations": narrations,
        "suspended_atoms": sorted(set(suspended)),
        "prior": {"base": "uniform", "reweight": reweight},
        "thresholds": thresholds,
        "search": {
            "max_disjunction": 2,
            "gap_mode": rng.choice(["direct", "commitment"]),
            "commitment_variant": rng.choice(["evidential", "f-extended"]),
        },
    }


def random_case(rng: random.Random, unsuspend_labels: bool = False):
    """A loadable random case; redraws documents the validator rejects."""
    for _ in range(300):
        doc = random_document(rng, unsuspend_labels=unsuspend_labels)
        try:
            return load_case(doc)
        except CaseLoadError:
            continue
    raise AssertionError("could not draw a valid random case")
