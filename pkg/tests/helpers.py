"""Seeded random generators shared by the test modules.

Everything takes an explicit ``random.Random`` so tests stay reproducible;
the acceptance suite uses fixed seeds and records instance counts.
"""

from __future__ import annotations

import itertools
import random

from inclogic import (
    And,
    Assignment,
    Atom,
    Box,
    Diamond,
    Gate,
    Inclusion,
    KripkeModel,
    MonotoneCircuit,
    NegAtom,
    Or,
    PropTeam,
    SetSplitInstance,
    all_assignments,
    renumbered,
)
from inclogic.errors import CircuitInvariantError
from inclogic.reductions import AND, INPUT, OR, DqbfInstance


def gen_param(rng: random.Random, names, *, modal: bool):
    """A small parameter formula for extended inclusion atoms."""
    name = rng.choice(names)
    choices = [Atom(name), NegAtom(name)]
    if modal:
        choices += [Diamond(Atom(name)), Box(Atom(name))]
    roll = rng.randrange(len(choices) + 1)
    if roll == len(choices):
        other = rng.choice(names)
        return And(Atom(name), Atom(other))
    return choices[roll]


def gen_formula(
    rng: random.Random,
    names,
    size: int,
    *,
    modal: bool = True,
    inclusion: bool = True,
    extended: bool = False,
    max_arity: int = 2,
):
    """A random negation-normal-form formula with about ``size`` connectives."""

    def build(budget: int):
        if budget <= 1:
            roll = rng.random()
            if inclusion and roll < 0.3:
                arity = rng.randint(1, max_arity)
                if extended and rng.random() < 0.6:
                    lhs = tuple(gen_param(rng, names, modal=modal) for _ in range(arity))
                    rhs = tuple(gen_param(rng, names, modal=modal) for _ in range(arity))
                else:
                    lhs = tuple(Atom(rng.choice(names)) for _ in range(arity))
                    rhs = tuple(Atom(rng.choice(names)) for _ in range(arity))
                return Inclusion(lhs, rhs)
            name = rng.choice(names)
            return Atom(name) if roll < 0.65 else NegAtom(name)
        if modal and rng.random() < 0.3:
            shape = Diamond if rng.random() < 0.5 else Box
            return shape(build(budget - 1))
        shape = And if rng.random() < 0.5 else Or
        left = rng.randint(1, budget - 1)
        return shape(build(left), build(budget - 1 - left))

    return renumbered(build(max(1, size)))


def gen_model(
    rng: random.Random,
    n_worlds: int,
    names,
    *,
    edge_prob: float = 0.35,
    truth_prob: float = 0.5,
) -> KripkeModel:
    worlds = [f"w{i}" for i in range(n_worlds)]
    edges = [
        (u, v) for u in worlds for v in worlds if rng.random() < edge_prob
    ]
    valuation = {
        p: [w for w in worlds if rng.random() < truth_prob] for p in names
    }
    return KripkeModel(worlds, edges, valuation)


def gen_team(rng: random.Random, model: KripkeModel, max_size: int) -> frozenset:
    size = rng.randint(1, min(max_size, len(model.worlds)))
    return frozenset(rng.sample(list(model.worlds), size))


def gen_prop_team(rng: random.Random, domain, max_rows: int) -> PropTeam:
    rows = all_assignments(domain)
    size = rng.randint(1, min(max_rows, len(rows)))
    return PropTeam(domain, rng.sample(rows, size))


def brute_maxsub_prop(x: PropTeam, atom: Inclusion) -> frozenset:
    """Union of all subteams satisfying the atom, by exhaustive enumeration."""
    from inclogic import eval_inclusion_prop

    lhs = [a.name for a in atom.lhs]
    rhs = [a.name for a in atom.rhs]
    members = list(x.members)
    best: set = set()
    for size in range(len(members) + 1):
        for combo in itertools.combinations(members, size):
            if eval_inclusion_prop(x.subteam(combo), lhs, rhs):
                best.update(combo)
    return frozenset(best)


def gen_circuit(
    rng: random.Random, max_gates: int = 12, max_inputs: int = 3
) -> MonotoneCircuit:
    """A random monotone circuit, retrying until the wiring is valid."""
    for _ in range(1000):
        n = rng.randint(1, max_inputs)
        bool_count = rng.randint(max(1, n - 1), max(max(1, n - 1), max_gates - n))
        total = bool_count + n
        gates = []
        unreferenced = set(range(1, total))
        wirable = True
        for i in range(bool_count):
            pool = list(range(i + 1, total))
            if len(pool) < 2:
                wirable = False
                break
            preferred = sorted(unreferenced.intersection(pool))
            first = rng.choice(preferred) if preferred else rng.choice(pool)
            rest = [g for g in pool if g != first]
            preferred = sorted(unreferenced.intersection(rest))
            second = rng.choice(preferred) if preferred else rng.choice(rest)
            unreferenced.discard(first)
            unreferenced.discard(second)
            kind = AND if rng.random() < 0.5 else OR
            gates.append(Gate(kind, left=first, right=second))
        if not wirable:
            continue
        order = rng.sample(range(1, n + 1), n)
        for index in order:
            gates.append(Gate(INPUT, input_index=index))
        try:
            return MonotoneCircuit(gates)
        except CircuitInvariantError:
            continue
    raise RuntimeError("circuit generation kept producing invalid wiring")


def gen_setsplit(
    rng: random.Random, max_universe: int = 5, max_sets: int = 4
) -> SetSplitInstance:
    k = rng.randint(1, max_universe)
    universe = [f"a{i}" for i in range(1, k + 1)]
    n = rng.randint(1, max_sets)
    sets = []
    for _ in range(n):
        size = rng.randint(1, k)
        sets.append(rng.sample(universe, size))
    covered = set().union(*map(set, sets))
    for element in universe:
        if element not in covered:
            sets[rng.randrange(len(sets))].append(element)
    return SetSplitInstance(sets)


def gen_dqbf(rng: random.Random, *, max_n: int = 2, max_k: int = 2) -> DqbfInstance:
    n = rng.randint(1, max_n)
    k = rng.randint(1, max_k)
    universals = [f"p{i}" for i in range(1, n + 1)]
    existentials = [f"q{j}" for j in range(1, k + 1)]
    constraints = []
    for _ in range(k):
        size = rng.randint(0, min(2, n))
        constraints.append(tuple(rng.sample(universals, size)))
    matrix = gen_formula(
        rng, universals + existentials, rng.randint(1, 4),
        modal=False, inclusion=False,
    )
    return DqbfInstance(universals, existentials, constraints, matrix)


def fig_team() -> tuple[PropTeam, Assignment, Assignment, Assignment]:
    """The three-assignment table used across the regression tests."""
    s1 = Assignment({"p": 1, "q": 0, "r": 0})
    s2 = Assignment({"p": 1, "q": 1, "r": 1})
    s3 = Assignment({"p": 0, "q": 1, "r": 0})
    return PropTeam(["p", "q", "r"], [s1, s2, s3]), s1, s2, s3


def fig_model() -> KripkeModel:
    """Six-world model: three roots pointing into the three-assignment table."""
    return KripkeModel(
        ["w1", "w2", "w3", "s1", "s2", "s3"],
        [("w1", "s1"), ("w2", "s2"), ("w3", "s3"), ("w1", "s2"), ("w3", "s2")],
        {"p": ["s1", "s2"], "q": ["s2", "s3"], "r": ["s2"]},
    )
