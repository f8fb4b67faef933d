"""Executable hardness encodings with independent source-problem oracles.

Three classical problems are encoded into inclusion-logic instances:

* monotone circuit value -> propositional model checking (lax or strict);
* set splitting -> propositional model checking (strict only);
* DQBF non-validity -> modal inclusion formulas whose validity mirrors
  non-validity of the source instance.

Each encoder is paired with a brute-force oracle for the source problem so
the encodings can be cross-validated end to end.  The DQBF encoding also
ships a canonical tree-model builder: the smallest Kripke models satisfying
the structural formula, one per way of labelling universal assignments with
existential values.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import (
    CircuitInvariantError,
    FragmentError,
    PropCollisionError,
    SizeGuardError,
)
from .laxcheck import lax_check
from .oracle import Semantics, eval_pl_tarski
from .strictcheck import strict_check
from .structures import Assignment, KripkeModel, PropTeam
from .syntax import (
    And,
    Atom,
    Box,
    Diamond,
    Formula,
    Fragment,
    Inclusion,
    NegAtom,
    Or,
    box_power,
    conjoin,
    diamond_power,
    disjoin,
    fragment,
    nnf_negate,
    parse_formula,
    props,
    renumbered,
)

# ---------------------------------------------------------------------------
# Monotone circuits

AND = "and"
OR = "or"
INPUT = "input"


@dataclass(frozen=True)
class Gate:
    """One circuit gate: an AND/OR over two later gates, or an input x_t."""

    kind: str
    left: int = -1
    right: int = -1
    input_index: int = 0


class MonotoneCircuit:
    """A monotone Boolean circuit in output-first order.

    Gate 0 is the output.  AND/OR gates reference two distinct gates with
    strictly larger indices (so the listing is reverse-topological and the
    graph is acyclic by construction), every gate except the output feeds
    some other gate, and the inputs x1..xn each label exactly one gate.
    """

    def __init__(self, gates):
        self.gates = tuple(gates)
        if not self.gates:
            raise CircuitInvariantError("a circuit needs at least one gate")
        m = len(self.gates) - 1
        referenced = set()
        input_indices = []
        for i, gate in enumerate(self.gates):
            if gate.kind == INPUT:
                if gate.input_index < 1:
                    raise CircuitInvariantError(
                        f"gate {i}: input index must be at least 1"
                    )
                input_indices.append(gate.input_index)
            elif gate.kind in (AND, OR):
                for child in (gate.left, gate.right):
                    if not i < child <= m:
                        raise CircuitInvariantError(
                            f"gate {i} must reference gates with larger indices"
                        )
                    referenced.add(child)
                if gate.left == gate.right:
                    raise CircuitInvariantError(
                        f"gate {i} needs two distinct operand gates"
                    )
            else:
                raise CircuitInvariantError(f"gate {i}: unknown kind {gate.kind!r}")
        sinks = set(range(m + 1)) - referenced
        if sinks != {0}:
            raise CircuitInvariantError(
                "gate 0 must be the only gate that feeds no other gate"
            )
        n = len(input_indices)
        if sorted(input_indices) != list(range(1, n + 1)):
            raise CircuitInvariantError(
                "input gates must carry the labels x1..xn exactly once each"
            )
        self.n_inputs = n

    def __len__(self):
        return len(self.gates)


def evaluate_circuit(circuit: MonotoneCircuit, bits) -> int:
    """The output of the circuit under the given input bits."""
    bits = tuple(bits)
    if len(bits) != circuit.n_inputs:
        raise CircuitInvariantError(
            f"expected {circuit.n_inputs} input bits, got {len(bits)}"
        )
    if any(b not in (0, 1) for b in bits):
        raise CircuitInvariantError("input bits must be 0 or 1")
    values = {}
    for i in reversed(range(len(circuit.gates))):
        gate = circuit.gates[i]
        if gate.kind == INPUT:
            values[i] = bits[gate.input_index - 1]
        elif gate.kind == AND:
            values[i] = min(values[gate.left], values[gate.right])
        else:
            values[i] = max(values[gate.left], values[gate.right])
    return values[0]


_GATE_RE = re.compile(
    r"^g(\d+)\s*=\s*(?:(AND|OR)\s+g(\d+)\s+g(\d+)|INPUT\s+x(\d+))$"
)


def load_circuit(text: str) -> MonotoneCircuit:
    """Parse the line-per-gate circuit format.

    Lines read ``g<i> = AND g<j> g<k>``, ``g<i> = OR g<j> g<k>`` or
    ``g<i> = INPUT x<t>``; blank lines and ``#`` comments are skipped.  The
    gates must appear pre-sorted: line t defines gate t, and operands must
    point at later lines (the loader validates, it does not sort).
    """
    gates = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _GATE_RE.match(line)
        if match is None:
            raise CircuitInvariantError(f"unreadable gate line: {line!r}")
        index = int(match.group(1))
        if index != len(gates):
            raise CircuitInvariantError(
                f"expected a definition for gate {len(gates)}, found gate {index}"
            )
        if match.group(2) is not None:
            kind = AND if match.group(2) == "AND" else OR
            gates.append(Gate(kind, left=int(match.group(3)), right=int(match.group(4))))
        else:
            gates.append(Gate(INPUT, input_index=int(match.group(5))))
    return MonotoneCircuit(gates)


def _or_prop(k: int, i: int, j: int) -> str:
    return f"p{k}_is_{i}_or_{j}"


def mcvp_encode(circuit: MonotoneCircuit, bits) -> tuple[PropTeam, Formula]:
    """Encode a circuit-plus-input as a team and formula whose model
    checking verdict (lax or strict) equals the circuit output.

    The team holds one assignment per Boolean gate, one per input gate fed
    a 1, and a sentinel that alone satisfies ``p_bot``.  The formula lets a
    split discard the sentinel's disjunct and then forces, via inclusion
    atoms, that gate truth propagates: the output gate is kept, an AND gate
    keeps both operands, an OR gate keeps at least one.
    """
    bits = tuple(bits)
    if len(bits) != circuit.n_inputs:
        raise CircuitInvariantError(
            f"expected {circuit.n_inputs} input bits, got {len(bits)}"
        )
    gates = circuit.gates
    or_props = []
    for k, gate in enumerate(gates):
        if gate.kind == OR:
            i, j = sorted((gate.left, gate.right))
            or_props.append(_or_prop(k, i, j))
    domain = [f"p{i}" for i in range(len(gates))] + ["p_top", "p_bot"] + or_props

    members = []
    for i, gate in enumerate(gates):
        if gate.kind == INPUT and bits[gate.input_index - 1] == 0:
            continue
        values = dict.fromkeys(domain, 0)
        values[f"p{i}"] = 1
        values["p_top"] = 1
        for k, other in enumerate(gates):
            if other.kind == OR and i in (other.left, other.right):
                lo, hi = sorted((other.left, other.right))
                values[_or_prop(k, lo, hi)] = 1
        members.append(Assignment(values))
    bottom = dict.fromkeys(domain, 0)
    bottom["p_top"] = 1
    bottom["p_bot"] = 1
    members.append(Assignment(bottom))
    team = PropTeam(domain, members)

    conjuncts = [Inclusion((Atom("p_top"),), (Atom("p0"),))]
    for i, gate in enumerate(gates):
        if gate.kind == AND:
            for child in (gate.left, gate.right):
                conjuncts.append(
                    Inclusion((Atom(f"p{i}"),), (Atom(f"p{child}"),))
                )
    for k, gate in enumerate(gates):
        if gate.kind == OR:
            i, j = sorted((gate.left, gate.right))
            conjuncts.append(
                Inclusion((Atom(f"p{k}"),), (Atom(_or_prop(k, i, j)),))
            )
    formula = Or(NegAtom("p_bot"), conjoin(conjuncts))
    return team, renumbered(formula)


# ---------------------------------------------------------------------------
# Set splitting


class SetSplitInstance:
    """A family of non-empty subsets whose union is the universe.

    The universe keeps first-appearance order, which fixes the element
    numbering used by the encoder.
    """

    def __init__(self, sets):
        cleaned = []
        universe = []
        seen = set()
        for raw in sets:
            members = []
            for name in raw:
                if name not in members:
                    members.append(name)
                if name not in seen:
                    seen.add(name)
                    universe.append(name)
            if not members:
                raise ValueError("every set in the family must be non-empty")
            cleaned.append(tuple(members))
        self.sets = tuple(cleaned)
        self.universe = tuple(universe)


def load_setsplit(text: str) -> SetSplitInstance:
    """Parse one comma-separated set per line; blanks and ``#`` comments
    are skipped."""
    sets = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        names = [part.strip() for part in line.split(",")]
        if any(not name for name in names):
            raise ValueError(f"malformed set line: {line!r}")
        sets.append(names)
    return SetSplitInstance(sets)


def find_split(inst: SetSplitInstance, *, max_universe: int = 20):
    """A partition of the universe splitting every set, or None."""
    elements = inst.universe
    if len(elements) > max_universe:
        raise SizeGuardError(
            f"universe of {len(elements)} exceeds the guard of {max_universe}"
        )
    memberships = [frozenset(s) for s in inst.sets]
    for mask in range(2 ** len(elements)):
        first = frozenset(e for i, e in enumerate(elements) if mask >> i & 1)
        second = frozenset(elements) - first
        if all(group & first and group & second for group in memberships):
            return first, second
    return None


def split_oracle(inst: SetSplitInstance, *, max_universe: int = 20) -> bool:
    """Whether the universe can be partitioned so every set is split."""
    return find_split(inst, max_universe=max_universe) is not None


def setsplit_encode(inst: SetSplitInstance) -> tuple[PropTeam, Formula]:
    """Encode a set-splitting instance as a team and formula whose strict
    model checking verdict equals the splitting oracle.

    One assignment per element plus two sentinels; the strict split of the
    disjunction partitions the elements, and the inclusion atoms demand
    that each side still realizes every set.  Under lax semantics the two
    sides may overlap, so the lax verdict is not claimed to match.
    """
    k = len(inst.universe)
    n = len(inst.sets)
    domain = (
        [f"p{i}" for i in range(1, k + 1)]
        + [f"q{j}" for j in range(1, n + 1)]
        + ["p_top", "p_c", "p_d"]
    )
    memberships = [frozenset(s) for s in inst.sets]

    members = []
    for i, element in enumerate(inst.universe, start=1):
        values = dict.fromkeys(domain, 0)
        values[f"p{i}"] = 1
        values["p_top"] = 1
        for j, group in enumerate(memberships, start=1):
            if element in group:
                values[f"q{j}"] = 1
        members.append(Assignment(values))
    for sentinel in ("p_c", "p_d"):
        values = dict.fromkeys(domain, 0)
        values[sentinel] = 1
        values["p_top"] = 1
        members.append(Assignment(values))
    team = PropTeam(domain, members)

    def side(sentinel: str) -> Formula:
        parts: list[Formula] = [NegAtom(sentinel)]
        for j in range(1, n + 1):
            parts.append(Inclusion((Atom("p_top"),), (Atom(f"q{j}"),)))
        return conjoin(parts)

    formula = Or(side("p_c"), side("p_d"))
    return team, renumbered(formula)


# ---------------------------------------------------------------------------
# DQBF non-validity

VALID = "valid"
NONVALID = "nonvalid"

_TOP = "p_top"
_BOT = "p_bot"
_THETA = "p_theta"


class DqbfInstance:
    """A simple quantified Boolean formula with per-existential constraint
    sets: for all p's there exist q's, with each q_j computed from the
    universals listed in its constraint, such that the matrix holds."""

    def __init__(self, universals, existentials, constraints, matrix: Formula):
        self.universals = tuple(universals)
        self.existentials = tuple(existentials)
        if not self.universals or not self.existentials:
            raise ValueError("at least one universal and one existential needed")
        named = list(self.universals) + list(self.existentials)
        if len(set(named)) != len(named):
            raise ValueError("quantified proposition names must be distinct")
        if len(constraints) != len(self.existentials):
            raise ValueError("one constraint set per existential is required")
        order = {p: i for i, p in enumerate(self.universals)}
        canonical = []
        for group in constraints:
            group = set(group)
            unknown = group - set(self.universals)
            if unknown:
                raise ValueError(
                    f"constraints may only name universals, not {sorted(unknown)}"
                )
            canonical.append(tuple(sorted(group, key=order.__getitem__)))
        self.constraints = tuple(canonical)
        if fragment(matrix) is not Fragment.PL:
            raise FragmentError("the matrix must be a plain propositional formula")
        extra = props(matrix) - set(named)
        if extra:
            raise ValueError(f"matrix names unquantified propositions {sorted(extra)}")
        self.matrix = matrix

    @property
    def ell(self) -> int:
        return max(len(group) for group in self.constraints)


def load_dqbf(text: str) -> DqbfInstance:
    """Parse the semicolon-separated instance format::

        forall p1 p2 ; exists q1 {p1} ; exists q2 {} ; matrix (p1 & q1)
    """
    clauses = [part.strip() for part in text.strip().split(";")]
    if len(clauses) < 3:
        raise ValueError("expected forall, exists, and matrix clauses")
    head, body, tail = clauses[0], clauses[1:-1], clauses[-1]
    if not head.startswith("forall"):
        raise ValueError("the first clause must declare the universals")
    universals = head[len("forall"):].split()
    existentials = []
    constraints = []
    for clause in body:
        match = re.match(r"^exists\s+(\w+)\s*\{([^{}]*)\}$", clause)
        if match is None:
            raise ValueError(f"unreadable exists clause: {clause!r}")
        existentials.append(match.group(1))
        inner = match.group(2).strip()
        constraints.append(
            tuple(p.strip() for p in inner.split(",")) if inner else ()
        )
    if not tail.startswith("matrix"):
        raise ValueError("the last clause must give the matrix formula")
    matrix = parse_formula(tail[len("matrix"):])
    return DqbfInstance(universals, existentials, constraints, matrix)


def dqbf_oracle(inst: DqbfInstance, *, max_rows: int = 16) -> str:
    """Exhaustively decide the instance: "valid" if some tuple of
    constraint-respecting functions satisfies the matrix under every
    universal assignment, else "nonvalid"."""
    rows = [2 ** len(group) for group in inst.constraints]
    if sum(rows) > max_rows:
        raise SizeGuardError(
            f"{sum(rows)} function-table rows exceed the guard of {max_rows}"
        )
    n = len(inst.universals)
    if n + sum(rows) > 20:
        raise SizeGuardError("instance too large for exhaustive search")
    position = {p: i for i, p in enumerate(inst.universals)}
    tables = [list(itertools.product((0, 1), repeat=r)) for r in rows]
    assignments = list(itertools.product((0, 1), repeat=n))
    for combo in itertools.product(*tables):
        for bits in assignments:
            values = dict(zip(inst.universals, bits))
            for q, group, table in zip(inst.existentials, inst.constraints, combo):
                index = 0
                for p in group:
                    index = index * 2 + bits[position[p]]
                values[q] = table[index]
            if not eval_pl_tarski(Assignment(values), inst.matrix):
                break
        else:
            return VALID
    return NONVALID


def _t_names(ell: int) -> list[str]:
    return [f"t{i}" for i in range(1, ell + 1)]


def _check_reserved(inst: DqbfInstance) -> None:
    reserved = {_TOP, _BOT, _THETA, *_t_names(inst.ell)}
    clash = reserved & (set(inst.universals) | set(inst.existentials))
    if clash:
        raise PropCollisionError(
            f"instance propositions collide with reserved names {sorted(clash)}"
        )


def _branch(name: str) -> Formula:
    return And(Diamond(Atom(name)), Diamond(NegAtom(name)))


def _store(name: str) -> Formula:
    return And(
        Or(NegAtom(name), Box(Atom(name))),
        Or(Atom(name), Box(NegAtom(name))),
    )


def _tree(names) -> Formula:
    parts = [_branch(names[0])]
    for i in range(1, len(names)):
        level = [_branch(names[i])] + [_store(names[j]) for j in range(i)]
        parts.append(box_power(conjoin(level), i))
    return conjoin(parts)


def dqbf_phi_struc(inst: DqbfInstance) -> Formula:
    """The structural formula: a binary tree branching on the universals,
    value trees branching on t1..tl below each leaf, the matrix truth named
    by a proposition at the bottom, and value propagation through the value
    trees."""
    _check_reserved(inst)
    n = len(inst.universals)
    ell = inst.ell
    parts = [_tree(inst.universals)]
    if ell:
        parts.append(box_power(_tree(_t_names(ell)), n))
    theta = inst.matrix
    named = And(
        Or(NegAtom(_THETA), theta),
        Or(Atom(_THETA), nnf_negate(theta)),
    )
    parts.append(box_power(conjoin([named, Atom(_TOP), NegAtom(_BOT)]), n + ell))
    if ell:
        levels = []
        for i in range(1, ell + 1):
            stores = [_store(p) for p in inst.universals]
            stores += [_store(q) for q in inst.existentials]
            levels.append(box_power(conjoin(stores), i))
        parts.append(box_power(conjoin(levels), n))
    return renumbered(conjoin(parts))


def dqbf_phi_cons(inst: DqbfInstance) -> Formula:
    """One disjunct per existential, true when some constraint-equal pair of
    universal assignments received both q-values: the t-prefix names a row of
    the function table and the constant propositions demand both outputs."""
    _check_reserved(inst)
    disjuncts = []
    for q, group in zip(inst.existentials, inst.constraints):

        def row_atom(constant: str) -> Inclusion:
            lhs = tuple(Atom(t) for t in _t_names(len(group))) + (Atom(constant),)
            rhs = tuple(Atom(p) for p in group) + (Atom(q),)
            return Inclusion(lhs, rhs)

        disjuncts.append(And(row_atom(_BOT), row_atom(_TOP)))
    return renumbered(disjoin(disjuncts))


def dqbf_body(inst: DqbfInstance) -> Formula:
    """The quantifier body of the encoding: after walking to the leaves and
    picking a value-tree branch, either some function table is inconsistent
    or some assignment falsified the matrix."""
    inner = Or(
        dqbf_phi_cons(inst),
        Inclusion((Atom(_BOT),), (Atom(_THETA),)),
    )
    return renumbered(
        box_power(diamond_power(inner, inst.ell), len(inst.universals))
    )


def dqbf_encode_nonvalidity(inst: DqbfInstance) -> Formula:
    """The full encoding: models violating the structure satisfy the first
    disjunct; structured models must additionally satisfy the body."""
    struc = dqbf_phi_struc(inst)
    return renumbered(Or(nnf_negate(struc), And(struc, dqbf_body(inst))))


def canonical_models(
    inst: DqbfInstance,
    q_label: Mapping[tuple[int, ...], tuple[int, ...]],
    *,
    max_worlds: int = 4096,
) -> tuple[KripkeModel, frozenset]:
    """The minimal tree model for one labelling of universal assignments
    with existential values, paired with its root team.

    Worlds are bit-strings: the first n bits choose universal values on the
    way down, the remaining bits walk the value tree.  ``q_label`` maps each
    n-bit tuple to a k-bit tuple of existential values, which hold from the
    corresponding leaf downward.  The constant and matrix-truth propositions
    are valued exactly at the bottom level, the only level the encoding
    inspects.
    """
    _check_reserved(inst)
    n = len(inst.universals)
    k = len(inst.existentials)
    ell = inst.ell
    total = 2 ** (n + 1) - 1 + 2**n * (2 ** (ell + 1) - 2)
    if total > max_worlds:
        raise SizeGuardError(f"{total} worlds exceed the guard of {max_worlds}")

    def name(bits: str) -> str:
        return "w" + bits

    worlds = []
    edges = []
    for depth in range(n + ell + 1):
        for bits in itertools.product("01", repeat=depth):
            word = "".join(bits)
            worlds.append(name(word))
            if depth < n + ell:
                edges.append((name(word), name(word + "0")))
                edges.append((name(word), name(word + "1")))

    q_values = {}
    for pbits in itertools.product((0, 1), repeat=n):
        if pbits not in q_label:
            raise ValueError("q_label must cover every universal assignment")
        values = tuple(q_label[pbits])
        if len(values) != k:
            raise ValueError("q_label values must list every existential")
        q_values[pbits] = values

    valuation: dict[str, list[str]] = {p: [] for p in inst.universals}
    valuation.update({q: [] for q in inst.existentials})
    valuation.update({t: [] for t in _t_names(ell)})
    valuation.update({_TOP: [], _BOT: [], _THETA: []})
    for world in worlds:
        bits = world[1:]
        for j, p in enumerate(inst.universals):
            if len(bits) > j and bits[j] == "1":
                valuation[p].append(world)
        for i, t in enumerate(_t_names(ell)):
            if len(bits) > n + i and bits[n + i] == "1":
                valuation[t].append(world)
        if len(bits) >= n:
            pbits = tuple(int(b) for b in bits[:n])
            for r, q in enumerate(inst.existentials):
                if q_values[pbits][r]:
                    valuation[q].append(world)
        if len(bits) == n + ell:
            valuation[_TOP].append(world)
            pbits = tuple(int(b) for b in bits[:n])
            values = dict(zip(inst.universals, pbits))
            values.update(zip(inst.existentials, q_values[pbits]))
            if eval_pl_tarski(Assignment(values), inst.matrix):
                valuation[_THETA].append(world)

    model = KripkeModel(worlds, edges, valuation)
    return model, frozenset({name("")})


def all_q_labels(
    inst: DqbfInstance,
) -> Iterator[dict[tuple[int, ...], tuple[int, ...]]]:
    """Every way of assigning existential values to universal assignments,
    in binary counting order."""
    n = len(inst.universals)
    k = len(inst.existentials)
    leaves = list(itertools.product((0, 1), repeat=n))
    options = list(itertools.product((0, 1), repeat=k))
    for choice in itertools.product(options, repeat=len(leaves)):
        yield dict(zip(leaves, choice))


def dqbf_canonical_sweep(
    inst: DqbfInstance,
    mode: Semantics = Semantics.LAX,
    *,
    max_models: int = 4096,
) -> bool:
    """Whether the quantifier body holds on every canonical model."""
    n = len(inst.universals)
    k = len(inst.existentials)
    count = (2**k) ** (2**n)
    if count > max_models:
        raise SizeGuardError(f"{count} canonical models exceed the guard")
    body = dqbf_body(inst)
    for label in all_q_labels(inst):
        model, team = canonical_models(inst, label)
        if mode is Semantics.LAX:
            ok = lax_check(model, team, body)
        else:
            ok = strict_check(model, team, body)
        if not ok:
            return False
    return True
