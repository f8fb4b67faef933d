"""Formula syntax: AST, parser, printer, and basic formula utilities.

Concrete grammar (ASCII, whitespace-insensitive)::

    formula  := disj
    disj     := conj ('|' conj)*
    conj     := unary ('&' unary)*
    unary    := '<>' unary | '[]' unary | primary
    primary  := ident | '!' ident | '(' formula ')' | incl
    incl     := '[' flist '<=' flist ']'
    flist    := formula (',' formula)*
    ident    := [A-Za-z_][A-Za-z0-9_]*

'&' binds tighter than '|', both are left associative, and the modalities
'<>' (diamond) and '[]' (box) bind tighter than both.  Negation applies to
proposition symbols only, so ``!(p & q)`` is a syntax error and every formula
is in negation normal form by construction.  ``[p,q <= r,s]`` is an inclusion
atom whose two parameter lists must have equal, positive length; parameters
may be arbitrary formulas (the extended fragment), plain proposition symbols
in the non-extended fragments.
"""

from __future__ import annotations

import enum
import itertools
from typing import Iterable

from .errors import ArityError, NotEmincError, NotMlError, ParseError

_ids = itertools.count()


class Fragment(enum.Enum):
    """Syntactic fragments, from plain propositional up to extended modal."""

    PL = "PL"
    PLINC = "PLinc"
    ML = "ML"
    MINC = "Minc"
    EMINC = "EMinc"


class Formula:
    """Base class of all formula nodes.

    Every node carries a unique integer occurrence id (``oid``) so that equal
    subformulas at different positions stay distinguishable, e.g. as keys of
    labelling tables.  Structural equality and hashing ignore occurrence ids.
    """

    __slots__ = ("oid", "_fragment")

    def __init__(self):
        self.oid = next(_ids)
        self._fragment = None

    def children(self) -> tuple["Formula", ...]:
        return ()

    def __str__(self) -> str:
        return render_formula(self)

    def __repr__(self) -> str:
        return render_formula(self)


class Atom(Formula):
    """A proposition symbol."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        super().__init__()
        self.name = name

    def __eq__(self, other):
        return isinstance(other, Atom) and self.name == other.name

    def __hash__(self):
        return hash(("p", self.name))


class NegAtom(Formula):
    """A negated proposition symbol (negation exists only at this level)."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        super().__init__()
        self.name = name

    def __eq__(self, other):
        return isinstance(other, NegAtom) and self.name == other.name

    def __hash__(self):
        return hash(("!p", self.name))


class And(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        super().__init__()
        self.left = left
        self.right = right

    def children(self):
        return (self.left, self.right)

    def __eq__(self, other):
        return isinstance(other, And) and self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash(("and", self.left, self.right))


class Or(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        super().__init__()
        self.left = left
        self.right = right

    def children(self):
        return (self.left, self.right)

    def __eq__(self, other):
        return isinstance(other, Or) and self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash(("or", self.left, self.right))


class Diamond(Formula):
    __slots__ = ("child",)

    def __init__(self, child: Formula):
        super().__init__()
        self.child = child

    def children(self):
        return (self.child,)

    def __eq__(self, other):
        return isinstance(other, Diamond) and self.child == other.child

    def __hash__(self):
        return hash(("dia", self.child))


class Box(Formula):
    __slots__ = ("child",)

    def __init__(self, child: Formula):
        super().__init__()
        self.child = child

    def children(self):
        return (self.child,)

    def __eq__(self, other):
        return isinstance(other, Box) and self.child == other.child

    def __hash__(self):
        return hash(("box", self.child))


class Inclusion(Formula):
    """An inclusion atom ``[a1,..,an <= b1,..,bn]``.

    Satisfied by a team when every member's tuple of left-hand values is also
    realized as some member's tuple of right-hand values.
    """

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: Iterable[Formula], rhs: Iterable[Formula]):
        super().__init__()
        lhs = tuple(lhs)
        rhs = tuple(rhs)
        if not lhs or not rhs:
            raise ArityError("inclusion atom parameter lists must be non-empty")
        if len(lhs) != len(rhs):
            raise ArityError(
                f"inclusion atom sides must have equal length, got {len(lhs)} and {len(rhs)}"
            )
        self.lhs = lhs
        self.rhs = rhs

    def children(self):
        return self.lhs + self.rhs

    def __eq__(self, other):
        return isinstance(other, Inclusion) and self.lhs == other.lhs and self.rhs == other.rhs

    def __hash__(self):
        return hash(("incl", self.lhs, self.rhs))


LITERALS = (Atom, NegAtom, Inclusion)


# ---------------------------------------------------------------------------
# Parsing


def _tokenize(text: str) -> list[tuple[str, int, str]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "<":
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == ">":
                tokens.append(("<>", i, "<>"))
                i += 2
                continue
            if nxt == "=":
                tokens.append(("<=", i, "<="))
                i += 2
                continue
            raise ParseError("expected '<>' or '<='", i)
        if c == "[" and i + 1 < n and text[i + 1] == "]":
            tokens.append(("[]", i, "[]"))
            i += 2
            continue
        if c in "&|!()[],":
            tokens.append((c, i, c))
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", i, text[i:j]))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("eof", n, ""))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def take(self, kind: str):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            got = tok[2] or "end of input"
            raise ParseError(f"expected {kind!r}, got {got!r}", tok[1])
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        f = self.disj()
        tok = self.tokens[self.pos]
        if tok[0] != "eof":
            raise ParseError(f"unexpected trailing input {tok[2]!r}", tok[1])
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take("|")
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take("&")
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek() == "<>":
            self.take("<>")
            return Diamond(self.unary())
        if self.peek() == "[]":
            self.take("[]")
            return Box(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind = self.peek()
        if kind == "ident":
            tok = self.take("ident")
            return Atom(tok[2])
        if kind == "!":
            self.take("!")
            tok = self.take("ident")
            return NegAtom(tok[2])
        if kind == "(":
            self.take("(")
            f = self.disj()
            self.take(")")
            return f
        if kind == "[":
            open_tok = self.take("[")
            lhs = self.flist()
            self.take("<=")
            rhs = self.flist()
            self.take("]")
            if len(lhs) != len(rhs):
                raise ParseError(
                    f"inclusion atom sides must have equal length, got {len(lhs)} and {len(rhs)}",
                    open_tok[1],
                )
            return Inclusion(lhs, rhs)
        tok = self.tokens[self.pos]
        got = tok[2] or "end of input"
        raise ParseError(f"expected a formula, got {got!r}", tok[1])

    def flist(self) -> list[Formula]:
        parts = [self.disj()]
        while self.peek() == ",":
            self.take(",")
            parts.append(self.disj())
        return parts


def parse_formula(text: str) -> Formula:
    """Parse formula text into an AST with occurrence ids 0..n-1 assigned in
    bottom-up, left-to-right order."""
    f = _Parser(_tokenize(text)).parse()
    f = renumbered(f)
    fragment(f)
    return f


def render_formula(f: Formula) -> str:
    """Render an AST back to concrete syntax; binary connectives are always
    parenthesized, so parsing the result reproduces the same structure."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, NegAtom):
        return "!" + f.name
    if isinstance(f, And):
        return f"({render_formula(f.left)} & {render_formula(f.right)})"
    if isinstance(f, Or):
        return f"({render_formula(f.left)} | {render_formula(f.right)})"
    if isinstance(f, Diamond):
        return "<>" + render_formula(f.child)
    if isinstance(f, Box):
        return "[]" + render_formula(f.child)
    if isinstance(f, Inclusion):
        lhs = ",".join(render_formula(p) for p in f.lhs)
        rhs = ",".join(render_formula(p) for p in f.rhs)
        return f"[{lhs} <= {rhs}]"
    raise TypeError(f"not a formula node: {f!r}")


# ---------------------------------------------------------------------------
# Structural utilities


def renumbered(f: Formula) -> Formula:
    """Rebuild a formula with occurrence ids 0..n-1 in bottom-up,
    left-to-right order.

    The rebuild also copies apart any node objects that appear at several
    positions, so the result is always a proper tree with unique ids.
    """
    counter = itertools.count()

    def build(node: Formula) -> Formula:
        if isinstance(node, Atom):
            new: Formula = Atom(node.name)
        elif isinstance(node, NegAtom):
            new = NegAtom(node.name)
        elif isinstance(node, And):
            new = And(build(node.left), build(node.right))
        elif isinstance(node, Or):
            new = Or(build(node.left), build(node.right))
        elif isinstance(node, Diamond):
            new = Diamond(build(node.child))
        elif isinstance(node, Box):
            new = Box(build(node.child))
        elif isinstance(node, Inclusion):
            new = Inclusion(
                tuple(build(p) for p in node.lhs),
                tuple(build(p) for p in node.rhs),
            )
        else:
            raise TypeError(f"not a formula node: {node!r}")
        new.oid = next(counter)
        return new

    return build(f)


def sub_occurrences(f: Formula) -> list[tuple[int, Formula]]:
    """All nodes of the tree as (occurrence id, node) pairs, children before
    parents, left to right."""
    out: list[tuple[int, Formula]] = []

    def walk(node: Formula):
        for c in node.children():
            walk(c)
        out.append((node.oid, node))

    walk(f)
    if len({oid for oid, _ in out}) != len(out):
        raise ValueError("formula tree reuses node objects; pass it through renumbered() first")
    return out


def props(f: Formula) -> set[str]:
    """All proposition symbols occurring anywhere in the formula."""
    out: set[str] = set()

    def walk(node: Formula):
        if isinstance(node, (Atom, NegAtom)):
            out.add(node.name)
        for c in node.children():
            walk(c)

    walk(f)
    return out


def modal_depth(f: Formula) -> int:
    """Maximum nesting depth of modalities; inclusion parameters count."""
    if isinstance(f, (Atom, NegAtom)):
        return 0
    if isinstance(f, (And, Or, Inclusion)):
        return max(modal_depth(c) for c in f.children())
    if isinstance(f, (Diamond, Box)):
        return 1 + modal_depth(f.child)
    raise TypeError(f"not a formula node: {f!r}")


def fragment(f: Formula) -> Fragment:
    """Classify a formula into the smallest fragment containing it.

    Formulas whose inclusion parameters are not all plain proposition symbols
    are classified EMinc, including malformed ones with nested inclusion
    atoms inside parameters; those are rejected later, by NotEmincError, when
    the parameters are actually used.
    """
    if f._fragment is None:
        f._fragment = _classify(f)
    return f._fragment


def _classify(f: Formula) -> Fragment:
    modal = False
    incl = False
    extended = False

    def walk(node: Formula):
        nonlocal modal, incl, extended
        if isinstance(node, (Diamond, Box)):
            modal = True
        elif isinstance(node, Inclusion):
            incl = True
            for p in node.lhs + node.rhs:
                if not isinstance(p, Atom):
                    extended = True
        for c in node.children():
            walk(c)

    walk(f)
    if extended:
        return Fragment.EMINC
    if incl:
        return Fragment.MINC if modal else Fragment.PLINC
    return Fragment.ML if modal else Fragment.PL


def nnf_negate(f: Formula) -> Formula:
    """Negate a plain modal-logic formula, pushing negation to the atoms."""

    def neg(node: Formula) -> Formula:
        if isinstance(node, Atom):
            return NegAtom(node.name)
        if isinstance(node, NegAtom):
            return Atom(node.name)
        if isinstance(node, And):
            return Or(neg(node.left), neg(node.right))
        if isinstance(node, Or):
            return And(neg(node.left), neg(node.right))
        if isinstance(node, Diamond):
            return Box(neg(node.child))
        if isinstance(node, Box):
            return Diamond(neg(node.child))
        raise NotMlError("negation is only defined for formulas without inclusion atoms")

    return neg(f)


def fresh_props(base: str, count: int, avoid: Iterable[str]) -> list[str]:
    """``count`` proposition names of the form base0, base1, ..., skipping
    any that collide with ``avoid``."""
    avoid = set(avoid)
    out: list[str] = []
    for i in itertools.count():
        if len(out) == count:
            break
        name = f"{base}{i}"
        if name not in avoid:
            out.append(name)
    return out


# ---------------------------------------------------------------------------
# Small constructors used by translations and encoders


def conjoin(parts: Iterable[Formula]) -> Formula:
    """Left-associated conjunction of a non-empty sequence."""
    parts = list(parts)
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disjoin(parts: Iterable[Formula]) -> Formula:
    """Left-associated disjunction of a non-empty sequence."""
    parts = list(parts)
    if not parts:
        raise ValueError("empty disjunction")
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def box_power(f: Formula, n: int) -> Formula:
    for _ in range(n):
        f = Box(f)
    return f


def diamond_power(f: Formula, n: int) -> Formula:
    for _ in range(n):
        f = Diamond(f)
    return f


# ---------------------------------------------------------------------------
# Extended inclusion atoms: shared parameter plumbing


def _contains_inclusion(f: Formula) -> bool:
    if isinstance(f, Inclusion):
        return True
    return any(_contains_inclusion(c) for c in f.children())


def extended_params(f: Formula) -> list[Formula]:
    """The distinct non-atomic inclusion parameters of ``f``, in order of
    first occurrence.

    Parameters must be plain modal-logic formulas; a nested inclusion atom
    inside a parameter raises NotEmincError.  Duplicates are identified by
    rendered text.
    """
    seen: set[str] = set()
    order: list[Formula] = []

    def walk(node: Formula):
        if isinstance(node, Inclusion):
            for p in node.lhs + node.rhs:
                if isinstance(p, Atom):
                    continue
                if _contains_inclusion(p):
                    raise NotEmincError(
                        "inclusion parameters must be plain modal formulas, "
                        f"got {render_formula(p)!r}"
                    )
                key = render_formula(p)
                if key not in seen:
                    seen.add(key)
                    order.append(p)
            return
        for c in node.children():
            walk(c)

    walk(f)
    return order


def substitute_params(f: Formula, mapping: dict[str, str]) -> Formula:
    """Replace non-atomic inclusion parameters by proposition symbols.

    ``mapping`` sends a parameter's rendered text to the replacement name.
    The result is rebuilt with fresh occurrence ids.
    """

    def build(node: Formula) -> Formula:
        if isinstance(node, Inclusion):
            return Inclusion(
                tuple(_subst_param(p, mapping) for p in node.lhs),
                tuple(_subst_param(p, mapping) for p in node.rhs),
            )
        if isinstance(node, Atom):
            return Atom(node.name)
        if isinstance(node, NegAtom):
            return NegAtom(node.name)
        if isinstance(node, And):
            return And(build(node.left), build(node.right))
        if isinstance(node, Or):
            return Or(build(node.left), build(node.right))
        if isinstance(node, Diamond):
            return Diamond(build(node.child))
        if isinstance(node, Box):
            return Box(build(node.child))
        raise TypeError(f"not a formula node: {node!r}")

    return renumbered(build(f))


def _subst_param(p: Formula, mapping: dict[str, str]) -> Formula:
    if isinstance(p, Atom):
        return Atom(p.name)
    return Atom(mapping[render_formula(p)])
