"""
Formula syntax trees for ML, MINC, ML(∇) and ML(⊽).

Formulas are in negation normal form: negation only ever wraps a
proposition symbol. Nodes are frozen dataclasses, so structurally equal
formulas compare and hash equal; occurrence identity is tracked by
positions (tuples of child indices), never by equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from teamlib.errors import FormulaError

Position = Tuple[int, ...]


class Formula:
    """Base class of all syntax tree nodes."""

    @property
    def children(self):
        return ()

    def rebuild(self, children):
        """Return a node of the same kind over new children."""
        return self

    def map(self, fn):
        """Apply ``fn`` bottom-up to every node, rebuilding the tree."""
        node = self.rebuild([child.map(fn) for child in self.children])
        return fn(node)

    def walk(self):
        """Preorder traversal of occurrence nodes."""
        yield self
        for child in self.children:
            yield from child.walk()

    def __str__(self):
        from teamlib.formulas.printer import to_text

        return to_text(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class NegProp(Formula):
    name: str


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    @property
    def children(self):
        return (self.left, self.right)

    def rebuild(self, children):
        return type(self)(children[0], children[1])


@dataclass(frozen=True)
class And(_Binary):
    pass


@dataclass(frozen=True)
class Or(_Binary):
    pass


@dataclass(frozen=True)
class NeDisj(_Binary):
    """Nonempty disjunction: both parts witnessed by nonempty subteams."""

    pass


@dataclass(frozen=True)
class _Unary(Formula):
    body: Formula

    @property
    def children(self):
        return (self.body,)

    def rebuild(self, children):
        return type(self)(children[0])


@dataclass(frozen=True)
class Dia(_Unary):
    pass


@dataclass(frozen=True)
class Box(_Unary):
    pass


@dataclass(frozen=True)
class Nab(_Unary):
    """Nonemptiness operator."""

    pass


@dataclass(frozen=True)
class Incl(Formula):
    """Inclusion atom lhs ⊆ rhs over pure modal argument formulas."""

    lhs: Tuple[Formula, ...]
    rhs: Tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not self.lhs or len(self.lhs) != len(self.rhs):
            raise FormulaError(
                f"inclusion atom needs equal-length nonempty sides, "
                f"got {len(self.lhs)} and {len(self.rhs)}"
            )
        for arg in self.lhs + self.rhs:
            if not is_pure_ml(arg):
                raise FormulaError(
                    "inclusion atom arguments must be pure modal formulas "
                    "(no nested inclusion atoms, nab or |!)"
                )

    @property
    def arity(self):
        return len(self.lhs)

    @property
    def children(self):
        return self.lhs + self.rhs

    def rebuild(self, children):
        n = len(self.lhs)
        return Incl(tuple(children[:n]), tuple(children[n:]))


LITERALS = (Top, Bot, Prop, NegProp)
EXTENSIONS = (Incl, Nab, NeDisj)


class Dialect(Enum):
    ML = "ML"
    MINC = "MINC"
    MLNab = "MLNab"
    MLNeDisj = "MLNeDisj"
    Mixed = "Mixed"

    @property
    def union_closed(self):
        return self is not Dialect.Mixed


# ── Structural metrics ─────────────────────────────────────────────────


def is_pure_ml(formula):
    """True if the formula uses none of Incl, Nab, NeDisj."""
    return not any(isinstance(node, EXTENSIONS) for node in formula.walk())


def modal_depth(formula):
    """Nesting depth of dia/box; nab, |! and inclusion atoms add none."""
    if isinstance(formula, (Dia, Box)):
        return modal_depth(formula.body) + 1
    return max((modal_depth(child) for child in formula.children), default=0)


def occ_nabla(formula):
    """Number of nab occurrences in the syntax tree."""
    return sum(1 for node in formula.walk() if isinstance(node, Nab))


def node_count(formula):
    return sum(1 for _ in formula.walk())


def props_of(formula):
    return frozenset(
        node.name for node in formula.walk() if isinstance(node, (Prop, NegProp))
    )


def dialect_of(formula):
    """
    Least dialect admitting the formula.

    A formula mixing nab and |! (without inclusion atoms) is MLNeDisj;
    inclusion atoms together with either nonemptiness connective is Mixed.
    """
    kinds = {type(node) for node in formula.walk()}
    has_incl = Incl in kinds
    has_nab = Nab in kinds
    has_nedisj = NeDisj in kinds

    if has_incl and (has_nab or has_nedisj):
        return Dialect.Mixed
    if has_incl:
        return Dialect.MINC
    if has_nedisj:
        return Dialect.MLNeDisj
    if has_nab:
        return Dialect.MLNab
    return Dialect.ML


def positions(formula):
    """Preorder list of occurrence positions; the root is ()."""
    result = []

    def visit(node, path):
        result.append(path)
        for index, child in enumerate(node.children):
            visit(child, path + (index,))

    visit(formula, ())
    return result


def subformula_at(formula, position):
    node = formula
    for index in position:
        try:
            node = node.children[index]
        except IndexError:
            raise FormulaError(f"no subformula at position {format_position(position)}")
    return node


def format_position(position):
    return ".".join(str(index) for index in position)


def parse_position(text):
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split("."))
    except ValueError:
        raise FormulaError(f"malformed position path '{text}'")


# ── Big operators ──────────────────────────────────────────────────────


def _dedupe(formulas):
    seen = []
    for formula in formulas:
        if formula not in seen:
            seen.append(formula)
    return seen


def conjoin(formulas, top=None):
    """Left-associated conjunction of distinct formulas; empty gives Top."""
    items = _dedupe(formulas)
    if not items:
        return top if top is not None else Top()
    result = items[0]
    for item in items[1:]:
        result = And(result, item)
    return result


def disjoin(formulas, bot=None):
    """Left-associated disjunction of distinct formulas; empty gives Bot."""
    items = _dedupe(formulas)
    if not items:
        return bot if bot is not None else Bot()
    result = items[0]
    for item in items[1:]:
        result = Or(result, item)
    return result


def nedisjoin(formulas, bot=None):
    """Left-associated nonempty disjunction of distinct formulas."""
    items = _dedupe(formulas)
    if not items:
        return bot if bot is not None else Bot()
    result = items[0]
    for item in items[1:]:
        result = NeDisj(result, item)
    return result
