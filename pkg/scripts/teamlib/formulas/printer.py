"""
Printer for the concrete formula syntax.

Binary children of a different connective are always parenthesised;
a left child with the parent's own connective is not (all binaries are
left-associative), so canonical output reparses to the same tree.
"""

from teamlib.formulas.ast import (
    And,
    Bot,
    Box,
    Dia,
    Incl,
    Nab,
    NeDisj,
    NegProp,
    Or,
    Prop,
    Top,
)

BINARY_SYMBOLS = {And: "&", Or: "|", NeDisj: "|!"}
UNARY_KEYWORDS = {Dia: "dia", Box: "box", Nab: "nab"}


def to_text(formula):
    """Render a formula in the concrete syntax."""
    kind = type(formula)

    if kind is Top:
        return "top"
    if kind is Bot:
        return "bot"
    if kind is Prop:
        return formula.name
    if kind is NegProp:
        return f"~{formula.name}"

    if kind in UNARY_KEYWORDS:
        return f"{UNARY_KEYWORDS[kind]} {_operand(formula.body)}"

    if kind in BINARY_SYMBOLS:
        left = to_text(formula.left)
        if type(formula.left) in BINARY_SYMBOLS and type(formula.left) is not kind:
            left = f"({left})"
        return f"{left} {BINARY_SYMBOLS[kind]} {_operand(formula.right)}"

    if kind is Incl:
        lhs = ", ".join(to_text(arg) for arg in formula.lhs)
        rhs = ", ".join(to_text(arg) for arg in formula.rhs)
        return f"[{lhs} <= {rhs}]"

    raise TypeError(f"not a formula: {formula!r}")


def _operand(formula):
    text = to_text(formula)
    if type(formula) in BINARY_SYMBOLS:
        return f"({text})"
    return text
