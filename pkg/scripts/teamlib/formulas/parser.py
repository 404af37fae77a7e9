"""
Parser for the concrete formula syntax.

Precedence (lowest to highest):
    1. |  |!   (disjunction, nonempty disjunction; left-to-right)
    2. &       (conjunction, left-to-right)
    3. dia box nab   (unary, right-to-left)

Negation ``~`` applies to proposition symbols only; inclusion atoms are
written ``[f1, ..., fn <= g1, ..., gn]`` over pure modal formulas.
"""

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from teamlib.errors import FormulaError, ParseError
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
    is_pure_ml,
)

KEYWORDS = frozenset({"dia", "box", "nab", "top", "bot"})

GRAMMAR = r"""
?start: disj

?disj: conj
     | disj "|" conj        -> or_
     | disj "|!" conj       -> nedisj

?conj: unary
     | conj "&" unary       -> and_

?unary: "dia" unary         -> dia
      | "box" unary         -> box
      | "nab" unary         -> nab
      | "~" unary           -> neg
      | atom

?atom: IDENT                -> prop
     | "top"                -> top
     | "bot"                -> bot
     | "(" disj ")"
     | incl

incl: "[" args "<=" args "]"
args: disj ("," disj)*

IDENT: /[a-zA-Z_][a-zA-Z0-9_]*/

%import common.WS
%ignore WS
"""


@v_args(meta=True)
class _ToFormula(Transformer):
    """Translate the lark tree into teamlib AST nodes."""

    def prop(self, meta, children):
        name = str(children[0])
        if name in KEYWORDS:
            raise ParseError(f"'{name}' is a keyword", meta.line, meta.column)
        return Prop(name)

    def top(self, meta, children):
        return Top()

    def bot(self, meta, children):
        return Bot()

    def neg(self, meta, children):
        (body,) = children
        if not isinstance(body, Prop):
            raise ParseError(
                "negation normal form violated: '~' applies only to proposition symbols",
                meta.line,
                meta.column,
            )
        return NegProp(body.name)

    def dia(self, meta, children):
        return Dia(children[0])

    def box(self, meta, children):
        return Box(children[0])

    def nab(self, meta, children):
        return Nab(children[0])

    def and_(self, meta, children):
        return And(children[0], children[1])

    def or_(self, meta, children):
        return Or(children[0], children[1])

    def nedisj(self, meta, children):
        return NeDisj(children[0], children[1])

    def args(self, meta, children):
        return list(children)

    def incl(self, meta, children):
        lhs, rhs = children
        if len(lhs) != len(rhs):
            raise ParseError(
                f"inclusion atom arity mismatch: {len(lhs)} on the left, {len(rhs)} on the right",
                meta.line,
                meta.column,
            )
        for arg in lhs + rhs:
            if not is_pure_ml(arg):
                if any(isinstance(node, Incl) for node in arg.walk()):
                    reason = "nested inclusion atom"
                else:
                    reason = "inclusion atom arguments must not use nab or |!"
                raise ParseError(reason, meta.line, meta.column)
        try:
            return Incl(tuple(lhs), tuple(rhs))
        except FormulaError as e:
            raise ParseError(str(e), meta.line, meta.column)


class FormulaParser:
    """
    LALR parser for the formula syntax.

    Usage:
        parser = FormulaParser()
        formula = parser.parse("[p1, p2 <= q1, q2] & nab p1")
    """

    def __init__(self):
        self._lark = Lark(GRAMMAR, parser="lalr", propagate_positions=True)
        self._transformer = _ToFormula()

    def parse(self, text):
        if not text or not text.strip():
            raise ParseError("empty formula")

        try:
            tree = self._lark.parse(text)
        except UnexpectedEOF:
            raise ParseError("unexpected end of formula")
        except UnexpectedCharacters as e:
            raise ParseError(f"unexpected character {text[e.pos_in_stream]!r}", e.line, e.column)
        except UnexpectedInput as e:
            token = getattr(e, "token", None)
            if token is None or token.type == "$END":
                raise ParseError("unexpected end of formula")
            raise ParseError(f"unexpected '{token}'", e.line, e.column)

        try:
            return self._transformer.transform(tree)
        except VisitError as e:
            if isinstance(e.orig_exc, ParseError):
                raise e.orig_exc
            raise


_DEFAULT_PARSER = None


def parse(text):
    """Parse formula text with a shared parser instance."""
    global _DEFAULT_PARSER
    if _DEFAULT_PARSER is None:
        _DEFAULT_PARSER = FormulaParser()
    return _DEFAULT_PARSER.parse(text)
