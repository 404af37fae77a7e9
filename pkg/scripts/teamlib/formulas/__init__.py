"""
Formula syntax: AST, parser, printer, metrics and rewrites.

Public API:
    from teamlib.formulas import parse, to_text
    from teamlib.formulas import modal_depth, occ_nabla, dialect_of, positions
    from teamlib.formulas import nabla_to_nedis, nedis_to_nabla
"""

from teamlib.formulas.ast import (
    And,
    Bot,
    Box,
    Dia,
    Dialect,
    Formula,
    Incl,
    Nab,
    NeDisj,
    NegProp,
    Or,
    Position,
    Prop,
    Top,
    conjoin,
    dialect_of,
    disjoin,
    format_position,
    is_pure_ml,
    modal_depth,
    nedisjoin,
    node_count,
    occ_nabla,
    parse_position,
    positions,
    props_of,
    subformula_at,
)
from teamlib.formulas.parser import FormulaParser, parse
from teamlib.formulas.printer import to_text
from teamlib.formulas.rewrite import nabla_to_nedis, nedis_to_nabla

__all__ = [
    "And",
    "Bot",
    "Box",
    "Dia",
    "Dialect",
    "Formula",
    "FormulaParser",
    "Incl",
    "Nab",
    "NeDisj",
    "NegProp",
    "Or",
    "Position",
    "Prop",
    "Top",
    "conjoin",
    "dialect_of",
    "disjoin",
    "format_position",
    "is_pure_ml",
    "modal_depth",
    "nabla_to_nedis",
    "nedis_to_nabla",
    "nedisjoin",
    "node_count",
    "occ_nabla",
    "parse",
    "parse_position",
    "positions",
    "props_of",
    "subformula_at",
    "to_text",
]
