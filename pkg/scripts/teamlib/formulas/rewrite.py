"""
Interdefinability rewrites between nab and nonempty disjunction.

    nab f      ≡  f |! top
    f |! g     ≡  (f | g) & (nab f & nab g)

Both rewrites run bottom-up and preserve modal depth.
"""

from teamlib.errors import FormulaError
from teamlib.formulas.ast import And, Incl, Nab, NeDisj, Or, Top


def _reject_inclusion(formula, name):
    if any(isinstance(node, Incl) for node in formula.walk()):
        raise FormulaError(f"{name}: inclusion atoms are not supported")


def nabla_to_nedis(formula):
    """Replace every nab node by a nonempty disjunction with top."""
    _reject_inclusion(formula, "nabla_to_nedis")

    def step(node):
        if isinstance(node, Nab):
            return NeDisj(node.body, Top())
        return node

    return formula.map(step)


def nedis_to_nabla(formula):
    """Replace every nonempty disjunction by its nab expansion."""
    _reject_inclusion(formula, "nedis_to_nabla")

    def step(node):
        if isinstance(node, NeDisj):
            return And(Or(node.left, node.right), And(Nab(node.left), Nab(node.right)))
        return node

    return formula.map(step)
