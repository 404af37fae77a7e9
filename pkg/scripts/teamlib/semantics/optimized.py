"""
Optimized evaluator.

Every union-closed formula with the empty team property has, inside any
team T, a largest satisfying subteam M(T), and K, T ⊨ φ iff M(T) = T.
M is computed per connective, by greatest-fixpoint pruning where a
connective needs it, and never enumerates subteams.
"""

from teamlib.errors import FormulaError
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
    dialect_of,
)
from teamlib.semantics.base import BaseEvaluator


class OptimizedEvaluator(BaseEvaluator):
    mode_name = "optimized"

    def __init__(self, model, formula, config):
        super().__init__(model, formula, config)
        if not dialect_of(formula).union_closed:
            raise FormulaError("optimized evaluation needs a union-closed dialect")

    def holds(self, team, position=()):
        return self._max(self.node(position), position, team) == team

    def max_subteam(self, team, position=()):
        return self._max(self.node(position), position, team)

    # ── Maximal subteams ───────────────────────────────────

    def _max(self, node, position, team):
        return self.memoised((position, team), lambda: self._compute(node, position, team))

    def _compute(self, node, position, team):
        model = self.model
        kind = type(node)

        if kind is Top:
            return team
        if kind is Bot:
            return frozenset()
        if kind is Prop:
            return team & model.valuation[node.name]
        if kind is NegProp:
            return team - model.valuation[node.name]
        if kind is Incl:
            return self._inclusion_max(node, team)

        left, right = position + (0,), position + (1,)

        if kind is Or:
            return self._max(node.left, left, team) | self._max(node.right, right, team)

        if kind is NeDisj:
            first = self._max(node.left, left, team)
            second = self._max(node.right, right, team)
            return first | second if first and second else frozenset()

        if kind is Nab:
            return team if self._max(node.body, left, team) else frozenset()

        if kind is And:
            current = team
            while True:
                narrowed = self._max(node.right, right, self._max(node.left, left, current))
                if narrowed == current:
                    return current
                current = narrowed

        if kind is Box:
            current = team
            while True:
                successors = model.image(current)
                kept = self._max(node.body, left, successors)
                if kept == successors:
                    return current
                current = frozenset(w for w in current if model.successors(w) <= kept)

        if kind is Dia:
            current = team
            while True:
                kept = self._max(node.body, left, model.image(current))
                narrowed = frozenset(w for w in current if model.successors(w) & kept)
                if narrowed == current:
                    return current
                current = narrowed

        raise TypeError(f"not a formula: {node!r}")

    def _inclusion_max(self, atom, team):
        current = team
        while True:
            available = {self.point.pattern(atom.rhs, v) for v in current}
            narrowed = frozenset(
                w for w in current if self.point.pattern(atom.lhs, w) in available
            )
            if narrowed == current:
                return current
            current = narrowed
