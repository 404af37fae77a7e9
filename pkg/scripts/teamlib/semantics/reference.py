"""
Reference evaluator.

A literal reading of the lax truth conditions: disjunctions search every
cover T₁ ∪ T₂ = T, diamonds search every S with T[R]S, nab and |! search
nonempty subteams. Exponential, and the yardstick for every other mode.
"""

from teamlib.formulas.ast import And, Bot, Box, Dia, Incl, Nab, NeDisj, NegProp, Or, Prop, Top
from teamlib.kripke import subteams
from teamlib.semantics.base import BaseEvaluator


class ReferenceEvaluator(BaseEvaluator):
    mode_name = "reference"

    def holds(self, team, position=()):
        return self._sat(self.node(position), position, team)

    def max_subteam(self, team, position=()):
        """Union of every satisfying subteam (a maximum by union closure)."""
        node = self.node(position)
        result = frozenset()
        for candidate in subteams(self.model, team):
            if not candidate <= result and self._sat(node, position, candidate):
                result |= candidate
        return result

    # ── Truth conditions ───────────────────────────────────

    def _sat(self, node, position, team):
        return self.memoised((position, team), lambda: self._compute(node, position, team))

    def _compute(self, node, position, team):
        model = self.model
        kind = type(node)

        if kind is Top:
            return True
        if kind is Bot:
            return not team
        if kind is Prop:
            return team <= model.valuation[node.name]
        if kind is NegProp:
            return not team & model.valuation[node.name]
        if kind is Incl:
            return self.inclusion_holds(node, team)

        left, right = position + (0,), position + (1,)

        if kind is And:
            return self._sat(node.left, left, team) and self._sat(node.right, right, team)
        if kind is Or:
            return self._covers(node, position, team, nonempty=False)
        if kind is NeDisj:
            return not team or self._covers(node, position, team, nonempty=True)
        if kind is Dia:
            return any(
                model.step_rel(team, candidate) and self._sat(node.body, left, candidate)
                for candidate in subteams(model, model.image(team))
            )
        if kind is Box:
            return self._sat(node.body, left, model.image(team))
        if kind is Nab:
            return not team or any(
                self._sat(node.body, left, candidate)
                for candidate in subteams(model, team, nonempty=True)
            )

        raise TypeError(f"not a formula: {node!r}")

    def _covers(self, node, position, team, nonempty):
        """Some T₁ ∪ T₂ = T (overlap allowed) with T₁ ⊨ left and T₂ ⊨ right."""
        left, right = position + (0,), position + (1,)
        for first in subteams(self.model, team, nonempty=nonempty):
            if not self._sat(node.left, left, first):
                continue
            rest = team - first
            for extra in subteams(self.model, first):
                second = rest | extra
                if nonempty and not second:
                    continue
                if self._sat(node.right, right, second):
                    return True
        return False
