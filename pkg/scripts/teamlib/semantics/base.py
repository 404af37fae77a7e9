"""
Base evaluator class for team semantics.

Subclasses implement `holds()` for one (model, formula) session.
Shared logic (budget accounting, memo table, proposition checks,
pointwise evaluation of inclusion-atom arguments) lives here.
"""

from abc import ABC, abstractmethod

from teamlib.errors import BudgetExceeded, FormulaError, ModelError
from teamlib.formulas.ast import (
    And,
    Bot,
    Box,
    Dia,
    NegProp,
    Or,
    Prop,
    Top,
    is_pure_ml,
    props_of,
    subformula_at,
)


class PointEvaluator:
    """
    Single-world Kripke semantics for pure modal formulas.

    Memoised per (formula, world); structurally equal formulas share entries.
    """

    def __init__(self, model):
        self.model = model
        self._memo = {}

    def holds(self, formula, world):
        key = (formula, world)
        if key not in self._memo:
            self._memo[key] = self._compute(formula, world)
        return self._memo[key]

    def _compute(self, formula, world):
        model = self.model
        kind = type(formula)

        if kind is Top:
            return True
        if kind is Bot:
            return False
        if kind is Prop:
            return model.holds(formula.name, world)
        if kind is NegProp:
            return not model.holds(formula.name, world)
        if kind is And:
            return self.holds(formula.left, world) and self.holds(formula.right, world)
        if kind is Or:
            return self.holds(formula.left, world) or self.holds(formula.right, world)
        if kind is Dia:
            return any(self.holds(formula.body, v) for v in model.successors(world))
        if kind is Box:
            return all(self.holds(formula.body, v) for v in model.successors(world))

        raise FormulaError(f"pointwise evaluation needs a pure modal formula, got {kind.__name__}")

    def pattern(self, formulas, world):
        """Truth-value tuple of formulas at a world."""
        return tuple(self.holds(f, world) for f in formulas)


def eval_point(model, world, formula):
    """K, w ⊨ φ for pure modal φ, by standard Kripke semantics."""
    if not is_pure_ml(formula):
        raise FormulaError("eval_point needs a pure modal formula")
    model.check_world(world)
    check_props(model, formula)
    return PointEvaluator(model).holds(formula, world)


def check_props(model, formula):
    unknown = sorted(props_of(formula) - set(model.props))
    if unknown:
        raise ModelError(f"unknown proposition(s): {', '.join(unknown)}")


class BaseEvaluator(ABC):
    """
    Abstract base for team-semantics evaluators.

    Subclasses must define:
        mode_name:  str    — "reference" or "optimized"
        holds():    method — K, T ⊨ subformula at a position
    """

    mode_name = None  # Override in subclass

    def __init__(self, model, formula, config):
        check_props(model, formula)
        self.model = model
        self.formula = formula
        self.config = config
        self.point = PointEvaluator(model)
        self.steps = 0
        self._memo = {}

    # ── Budget ─────────────────────────────────────────────

    def tick(self):
        self.steps += 1
        if self.steps > self.config.max_steps:
            raise BudgetExceeded(
                f"{self.mode_name} evaluation exceeded {self.config.max_steps} steps"
            )

    def memoised(self, key, compute):
        """Look up or compute a (position, team) entry, charging the budget."""
        if self.config.memo_enabled and key in self._memo:
            return self._memo[key]
        self.tick()
        value = compute()
        if self.config.memo_enabled:
            self._memo[key] = value
        return value

    # ── Inclusion atoms ────────────────────────────────────

    def inclusion_holds(self, atom, team):
        """∀w ∈ T ∃v ∈ T with matching truth-value patterns."""
        available = {self.point.pattern(atom.rhs, v) for v in team}
        return all(self.point.pattern(atom.lhs, w) in available for w in team)

    # ── Interface ──────────────────────────────────────────

    def node(self, position):
        return subformula_at(self.formula, position)

    def satisfies(self, team):
        """K, T ⊨ φ for the session formula."""
        return self.holds(self.model.check_team(team), ())

    @abstractmethod
    def holds(self, team, position=()):
        """K, T ⊨ the subformula occurring at position."""
        ...

    @abstractmethod
    def max_subteam(self, team, position=()):
        """The ⊆-largest subteam of T satisfying the subformula at position."""
        ...

