"""
Team-semantics evaluation for ML, MINC, ML(∇) and ML(⊽).

Public API:
    from teamlib.semantics import evaluate, eval_point, satisfying_teams, max_subteam
    from teamlib.semantics import EVALUATORS, evaluator_for
"""

import logging

from teamlib.config import OPTIMIZED, EvalMode
from teamlib.errors import BudgetExceeded, FormulaError
from teamlib.formulas.ast import dialect_of
from teamlib.kripke import all_teams
from teamlib.semantics.base import BaseEvaluator, PointEvaluator, check_props, eval_point
from teamlib.semantics.optimized import OptimizedEvaluator
from teamlib.semantics.reference import ReferenceEvaluator

logger = logging.getLogger(__name__)

EVALUATORS = {
    EvalMode.REFERENCE: ReferenceEvaluator,
    EvalMode.OPTIMIZED: OptimizedEvaluator,
}


def evaluator_for(model, formula, config=OPTIMIZED):
    """
    Start an evaluation session for one (model, formula) pair.

    Optimized mode falls back to the reference evaluator for Mixed
    formulas, whose union closure the optimizer does not assume.
    """
    mode = config.mode
    if mode is EvalMode.OPTIMIZED and not dialect_of(formula).union_closed:
        logger.debug("Mixed formula %s: falling back to reference evaluation", formula)
        mode = EvalMode.REFERENCE
    return EVALUATORS[mode](model, formula, config)


def evaluate(model, team, formula, config=OPTIMIZED):
    """K, T ⊨ φ under lax team semantics."""
    return evaluator_for(model, formula, config).satisfies(team)


def satisfying_teams(model, formula, config=OPTIMIZED):
    """‖φ‖ᴷ as a list of teams in subteam order."""
    if 2 ** len(model.worlds) > config.max_steps:
        raise BudgetExceeded(
            f"{2 ** len(model.worlds)} teams exceed the budget of {config.max_steps} steps"
        )
    session = evaluator_for(model, formula, config)
    return [team for team in all_teams(model) if session.satisfies(team)]


def max_subteam(model, team, formula, config=OPTIMIZED):
    """The ⊆-largest S ⊆ T with K, S ⊨ φ."""
    team = model.check_team(team)
    if config.mode is EvalMode.OPTIMIZED and not dialect_of(formula).union_closed:
        raise FormulaError("max_subteam of a Mixed formula needs reference mode")
    return evaluator_for(model, formula, config).max_subteam(team)


__all__ = [
    "EVALUATORS",
    "BaseEvaluator",
    "OptimizedEvaluator",
    "PointEvaluator",
    "ReferenceEvaluator",
    "check_props",
    "eval_point",
    "evaluate",
    "evaluator_for",
    "max_subteam",
    "satisfying_teams",
]
