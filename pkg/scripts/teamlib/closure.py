"""
Closure-property verifiers over bounded enumeration domains.

Each check scans every enumerated (model, team) instance in a fixed
order and reports the first counterexample it meets. Counterexamples
carry enough to be re-checked independently with the reference evaluator.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from multiprocessing import Pool
from typing import Optional, Tuple

from teamlib.bisimulation import SignatureTable, check_depth, team_k_bisimilar
from teamlib.config import OPTIMIZED, REFERENCE
from teamlib.errors import ModelError
from teamlib.formulas.ast import modal_depth
from teamlib.kripke import KripkeModel, Team, enumerate_models, subteams
from teamlib.semantics import evaluate, satisfying_teams

logger = logging.getLogger(__name__)


class ClosureProperty(Enum):
    DOWNWARD = "downward"
    UNION = "union"
    EMPTY_TEAM = "empty"
    BISIM_INVARIANCE = "bisim"


@dataclass(frozen=True)
class Domain:
    """
    Bounded stand-in for the class of all models with teams.

    If `models` is given those models are scanned instead of the full
    enumeration up to max_worlds. max_k is the deepest bisimulation depth
    the domain will compare.
    """

    max_worlds: int = 2
    props: Tuple[str, ...] = ("p",)
    max_k: int = 3
    models: Optional[Tuple[KripkeModel, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "props", tuple(self.props))
        if self.models is not None:
            object.__setattr__(self, "models", tuple(self.models))

    def iter_models(self):
        if self.models is not None:
            return iter(self.models)
        return enumerate_models(self.max_worlds, self.props)


@dataclass(frozen=True)
class Counterexample:
    """
    A witnessed violation.

    downward:  models=(K,),     teams=(T, S)       T satisfies, S ⊆ T does not
    union:     models=(K,),     teams=(T₁, T₂)     both satisfy, T₁ ∪ T₂ does not
    empty:     models=(K,),     teams=(∅,)
    bisim:     models=(K, K'),  teams=(T, T')      T satisfies, T' [⇄ₖ] T does not
    """

    property: ClosureProperty
    models: Tuple[KripkeModel, ...]
    teams: Tuple[Team, ...]
    k: Optional[int] = None

    def recheck(self, formula):
        """Re-verify the violation with the reference evaluator."""
        prop = self.property
        if prop is ClosureProperty.DOWNWARD:
            (model,), (team, sub) = self.models, self.teams
            return (
                sub <= team
                and evaluate(model, team, formula, REFERENCE)
                and not evaluate(model, sub, formula, REFERENCE)
            )
        if prop is ClosureProperty.UNION:
            (model,), (first, second) = self.models, self.teams
            return (
                evaluate(model, first, formula, REFERENCE)
                and evaluate(model, second, formula, REFERENCE)
                and not evaluate(model, first | second, formula, REFERENCE)
            )
        if prop is ClosureProperty.EMPTY_TEAM:
            (model,), (team,) = self.models, self.teams
            return not team and not evaluate(model, team, formula, REFERENCE)

        (model, other), (team, other_team) = self.models, self.teams
        return (
            team_k_bisimilar(model, team, other, other_team, self.k)
            and evaluate(model, team, formula, REFERENCE)
            and not evaluate(other, other_team, formula, REFERENCE)
        )

    def describe(self):
        worlds = lambda model, team: "{" + ", ".join(model.sort(team)) + "}"
        if len(self.models) == 2:
            (model, other), (team, other_team) = self.models, self.teams
            return (
                f"T={worlds(model, team)} in model of {len(model.worlds)} worlds vs "
                f"T'={worlds(other, other_team)} in model of {len(other.worlds)} worlds (k={self.k})"
            )
        model = self.models[0]
        shown = ", ".join(worlds(model, team) for team in self.teams)
        return f"teams {shown} in model of {len(model.worlds)} worlds"


@dataclass(frozen=True)
class ClosureReport:
    property: ClosureProperty
    passed: bool
    counterexample: Optional[Counterexample] = None
    instances: int = 0

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"


# ── Instance scanning ──────────────────────────────────────────────────


def _satisfying(job):
    model, formula, config = job
    return satisfying_teams(model, formula, config)


class ClosureChecker:
    """
    Closure-property checker for one formula over one domain.

    Usage:
        checker = ClosureChecker(formula, Domain(max_worlds=2, props=("p",)))
        report = checker.check(ClosureProperty.UNION)
        reports = checker.run_all()
    """

    def __init__(self, formula, domain, config=OPTIMIZED, parallel=False):
        self.formula = formula
        self.domain = domain
        self.config = config
        self.parallel = parallel
        self._instances = None

    def instances(self):
        """[(model, satisfying teams as a set)] in enumeration order."""
        if self._instances is None:
            models = list(self.domain.iter_models())
            jobs = [(model, self.formula, self.config) for model in models]
            if self.parallel and len(jobs) > 1:
                with Pool() as pool:
                    results = pool.map(_satisfying, jobs)
            else:
                results = [_satisfying(job) for job in jobs]
            self._instances = [(model, set(teams)) for model, teams in zip(models, results)]
            logger.debug("evaluated %s on %d models", self.formula, len(models))
        return self._instances

    def check(self, prop, k=None):
        handlers = {
            ClosureProperty.DOWNWARD: self.check_downward,
            ClosureProperty.UNION: self.check_union,
            ClosureProperty.EMPTY_TEAM: self.check_empty_team,
            ClosureProperty.BISIM_INVARIANCE: self.check_bisim_invariance,
        }
        if prop is ClosureProperty.BISIM_INVARIANCE:
            return handlers[prop](k)
        return handlers[prop]()

    def run_all(self, k=None):
        return [self.check(prop, k) for prop in ClosureProperty]

    # ── Properties ─────────────────────────────────────────

    def check_downward(self):
        count = 0
        for model, satisfying in self.instances():
            for team in sorted(satisfying, key=lambda t: _team_key(model, t)):
                for sub in subteams(model, team):
                    count += 1
                    if sub not in satisfying:
                        return self._fail(ClosureProperty.DOWNWARD, (model,), (team, sub), count)
        return ClosureReport(ClosureProperty.DOWNWARD, True, instances=count)

    def check_union(self):
        count = 0
        for model, satisfying in self.instances():
            ordered = sorted(satisfying, key=lambda t: _team_key(model, t))
            for i, first in enumerate(ordered):
                for second in ordered[i + 1:]:
                    count += 1
                    if first | second not in satisfying:
                        return self._fail(ClosureProperty.UNION, (model,), (first, second), count)
        return ClosureReport(ClosureProperty.UNION, True, instances=count)

    def check_empty_team(self):
        count = 0
        for model, satisfying in self.instances():
            count += 1
            if frozenset() not in satisfying:
                return self._fail(ClosureProperty.EMPTY_TEAM, (model,), (frozenset(),), count)
        return ClosureReport(ClosureProperty.EMPTY_TEAM, True, instances=count)

    def check_bisim_invariance(self, k=None):
        """Team k-bisimilar instances must agree; k defaults to the modal depth."""
        k = modal_depth(self.formula) if k is None else k
        check_depth(k)
        if k > self.domain.max_k:
            raise ModelError(f"bisimulation depth {k} exceeds the domain bound max_k={self.domain.max_k}")
        first_seen = {}
        count = 0
        for model, satisfying in self.instances():
            table = SignatureTable(model)
            for team in subteams(model, model.domain):
                count += 1
                verdict = team in satisfying
                signature = table.team_signature(team, k)
                seen = first_seen.setdefault(signature, {})
                opposite = seen.get(not verdict)
                if opposite is not None:
                    here = (model, team)
                    sat, unsat = (here, opposite) if verdict else (opposite, here)
                    return self._fail(
                        ClosureProperty.BISIM_INVARIANCE,
                        (sat[0], unsat[0]),
                        (sat[1], unsat[1]),
                        count,
                        k,
                    )
                seen.setdefault(verdict, (model, team))
        return ClosureReport(ClosureProperty.BISIM_INVARIANCE, True, instances=count)

    def _fail(self, prop, models, teams, count, k=None):
        counterexample = Counterexample(prop, models, teams, k)
        logger.debug("%s closure fails for %s: %s", prop.value, self.formula, counterexample.describe())
        return ClosureReport(prop, False, counterexample, count)


def _team_key(model, team):
    order = [model.worlds.index(w) for w in model.sort(team)]
    return (len(order), order)


# ── Module-level operations ────────────────────────────────────────────


def check_downward(formula, domain, config=OPTIMIZED):
    return ClosureChecker(formula, domain, config).check_downward()


def check_union(formula, domain, config=OPTIMIZED):
    return ClosureChecker(formula, domain, config).check_union()


def check_empty_team(formula, domain, config=OPTIMIZED):
    return ClosureChecker(formula, domain, config).check_empty_team()


def check_bisim_invariance(formula, k, domain, config=OPTIMIZED):
    return ClosureChecker(formula, domain, config).check_bisim_invariance(k)
