"""
Semantic-game strategies for ML(∇), the element-removal construction,
essential elements, and the exponential lower-bound witness.

A strategy F maps every occurrence position of φ to a team. It is winning
for (K, T) when F(root) = T and every position obeys its connective's
clause:

    p / ~p      F(ψ) ⊆ V(p) / F(ψ) ∩ V(p) = ∅
    top / bot   any team / ∅
    θ₁ & θ₂     F(θ₁) = F(θ₂) = F(ψ)
    θ₁ | θ₂     F(θ₁) ∪ F(θ₂) = F(ψ)
    nab θ       F(θ) ⊆ F(ψ), nonempty when F(ψ) is
    dia θ       F(ψ)[R]F(θ)
    box θ       F(θ) = R[F(ψ)]

A winning strategy exists iff K, T ⊨ φ.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

from teamlib.config import OPTIMIZED
from teamlib.errors import BudgetExceeded, FormulaError, ModelError, RemovalError, StrategyError, WitnessError
from teamlib.formulas.ast import (
    And,
    Bot,
    Box,
    Dia,
    Dialect,
    Incl,
    Nab,
    NegProp,
    Or,
    Position,
    Prop,
    Top,
    dialect_of,
    format_position,
    occ_nabla,
    parse_position,
    positions,
    subformula_at,
)
from teamlib.formulas.parser import parse
from teamlib.kripke import KripkeModel, Team, identity_model, subteams
from teamlib.semantics import evaluate, evaluator_for
from teamlib.semantics.base import check_props

logger = logging.getLogger(__name__)

GAME_DIALECTS = (Dialect.ML, Dialect.MLNab)


def _require_game_formula(formula):
    dialect = dialect_of(formula)
    if dialect not in GAME_DIALECTS:
        raise FormulaError(
            f"semantic games are defined for ML(∇) only, got a {dialect.value} formula "
            "(rewrite |! with nedis_to_nabla first)"
        )


@dataclass(frozen=True)
class Strategy:
    """
    A position → team assignment for one formula over one model.

    Usage:
        strategy = Strategy(formula, model, {(): team, (0,): left, (1,): right})
        strategy[(0,)]
        strategy.positions()
    """

    formula: object
    model: KripkeModel
    assignment: Dict[Position, Team] = field(hash=False)

    def __post_init__(self):
        known = set(positions(self.formula))
        normalised = {}
        for position, team in self.assignment.items():
            position = tuple(position)
            if position not in known:
                raise StrategyError(f"position '{format_position(position)}' is not in the formula")
            try:
                normalised[position] = self.model.check_team(team)
            except ModelError as e:
                raise StrategyError(f"position '{format_position(position)}': {e}")
        object.__setattr__(self, "assignment", normalised)

    def __getitem__(self, position):
        return self.assignment[tuple(position)]

    def positions(self):
        return positions(self.formula)

    def missing(self):
        return [p for p in positions(self.formula) if p not in self.assignment]

    def is_total(self):
        return not self.missing()

    def node(self, position):
        return subformula_at(self.formula, position)


@dataclass(frozen=True)
class EssentialSet:
    """Members of T whose single removal falsifies the formula."""

    members: Team

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, world):
        return world in self.members


# ── Verification ───────────────────────────────────────────────────────


def clause_violation(strategy, position):
    """Describe the clause broken at a position, or None if it holds."""
    model = strategy.model
    node = strategy.node(position)
    team = strategy[position]
    kind = type(node)

    if kind is Top:
        return None
    if kind is Bot:
        return None if not team else "bot needs the empty team"
    if kind is Prop:
        return None if team <= model.valuation[node.name] else f"{node.name} fails on the team"
    if kind is NegProp:
        return None if not team & model.valuation[node.name] else f"~{node.name} fails on the team"

    children = [strategy[position + (i,)] for i in range(len(node.children))]

    if kind is And:
        return None if children[0] == team and children[1] == team else "conjuncts must get the parent team"
    if kind is Or:
        return None if children[0] | children[1] == team else "disjuncts must cover the parent team"
    if kind is Nab:
        (child,) = children
        if not child <= team:
            return "nab child must be a subteam"
        return None if child or not team else "nab child must be nonempty"
    if kind is Dia:
        return None if model.step_rel(team, children[0]) else "dia child is not a successor team"
    if kind is Box:
        return None if children[0] == model.image(team) else "box child must be the full image"

    raise FormulaError(f"no game clause for {kind.__name__}")


def verify_strategy(model, team, formula, strategy):
    """True iff the strategy is winning for K, T ⊨ φ."""
    _require_game_formula(formula)
    if strategy.formula != formula or strategy.model != model:
        raise StrategyError("strategy belongs to a different formula or model")
    missing = strategy.missing()
    if missing:
        shown = ", ".join(repr(format_position(p)) for p in missing)
        raise StrategyError(f"strategy is not total: no team for {shown}")

    team = model.check_team(team)
    if strategy[()] != team:
        logger.debug("root team differs from the queried team")
        return False
    for position in positions(formula):
        problem = clause_violation(strategy, position)
        if problem is not None:
            logger.debug("clause fails at '%s': %s", format_position(position), problem)
            return False
    return True


# ── Search ─────────────────────────────────────────────────────────────


class StrategySearch:
    """
    Top-down construction of a winning strategy.

    Candidate teams for disjunction splits, nab subteams and diamond
    successor teams are tried in subteam order; evaluation of the
    subformula on a candidate prunes branches that cannot succeed.
    """

    def __init__(self, model, formula, config=OPTIMIZED):
        _require_game_formula(formula)
        check_props(model, formula)
        self.model = model
        self.formula = formula
        self.config = config
        self.session = evaluator_for(model, formula, config)
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.config.max_steps:
            raise BudgetExceeded(f"strategy search exceeded {self.config.max_steps} steps")

    def viable(self, team, position):
        self.tick()
        return self.session.holds(team, position)

    def run(self, team):
        team = self.model.check_team(team)
        if not self.viable(team, ()):
            return None
        assignment = self._assign(self.formula, (), team)
        if assignment is None:
            return None
        return Strategy(self.formula, self.model, assignment)

    def _assign(self, node, position, team):
        """Assignment for the subtree at position, or None if no winning one exists."""
        model = self.model
        kind = type(node)
        here = {position: team}
        left, right = position + (0,), position + (1,)

        if kind in (Top, Bot, Prop, NegProp):
            leaf = Strategy(node, model, {(): team})
            return here if clause_violation(leaf, ()) is None else None

        if kind is And:
            return self._combine(here, [(node.left, left, team), (node.right, right, team)])

        if kind is Or:
            for first in subteams(model, team):
                if not self.viable(first, left):
                    continue
                rest = team - first
                for extra in subteams(model, first):
                    second = rest | extra
                    if not self.viable(second, right):
                        continue
                    found = self._combine(here, [(node.left, left, first), (node.right, right, second)])
                    if found is not None:
                        return found
            return None

        if kind is Nab:
            candidates = subteams(model, team, nonempty=True) if team else [frozenset()]
            return self._first(here, node.body, left, candidates)

        if kind is Dia:
            candidates = (
                s for s in subteams(model, model.image(team)) if model.step_rel(team, s)
            )
            return self._first(here, node.body, left, candidates)

        if kind is Box:
            return self._combine(here, [(node.body, left, model.image(team))])

        raise FormulaError(f"no game clause for {kind.__name__}")

    def _first(self, here, body, position, candidates):
        for candidate in candidates:
            if not self.viable(candidate, position):
                continue
            found = self._combine(here, [(body, position, candidate)])
            if found is not None:
                return found
        return None

    def _combine(self, here, parts):
        assignment = dict(here)
        for node, position, team in parts:
            sub = self._assign(node, position, team)
            if sub is None:
                return None
            assignment.update(sub)
        return assignment


def find_strategy(model, team, formula, config=OPTIMIZED):
    """A winning strategy for K, T ⊨ φ, or None when φ fails on T."""
    return StrategySearch(model, formula, config).run(team)


# ── Element removal ────────────────────────────────────────────────────


def removal_blockers(strategy, world):
    """nab positions whose child team is exactly {world}."""
    target = frozenset({world})
    return [
        position
        for position in positions(strategy.formula)
        if isinstance(strategy.node(position), Nab) and strategy[position + (0,)] == target
    ]


def remove_element(strategy, world):
    """
    F'(ψ) = F(ψ) ∖ {a} at every position.

    Needs an identity accessibility relation and no nab position whose
    child team is {a}; then F' is winning for T ∖ {a}.
    """
    model = strategy.model
    if not model.is_identity():
        raise RemovalError("element removal needs a model whose relation is the identity")
    model.check_world(world)
    if not strategy.is_total():
        raise StrategyError("element removal needs a total strategy")
    if world not in strategy[()]:
        raise RemovalError(f"world '{world}' is not in the strategy's team")

    blockers = removal_blockers(strategy, world)
    if blockers:
        shown = ", ".join(repr(format_position(p)) for p in blockers)
        raise RemovalError(
            f"cannot remove '{world}': nab child team is {{{world}}} at {shown}; "
            "removing it may change the verdict"
        )

    reduced = {position: team - {world} for position, team in strategy.assignment.items()}
    return Strategy(strategy.formula, model, reduced)


def essential_elements(model, team, formula, config=OPTIMIZED):
    """A_T: the members of T whose removal falsifies φ."""
    team = model.check_team(team)
    session = evaluator_for(model, formula, config)
    members = frozenset(w for w in model.sort(team) if not session.satisfies(team - {w}))
    return EssentialSet(members)


# ── Lower-bound witness ────────────────────────────────────────────────


def inclusion_atom(n):
    """[p1,…,pn <= q1,…,qn]."""
    return Incl(
        tuple(Prop(f"p{i}") for i in range(1, n + 1)),
        tuple(Prop(f"q{i}") for i in range(1, n + 1)),
    )


def _bits(value, n):
    return format(value, f"0{n}b")


def _witness_world(a, b, n):
    return f"w{_bits(a, n)}{_bits(b, n)}"


def lower_bound_witness(n, config=OPTIMIZED):
    """
    Identity-relation model over p1..pn, q1..qn and a team of 2ⁿ worlds
    satisfying the n-ary inclusion atom, none of which can be removed.

    World w_āb̄ makes pᵢ true iff āᵢ = 1 and qⱼ true iff b̄ⱼ = 1. The team
    pairs each ā with its cyclic successor (ā + 1) mod 2ⁿ.
    """
    if not isinstance(n, int) or n < 1:
        raise WitnessError(f"witness arity must be a positive integer, got {n!r}")
    size = 2 ** n
    if size * size > config.max_steps:
        raise BudgetExceeded(f"witness of arity {n} needs {size * size} worlds, over the budget")

    props = [f"p{i}" for i in range(1, n + 1)] + [f"q{i}" for i in range(1, n + 1)]
    worlds = [_witness_world(a, b, n) for a, b in itertools.product(range(size), repeat=2)]
    valuation = {p: [] for p in props}
    for a, b in itertools.product(range(size), repeat=2):
        world = _witness_world(a, b, n)
        for i, (bit_a, bit_b) in enumerate(zip(_bits(a, n), _bits(b, n)), start=1):
            if bit_a == "1":
                valuation[f"p{i}"].append(world)
            if bit_b == "1":
                valuation[f"q{i}"].append(world)

    model = identity_model(props, worlds, valuation)
    team = frozenset(_witness_world(a, (a + 1) % size, n) for a in range(size))

    atom = inclusion_atom(n)
    if len(team) != size:
        raise WitnessError(f"witness team has {len(team)} members, expected {size}")
    if not evaluate(model, team, atom, config):
        raise WitnessError(f"inclusion atom {atom} fails on the witness team")
    essential = essential_elements(model, team, atom, config)
    if essential.members != team:
        spare = ", ".join(model.sort(team - essential.members))
        raise WitnessError(f"witness members can be removed without falsifying the atom: {spare}")

    logger.debug("built arity-%d witness: %d worlds, team of %d", n, len(worlds), size)
    return model, team


@dataclass(frozen=True)
class RemovalCertificate:
    """A removable world for φ that is essential for the inclusion atom."""

    world: str
    strategy: Strategy


@dataclass(frozen=True)
class AuditReport:
    formula: object
    n: int
    model: KripkeModel
    team: Team
    nabla_count: int
    certificate: Optional[RemovalCertificate] = None

    @property
    def bound(self):
        return 2 ** self.n

    @property
    def attempted(self):
        return self.nabla_count < self.bound


def audit_lower_bound(formula, n, config=OPTIMIZED):
    """
    Run the removal argument for φ on the arity-n witness.

    With fewer than 2ⁿ nab occurrences some witness member is not pinned by
    any nab child team; removing it keeps φ true while falsifying the atom,
    so φ does not define the atom. The certificate names that member.
    """
    _require_game_formula(formula)
    model, team = lower_bound_witness(n, config)
    check_props(model, formula)

    if not evaluate(model, team, formula, config):
        raise WitnessError(
            f"{formula} already fails to define the atom: it does not hold on the witness team"
        )

    count = occ_nabla(formula)
    report = dict(formula=formula, n=n, model=model, team=team, nabla_count=count)
    if count >= 2 ** n:
        logger.debug("%d nab occurrences reach the bound %d: no certificate attempted", count, 2 ** n)
        return AuditReport(**report)

    strategy = find_strategy(model, team, formula, config)
    for world in model.sort(team):
        if removal_blockers(strategy, world):
            continue
        reduced = remove_element(strategy, world)
        if verify_strategy(model, team - {world}, formula, reduced):
            return AuditReport(**report, certificate=RemovalCertificate(world, reduced))

    logger.warning("no removable world found for %s on the arity-%d witness", formula, n)
    return AuditReport(**report)


# ── Documents ──────────────────────────────────────────────────────────


def strategy_to_dict(strategy):
    """Position paths ('' for the root, '0.1' for nested) to sorted world lists."""
    return {
        "formula": str(strategy.formula),
        "assignment": {
            format_position(position): strategy.model.sort(strategy.assignment[position])
            for position in positions(strategy.formula)
            if position in strategy.assignment
        },
    }


def strategy_from_dict(document, model):
    if not isinstance(document, dict) or "formula" not in document:
        raise StrategyError("strategy document must be an object with a 'formula' field")
    formula = parse(document["formula"])
    try:
        assignment = {
            parse_position(path): members
            for path, members in document.get("assignment", {}).items()
        }
    except FormulaError as e:
        raise StrategyError(str(e))
    return Strategy(formula, model, assignment)
