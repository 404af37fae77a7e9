"""
Characteristic formulas.

    hintikka   χᵏ of a pointed model (satisfied exactly by its k-bisimilar points)
    eta        ⋁ χᵏ over a team        (range totality)
    psi        eta ∧ ⋀ χᵤ ⊆ χᵥ         (team k-bisimilarity, MINC)
    zeta       eta ∧ ⋀ nab χᵥ          (team k-bisimilarity, ML(∇))
    nedis_char |!-disjunction of χᵥ     (team k-bisimilarity, ML(⊽))

`synthesize` disjoins one of the last three over a finite list of
(model, team) samples, defining their closure under unions,
k-bisimulation and the empty team.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Union

from teamlib.errors import FormulaError, ModelError
from teamlib.formulas.ast import (
    And,
    Bot,
    Box,
    Dia,
    Incl,
    Nab,
    NegProp,
    Or,
    Prop,
    Top,
    conjoin,
    disjoin,
    nedisjoin,
)
from teamlib.kripke import KripkeModel, Team

logger = logging.getLogger(__name__)


class BotEncoding(Enum):
    CONSTANT = "constant"
    LITERAL_PAIR = "literal"


class CharDialect(Enum):
    MINC = "MINC"
    MLNab = "MLNab"
    MLNeDisj = "MLNeDisj"


@dataclass(frozen=True)
class CharRequest:
    model: KripkeModel
    team_or_world: Union[Team, str]
    k: int
    dialect: CharDialect = CharDialect.MINC
    bot_encoding: BotEncoding = BotEncoding.CONSTANT
    minimize: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise FormulaError("k must be non-negative")
        if self.bot_encoding is BotEncoding.LITERAL_PAIR and not self.model.props:
            raise FormulaError("literal encoding of top/bot needs at least one proposition")

    def build(self):
        builder = HintikkaBuilder(self.model, self.bot_encoding)
        if isinstance(self.team_or_world, str):
            return builder.hintikka(self.team_or_world, self.k)
        return builder.characteristic(self.team_or_world, self.k, self.dialect, self.minimize)


class HintikkaBuilder:
    """
    Hintikka formulas of one model, memoised per (world, k).

    Usage:
        builder = HintikkaBuilder(model)
        builder.hintikka("w", 2)
        builder.psi(frozenset({"w", "v"}), 1)
    """

    def __init__(self, model, bot_encoding=BotEncoding.CONSTANT):
        if bot_encoding is BotEncoding.LITERAL_PAIR and not model.props:
            raise FormulaError("literal encoding of top/bot needs at least one proposition")
        self.model = model
        self.bot_encoding = bot_encoding
        self._memo = {}

    # ── Constants ──────────────────────────────────────────

    @property
    def top(self):
        if self.bot_encoding is BotEncoding.LITERAL_PAIR:
            p = self.model.props[0]
            return Or(Prop(p), NegProp(p))
        return Top()

    @property
    def bot(self):
        if self.bot_encoding is BotEncoding.LITERAL_PAIR:
            p = self.model.props[0]
            return And(Prop(p), NegProp(p))
        return Bot()

    # ── Hintikka formulas ──────────────────────────────────

    def hintikka(self, world, k):
        """χᵏ_{K,w}."""
        if k < 0:
            raise FormulaError("k must be non-negative")
        self.model.check_world(world)
        key = (world, k)
        if key not in self._memo:
            self._memo[key] = self._build(world, k)
        return self._memo[key]

    def _build(self, world, k):
        model = self.model
        if k == 0:
            literals = [
                Prop(p) if model.holds(p, world) else NegProp(p) for p in model.props
            ]
            return conjoin(literals, top=self.top)

        successors = [self.hintikka(v, k - 1) for v in model.sort(model.successors(world))]
        parts = [self.hintikka(world, k - 1)]
        parts.extend(Dia(chi) for chi in successors)
        parts.append(Box(disjoin(successors, bot=self.bot)))
        return conjoin(parts, top=self.top)

    def distinct(self, team, k):
        """Distinct Hintikka formulas of the team's members, in world order."""
        seen = []
        for world in self.model.sort(self.model.check_team(team)):
            chi = self.hintikka(world, k)
            if chi not in seen:
                seen.append(chi)
        return seen

    # ── Team formulas ──────────────────────────────────────

    def eta(self, team, k):
        """Satisfied by T' iff every member of T' is k-bisimilar to one of T."""
        return disjoin(self.distinct(team, k), bot=self.bot)

    def psi(self, team, k, minimize=False):
        chis = self.distinct(team, k)
        if not chis:
            return self.bot
        atoms = [
            Incl((u,), (v,)) for u in chis for v in chis if not (minimize and u == v)
        ]
        return conjoin([self.eta(team, k)] + atoms, top=self.top)

    def zeta(self, team, k):
        chis = self.distinct(team, k)
        if not chis:
            return self.bot
        return conjoin([self.eta(team, k)] + [Nab(chi) for chi in chis], top=self.top)

    def nedis_char(self, team, k):
        return nedisjoin(self.distinct(team, k), bot=self.bot)

    def characteristic(self, team, k, dialect, minimize=False):
        if dialect is CharDialect.MINC:
            return self.psi(team, k, minimize)
        if dialect is CharDialect.MLNab:
            return self.zeta(team, k)
        return self.nedis_char(team, k)


# ── Module-level operations ────────────────────────────────────────────


def hintikka(model, world, k, bot_encoding=BotEncoding.CONSTANT):
    return HintikkaBuilder(model, bot_encoding).hintikka(world, k)


def eta(model, team, k, bot_encoding=BotEncoding.CONSTANT):
    return HintikkaBuilder(model, bot_encoding).eta(team, k)


def psi(model, team, k, bot_encoding=BotEncoding.CONSTANT, minimize=False):
    return HintikkaBuilder(model, bot_encoding).psi(team, k, minimize)


def zeta(model, team, k, bot_encoding=BotEncoding.CONSTANT):
    return HintikkaBuilder(model, bot_encoding).zeta(team, k)


def nedis_char(model, team, k, bot_encoding=BotEncoding.CONSTANT):
    return HintikkaBuilder(model, bot_encoding).nedis_char(team, k)


def synthesize(pairs, k, dialect=CharDialect.MINC, bot_encoding=BotEncoding.CONSTANT,
               minimize=False):
    """
    Disjunction of characteristic formulas over (model, team) samples.

    K', T' satisfies the result iff T' is a union of subteams, each empty
    or team k-bisimilar to a listed pair. No pairs gives bot.
    """
    pairs = list(pairs)
    if not pairs:
        return Bot()

    props = set(pairs[0][0].props)
    for model, _ in pairs:
        if set(model.props) != props:
            raise ModelError("all sampled models must share one proposition set")

    builders = {}
    disjuncts = []
    for model, team in pairs:
        if model not in builders:
            builders[model] = HintikkaBuilder(model, bot_encoding)
        builder = builders[model]
        formula = builder.characteristic(team, k, dialect, minimize)
        if formula not in disjuncts:
            disjuncts.append(formula)

    logger.debug(
        "synthesized %d distinct %s disjuncts from %d samples", len(disjuncts), dialect.value, len(pairs)
    )
    return disjoin(disjuncts)
