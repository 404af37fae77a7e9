"""
Bounded bisimulation between pointed models and between teams.

`k_bisimilar` follows the recursive back-and-forth definition with a
memo table on (w, w', k). `bisim_signature` computes a canonical value
per world that is equal across models exactly for k-bisimilar points;
it backs the bulk comparisons of the closure checker.
"""

from dataclasses import dataclass
from typing import Union

from teamlib.errors import ModelError
from teamlib.kripke import PointedModel


@dataclass(frozen=True)
class BisimQuery:
    """Either two pointed models or two (model, team) pairs, compared at depth k."""

    left: Union[PointedModel, tuple]
    right: Union[PointedModel, tuple]
    k: int

    def __post_init__(self):
        if isinstance(self.left, PointedModel) != isinstance(self.right, PointedModel):
            raise ModelError("bisimulation query mixes a pointed model with a team")
        check_depth(self.k)

    def decide(self):
        if isinstance(self.left, PointedModel):
            return k_bisimilar(
                self.left.model, self.left.world, self.right.model, self.right.world, self.k
            )
        (model, team), (other, other_team) = self.left, self.right
        return team_k_bisimilar(model, team, other, other_team, self.k)


def check_depth(k):
    if k < 0:
        raise ModelError(f"k must be non-negative, got {k}")


def _check_props(model, other):
    if set(model.props) != set(other.props):
        raise ModelError(
            f"models disagree on proposition symbols: {sorted(model.props)} vs {sorted(other.props)}"
        )


def k_bisimilar(model, world, other, other_world, k):
    """K, w ⇄ₖ K', w'."""
    check_depth(k)
    model.check_world(world)
    other.check_world(other_world)
    _check_props(model, other)
    memo = {}

    def atoms_agree(w, v):
        return all(model.holds(p, w) == other.holds(p, v) for p in model.props)

    def bisimilar(w, v, depth):
        key = (w, v, depth)
        if key in memo:
            return memo[key]
        result = atoms_agree(w, v)
        if result and depth > 0:
            left, right = model.successors(w), other.successors(v)
            result = all(any(bisimilar(a, b, depth - 1) for b in right) for a in left) and all(
                any(bisimilar(a, b, depth - 1) for a in left) for b in right
            )
        memo[key] = result
        return result

    return bisimilar(world, other_world, k)


def team_k_bisimilar(model, team, other, other_team, k):
    """K, T [⇄ₖ] K', T': domain and range totality of ⇄ₖ between the teams."""
    check_depth(k)
    team = model.check_team(team)
    other_team = other.check_team(other_team)
    _check_props(model, other)
    return all(any(k_bisimilar(model, w, other, v, k) for v in other_team) for w in team) and all(
        any(k_bisimilar(model, w, other, v, k) for w in team) for v in other_team
    )


# ── Signatures ─────────────────────────────────────────────────────────


class SignatureTable:
    """
    Depth-k bisimulation signatures for every world of one model.

    sig₀(w) is the set of propositions true at w; sigₖ₊₁(w) pairs sig₀(w)
    with the set of sigₖ of its successors. Proposition names, not model
    positions, are used, so signatures compare across models.
    """

    def __init__(self, model):
        self.model = model
        self._levels = [
            {w: frozenset(p for p in model.props if model.holds(p, w)) for w in model.worlds}
        ]

    def level(self, k):
        check_depth(k)
        while len(self._levels) <= k:
            previous = self._levels[-1]
            base = self._levels[0]
            self._levels.append(
                {
                    w: (base[w], frozenset(previous[v] for v in self.model.successors(w)))
                    for w in self.model.worlds
                }
            )
        return self._levels[k]

    def signature(self, world, k):
        self.model.check_world(world)
        return self.level(k)[world]

    def team_signature(self, team, k):
        level = self.level(k)
        return frozenset(level[w] for w in self.model.check_team(team))


def bisim_signature(model, world, k):
    return SignatureTable(model).signature(world, k)


def team_signature(model, team, k, table=None):
    """Two teams (over models with the same props) are [⇄ₖ] iff signatures match."""
    return (table or SignatureTable(model)).team_signature(team, k)
