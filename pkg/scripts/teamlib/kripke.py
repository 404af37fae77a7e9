"""
Finite Kripke models, teams, and the relation-image algebra.

Models are immutable; teams are plain frozensets of world ids, validated
against a model whenever an operation receives one. Model documents are
JSON with the fields props, worlds, edges, valuation and teams.
"""

from __future__ import annotations

import itertools
import json
import logging
from collections import abc
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Mapping, Tuple

from teamlib.errors import ModelError

logger = logging.getLogger(__name__)

Team = FrozenSet[str]


@dataclass(frozen=True)
class KripkeModel:
    """
    A finite Kripke model (W, R, V) over an ordered proposition set.

    Usage:
        model = KripkeModel.build(["p"], ["w", "v"], [], {"p": ["v"]})
        model.image(frozenset({"w"}))
        model.holds("p", "v")   # True
    """

    props: Tuple[str, ...]
    worlds: Tuple[str, ...]
    edges: FrozenSet[Tuple[str, str]]
    valuation: Mapping[str, FrozenSet[str]] = field(hash=False)

    def __post_init__(self):
        if len(set(self.worlds)) != len(self.worlds):
            raise ModelError(f"duplicate world ids in {list(self.worlds)}")
        if len(set(self.props)) != len(self.props):
            raise ModelError(f"duplicate proposition symbols in {list(self.props)}")

        world_set = set(self.worlds)
        for source, target in self.edges:
            for world in (source, target):
                if world not in world_set:
                    raise ModelError(f"edge {source}->{target} uses unknown world '{world}'")

        if set(self.valuation) != set(self.props):
            extra = sorted(set(self.valuation) - set(self.props))
            raise ModelError(f"valuation mentions undeclared propositions: {', '.join(extra)}")
        for prop, members in self.valuation.items():
            unknown = sorted(set(members) - world_set)
            if unknown:
                raise ModelError(f"valuation of '{prop}' uses unknown worlds: {', '.join(unknown)}")

    @classmethod
    def build(cls, props, worlds, edges=(), valuation=None):
        """Normalise plain Python inputs; omitted valuation entries are empty."""
        valuation = valuation or {}
        if not isinstance(valuation, abc.Mapping):
            raise ModelError("valuation must map propositions to lists of worlds")
        unknown = sorted(set(valuation) - set(props))
        if unknown:
            raise ModelError(f"valuation mentions undeclared propositions: {', '.join(unknown)}")
        return cls(
            props=tuple(props),
            worlds=tuple(worlds),
            edges=frozenset((source, target) for source, target in edges),
            valuation={p: frozenset(valuation.get(p, ())) for p in props},
        )

    # ── Lookups ────────────────────────────────────────────

    @cached_property
    def _successors(self):
        succ = {w: set() for w in self.worlds}
        for source, target in self.edges:
            succ[source].add(target)
        return {w: frozenset(vs) for w, vs in succ.items()}

    @cached_property
    def _predecessors(self):
        pred = {w: set() for w in self.worlds}
        for source, target in self.edges:
            pred[target].add(source)
        return {w: frozenset(vs) for w, vs in pred.items()}

    @cached_property
    def _order(self):
        return {w: i for i, w in enumerate(self.worlds)}

    @cached_property
    def domain(self):
        return frozenset(self.worlds)

    def successors(self, world):
        self.check_world(world)
        return self._successors[world]

    def holds(self, prop, world):
        if prop not in self.valuation:
            raise ModelError(f"unknown proposition '{prop}'")
        return world in self.valuation[prop]

    def check_world(self, world):
        if world not in self._order:
            raise ModelError(f"unknown world '{world}'")

    def check_team(self, team):
        team = frozenset(team)
        unknown = team - self.domain
        if unknown:
            raise ModelError(f"team uses unknown worlds: {', '.join(sorted(unknown))}")
        return team

    def sort(self, team):
        """Team members in model world order."""
        return sorted(team, key=self._order.__getitem__)

    def is_identity(self):
        return self.edges == frozenset((w, w) for w in self.worlds)

    # ── Relation-image algebra ─────────────────────────────

    def image(self, team):
        """R[T]: every world reachable in one step from T."""
        team = self.check_team(team)
        return frozenset().union(*(self._successors[w] for w in team))

    def preimage(self, team):
        """R⁻¹[T]: every world with a successor in T."""
        team = self.check_team(team)
        return frozenset().union(*(self._predecessors[w] for w in team))

    def step_rel(self, team, successor_team):
        """T[R]S: S ⊆ R[T] and T ⊆ R⁻¹[S]."""
        team = self.check_team(team)
        successor_team = self.check_team(successor_team)
        return successor_team <= self.image(team) and team <= self.preimage(successor_team)


@dataclass(frozen=True)
class PointedModel:
    model: KripkeModel
    world: str

    def __post_init__(self):
        self.model.check_world(self.world)


def image(model, team):
    return model.image(team)


def preimage(model, team):
    return model.preimage(team)


def step_rel(model, team, successor_team):
    return model.step_rel(team, successor_team)


def identity_model(props, worlds, valuation=None):
    """A model whose accessibility relation is the identity on its worlds."""
    return KripkeModel.build(props, worlds, [(w, w) for w in worlds], valuation)


# ── Subteams ───────────────────────────────────────────────────────────


def subteams(model, team, nonempty=False):
    """All subsets of a team, by increasing size then model world order."""
    members = model.sort(model.check_team(team))
    start = 1 if nonempty else 0
    for size in range(start, len(members) + 1):
        for combo in itertools.combinations(members, size):
            yield frozenset(combo)


def all_teams(model):
    return subteams(model, model.domain)


# ── Enumeration ────────────────────────────────────────────────────────


def canonical_worlds(n):
    return tuple(f"w{i}" for i in range(n))


def enumerate_models(max_worlds, props):
    """
    Every model with at most max_worlds worlds over props.

    Worlds are named w0..w{n-1}; models are produced by increasing size,
    then by edge set, then by valuation. No isomorphism reduction.
    """
    if max_worlds < 0:
        raise ModelError("max_worlds must be non-negative")
    props = tuple(props)

    for n in range(max_worlds + 1):
        worlds = canonical_worlds(n)
        pairs = [(a, b) for a in worlds for b in worlds]
        subsets = [
            frozenset(w for i, w in enumerate(worlds) if mask >> i & 1)
            for mask in range(2 ** n)
        ]
        for edge_mask in range(2 ** len(pairs)):
            edges = frozenset(pair for i, pair in enumerate(pairs) if edge_mask >> i & 1)
            for extension in itertools.product(subsets, repeat=len(props)):
                yield KripkeModel(
                    props=props,
                    worlds=worlds,
                    edges=edges,
                    valuation=dict(zip(props, extension)),
                )


# ── Documents ──────────────────────────────────────────────────────────


def model_to_dict(model, teams=None):
    edge_order = sorted(model.edges, key=lambda e: (model._order[e[0]], model._order[e[1]]))
    document = {
        "props": list(model.props),
        "worlds": list(model.worlds),
        "edges": [[source, target] for source, target in edge_order],
        "valuation": {p: model.sort(model.valuation[p]) for p in model.props},
    }
    document["teams"] = {
        name: model.sort(model.check_team(team)) for name, team in (teams or {}).items()
    }
    return document


def _string_list(value, what):
    if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
        raise ModelError(f"{what} must be a list of strings")
    return value


def _named_lists(value, what, label):
    if not isinstance(value, dict):
        raise ModelError(f"{what} must be an object mapping names to lists of world ids")
    for name, members in value.items():
        _string_list(members, f"{label} '{name}'")
    return value


def model_from_dict(document):
    """Validate a decoded model document and build (model, named teams)."""
    if not isinstance(document, dict):
        raise ModelError(f"model document must be a JSON object, got {type(document).__name__}")

    missing = [key for key in ("props", "worlds") if key not in document]
    if missing:
        raise ModelError(f"model document missing required fields: {', '.join(missing)}")

    props = _string_list(document["props"], "props")
    worlds = _string_list(document["worlds"], "worlds")
    valuation = _named_lists(document.get("valuation", {}), "valuation", "valuation of")
    team_lists = _named_lists(document.get("teams", {}), "teams", "team")

    raw_edges = document.get("edges", [])
    if not isinstance(raw_edges, list) or not all(
        isinstance(edge, list) and len(edge) == 2 and all(isinstance(w, str) for w in edge)
        for edge in raw_edges
    ):
        raise ModelError("edges must be a list of [source, target] pairs")
    edges = [tuple(edge) for edge in raw_edges]
    if len(set(edges)) != len(edges):
        raise ModelError("duplicate edges in model document")

    model = KripkeModel.build(props, worlds, edges, valuation)

    teams = {}
    for name, members in team_lists.items():
        if len(set(members)) != len(members):
            raise ModelError(f"team '{name}' lists a world twice")
        try:
            teams[name] = model.check_team(members)
        except ModelError as e:
            raise ModelError(f"team '{name}': {e}")
    return model, teams


def save_model(model, teams=None):
    """Serialise a model and named teams to a canonical JSON document."""
    return (json.dumps(model_to_dict(model, teams), indent=2) + "\n").encode("utf-8")


def load_model(data):
    """Parse a JSON model document (bytes or str)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        document = json.loads(data)
    except json.JSONDecodeError as e:
        raise ModelError(f"malformed model document: {e}")
    return model_from_dict(document)


def read_model_file(path):
    try:
        with open(path, "rb") as f:
            return load_model(f.read())
    except OSError as e:
        raise ModelError(f"cannot read model file {path}: {e.strerror}")


def write_model_file(path, model, teams=None):
    with open(path, "wb") as f:
        f.write(save_model(model, teams))
    logger.debug("wrote model with %d worlds to %s", len(model.worlds), path)


def parse_inline_team(model, text):
    """Parse 'w1,w2,...' into a team of the model; the empty string is ∅."""
    members = [part.strip() for part in text.split(",") if part.strip()]
    return model.check_team(members)
