"""Collective decision functions: gOLF, odd-OLF, oblivious and non-oblivious influence models."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, ModelValidityError
from .graph import (
    ActorPartition,
    InfluenceGraph,
    classify_actors,
    from_mask,
    parse_label,
    spread_mask,
    to_mask,
)

PLAYER_RULES = ("restricted", "literal")


def ceil_fraction_times(r: Fraction, k: int) -> int:
    """ceil(r * k) in integer arithmetic."""
    return -((-r.numerator * k) // r.denominator)


@dataclass(frozen=True)
class GolfModel:
    graph: InfluenceGraph
    r: Fraction
    quota: int
    actors: ActorPartition = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        r = parse_label(self.r) if not isinstance(self.r, Fraction) else self.r
        object.__setattr__(self, "r", r)
        if not Fraction(1, 2) <= r <= 1:
            raise ModelValidityError(f"fraction value r={r} must lie in [1/2, 1]")
        if isinstance(self.quota, bool) or not isinstance(self.quota, int) or not 0 < self.quota <= self.graph.n:
            raise ModelValidityError(f"quota {self.quota!r} must satisfy 0 < q <= n={self.graph.n}")
        object.__setattr__(self, "actors", classify_actors(self.graph))

    @property
    def n(self) -> int:
        return self.graph.n

    def follower_thresholds(self) -> tuple[int, ...]:
        """ceil(r * indegree) for every vertex (0 for leaders and independents)."""
        return tuple(ceil_fraction_times(self.r, d) for d in self.graph.in_degrees)


@dataclass(frozen=True)
class InfluenceGame:
    """Simple game on an influence graph: X wins iff |F(X & players)| >= quota."""

    graph: InfluenceGraph
    quota: int
    players: frozenset[int]

    def __post_init__(self):
        players = frozenset(self.players)
        object.__setattr__(self, "players", players)
        if isinstance(self.quota, bool) or not isinstance(self.quota, int) or not 0 <= self.quota <= self.graph.n:
            raise InputError(f"quota {self.quota!r} must satisfy 0 <= q <= n={self.graph.n}")
        for p in players:
            self.graph.check_vertex(p)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def players_mask(self) -> int:
        return to_mask(self.players)

    def wins(self, coalition: Iterable[int]) -> bool:
        mask = to_mask(coalition) & self.players_mask
        return spread_mask(self.graph, mask).bit_count() >= self.quota

    def has_positive_labels(self) -> bool:
        return all(f > 0 for f in self.graph.labels)

    def player_rule_matters(self) -> bool:
        """True when some player has predecessors.

        Only then can the non-oblivious player rule evaluated on F(X(x))
        differ from the one evaluated on F(X(x) & N).
        """
        return any(self.graph.pred_masks[p] for p in self.players)

    def to_dict(self) -> dict:
        doc = self.graph.to_dict()
        doc["quota"] = self.quota
        doc["players"] = sorted(self.players)
        return doc


def _require_positive(game: InfluenceGame) -> None:
    for i, f in enumerate(game.graph.labels):
        if f <= 0:
            raise ModelValidityError(f"vertex {i} has label 0; decision models need positive labels")


@dataclass(frozen=True)
class ObliviousModel:
    game: InfluenceGame

    def __post_init__(self):
        _require_positive(self.game)

    kind = "oblivious"


@dataclass(frozen=True)
class NonObliviousModel:
    """Non-oblivious influence model.

    ``player_rule`` chooses what a player's final bit is read from:
    ``"restricted"`` uses F(X(x) & N), the same set the non-players see;
    ``"literal"`` uses F(X(x)).  They differ only when a player has
    predecessors (see :meth:`InfluenceGame.player_rule_matters`).
    """

    game: InfluenceGame
    player_rule: str = "restricted"

    def __post_init__(self):
        _require_positive(self.game)
        if self.player_rule not in PLAYER_RULES:
            raise InputError(f"player_rule must be one of {PLAYER_RULES}")

    kind = "nonoblivious"


DecisionModel = GolfModel | ObliviousModel | NonObliviousModel


def vector_mask(x: Sequence[int], n: int) -> int:
    """Bit mask of a 0/1 decision vector; raises on length or value mismatch."""
    if len(x) != n:
        raise InputError(f"decision vector has length {len(x)}, expected {n}")
    mask = 0
    for i, b in enumerate(x):
        if b not in (0, 1) or isinstance(b, float):
            raise InputError(f"decision vector entry {i} is {b!r}, expected 0 or 1")
        if b:
            mask |= 1 << i
    return mask


def mask_vector(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(n))


# gOLF -----------------------------------------------------------------------


def golf_final_decision(m: GolfModel, x: Sequence[int]) -> tuple[int, ...]:
    xm = vector_mask(x, m.n)
    thr = m.follower_thresholds()
    out = []
    for i in range(m.n):
        yes = (m.graph.pred_masks[i] & xm).bit_count()
        no = m.graph.in_degrees[i] - yes
        t = thr[i]
        if yes >= t and no < t:
            out.append(1)
        elif no >= t and yes < t:
            out.append(0)
        else:
            out.append((xm >> i) & 1)
    return tuple(out)


def golf_collective_decision(m: GolfModel, x: Sequence[int]) -> int:
    return int(sum(golf_final_decision(m, x)) >= m.quota)


def is_odd_olf(m: GolfModel) -> bool:
    return m.r == Fraction(1, 2) and all(m.graph.in_degrees[i] % 2 == 1 for i in m.actors.followers)


def golf_to_influence_game(m: GolfModel) -> InfluenceGame:
    """The influence game whose non-oblivious model reproduces ``m``.

    Followers get label ceil(r * indegree), everyone else label 1; the
    players are the leaders and independents.
    """
    thr = m.follower_thresholds()
    labels = [thr[i] if i in m.actors.followers else 1 for i in range(m.n)]
    return InfluenceGame(m.graph.with_labels(labels), m.quota, m.actors.players)


# influence models -------------------------------------------------------------


def oblivious_decision(game: InfluenceGame, x: Sequence[int]) -> int:
    _require_positive(game)
    xm = vector_mask(x, game.n)
    return int(spread_mask(game.graph, xm & game.players_mask).bit_count() >= game.quota)


def nonoblivious_final_decision(game: InfluenceGame, x: Sequence[int], player_rule: str = "restricted") -> tuple[int, ...]:
    _require_positive(game)
    if player_rule not in PLAYER_RULES:
        raise InputError(f"player_rule must be one of {PLAYER_RULES}")
    g = game.graph
    xm = vector_mask(x, game.n)
    players = game.players_mask
    active = spread_mask(g, xm & players)
    player_active = spread_mask(g, xm) if player_rule == "literal" else active
    out = []
    for i in range(game.n):
        if (players >> i) & 1:
            out.append((player_active >> i) & 1)
            continue
        p = (g.pred_masks[i] & active).bit_count()
        q = g.in_degrees[i] - p
        t = g.thresholds[i]
        if p >= t and q < t:
            out.append(1)
        elif q >= t and p < t:
            out.append(0)
        else:
            out.append((xm >> i) & 1)
    return tuple(out)


def nonoblivious_decision(game: InfluenceGame, x: Sequence[int], player_rule: str = "restricted") -> int:
    return int(sum(nonoblivious_final_decision(game, x, player_rule)) >= game.quota)


def collective_decision(model: DecisionModel, x: Sequence[int]) -> int:
    if isinstance(model, GolfModel):
        return golf_collective_decision(model, x)
    if isinstance(model, ObliviousModel):
        return oblivious_decision(model.game, x)
    return nonoblivious_decision(model.game, x, model.player_rule)


def actors_of(model: DecisionModel) -> int:
    return model.n if isinstance(model, GolfModel) else model.game.n


def yes_set(x: Sequence[int]) -> frozenset[int]:
    """X(x): the set of actors voting 1."""
    return from_mask(vector_mask(x, len(x)))
