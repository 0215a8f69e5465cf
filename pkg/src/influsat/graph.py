"""Influence graphs, actor classes and the linear-threshold activation process.

Vertices are the dense ids ``0..n-1``.  Vertex sets cross the public API as
``frozenset`` objects; internally they are Python ints used as bit masks,
which keeps the 2^n enumerations in :mod:`influsat.oracle` cheap.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InputError, NotTwoLayeredError

Label = Fraction


def parse_label(value) -> Fraction:
    """Exact non-negative rational from an int, a Fraction or a ``"p"``/``"p/q"`` string."""
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"label {value!r} must be an integer or a 'p/q' string, not {type(value).__name__}")
    try:
        if isinstance(value, (int, Fraction)):
            label = Fraction(value)
        elif isinstance(value, str):
            text = value.strip()
            if not text or any(ch in text for ch in ".eE"):
                raise ValueError(text)
            label = Fraction(text)
        else:
            raise ValueError(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse label {value!r}") from exc
    if label < 0:
        raise InputError(f"label {value!r} is negative")
    return label


def format_label(label: Fraction) -> str:
    return str(label.numerator) if label.denominator == 1 else f"{label.numerator}/{label.denominator}"


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


class InfluenceGraph:
    """Directed graph with a non-negative rational threshold on every vertex.

    Validation (loops, duplicate arcs, dangling endpoints, negative labels)
    happens here, once; every other function trusts an ``InfluenceGraph``.
    """

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]], labels: Iterable | Mapping[int, object] | None = None):
        if not isinstance(n, int) or n < 0:
            raise InputError(f"vertex count must be a non-negative integer, got {n!r}")
        seen: set[tuple[int, int]] = set()
        ordered: list[tuple[int, int]] = []
        for arc in arcs:
            try:
                u, v = arc
            except (TypeError, ValueError) as exc:
                raise InputError(f"arc {arc!r} is not a pair") from exc
            if not (isinstance(u, int) and isinstance(v, int)) or isinstance(u, bool) or isinstance(v, bool):
                raise InputError(f"arc {arc!r} has non-integer endpoints")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc ({u}, {v}) references an undeclared vertex")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if (u, v) in seen:
                raise InputError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
            ordered.append((u, v))
        if labels is None:
            parsed = [Fraction(1)] * n
        elif isinstance(labels, Mapping):
            if set(labels) != set(range(n)):
                raise InputError("labels must cover exactly the vertices 0..n-1")
            parsed = [parse_label(labels[i]) for i in range(n)]
        else:
            parsed = [parse_label(x) for x in labels]
            if len(parsed) != n:
                raise InputError(f"expected {n} labels, got {len(parsed)}")
        self.n = n
        self.arcs = frozenset(ordered)
        self.labels = tuple(parsed)

    # structure -------------------------------------------------------------

    @cached_property
    def pred_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def succ_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def thresholds(self) -> tuple[int, ...]:
        """Integer activation thresholds: ``count >= f`` iff ``count >= ceil(f)``."""
        return tuple(math.ceil(f) for f in self.labels)

    @cached_property
    def in_degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.pred_masks)

    @cached_property
    def out_degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.succ_masks)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_vertex(self, i) -> int:
        if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < self.n:
            raise InputError(f"unknown vertex {i!r}")
        return i

    def successors(self, i: int) -> frozenset[int]:
        return from_mask(self.succ_masks[self.check_vertex(i)])

    def with_labels(self, labels) -> "InfluenceGraph":
        return InfluenceGraph(self.n, self.arcs, labels)

    def induced(self, keep: Iterable[int]) -> tuple["InfluenceGraph", dict[int, int]]:
        """Subgraph induced by ``keep``; returns it with the old->new id map (order preserved)."""
        kept = sorted(set(keep))
        index = {v: k for k, v in enumerate(kept)}
        arcs = [(index[u], index[v]) for u, v in self.arcs if u in index and v in index]
        return InfluenceGraph(len(kept), arcs, [self.labels[v] for v in kept]), index

    # dunder ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, InfluenceGraph)
            and self.n == other.n
            and self.arcs == other.arcs
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.n, self.arcs, self.labels))

    def __repr__(self) -> str:
        return f"InfluenceGraph(n={self.n}, arcs={sorted(self.arcs)}, labels={[format_label(f) for f in self.labels]})"

    # JSON --------------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": i, "label": format_label(f)} for i, f in enumerate(self.labels)],
            "arcs": [list(a) for a in sorted(self.arcs)],
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "InfluenceGraph":
        if not isinstance(doc, Mapping):
            raise InputError("graph document must be a JSON object")
        vertices = doc.get("vertices")
        if not isinstance(vertices, list):
            raise InputError("graph document: 'vertices' must be a list")
        labels: dict[int, object] = {}
        for pos, entry in enumerate(vertices):
            if not isinstance(entry, Mapping) or "id" not in entry:
                raise InputError(f"vertices[{pos}]: expected an object with an 'id'")
            vid = entry["id"]
            if isinstance(vid, bool) or not isinstance(vid, int):
                raise InputError(f"vertices[{pos}].id: expected an integer, got {vid!r}")
            if vid in labels:
                raise InputError(f"vertices[{pos}].id: duplicate id {vid}")
            try:
                labels[vid] = parse_label(entry.get("label", "1"))
            except InputError as exc:
                raise InputError(f"vertices[{pos}].label: {exc}") from exc
        n = len(labels)
        if set(labels) != set(range(n)):
            raise InputError("graph document: vertex ids must be exactly 0..n-1")
        arcs = doc.get("arcs", [])
        if not isinstance(arcs, list):
            raise InputError("graph document: 'arcs' must be a list")
        pairs = []
        for pos, arc in enumerate(arcs):
            if not isinstance(arc, list) or len(arc) != 2:
                raise InputError(f"arcs[{pos}]: expected a [u, v] pair")
            pairs.append((arc[0], arc[1]))
        return cls(n, pairs, labels)

    @classmethod
    def from_json(cls, text: str) -> "InfluenceGraph":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        return cls.from_dict(doc)


@dataclass(frozen=True)
class ActorPartition:
    leaders: frozenset[int]
    followers: frozenset[int]
    independents: frozenset[int]

    @property
    def players(self) -> frozenset[int]:
        """Leaders and independents, the players of the associated influence game."""
        return self.leaders | self.independents

    @property
    def followers_and_independents(self) -> frozenset[int]:
        return self.followers | self.independents


def predecessors(g: InfluenceGraph, i: int) -> frozenset[int]:
    return from_mask(g.pred_masks[g.check_vertex(i)])


def classify_actors(g: InfluenceGraph) -> ActorPartition:
    """Split V into opinion leaders, followers and independent actors.

    Raises :class:`NotTwoLayeredError` naming the first vertex that has both
    predecessors and successors.
    """
    leaders, followers, independents = [], [], []
    for i in range(g.n):
        has_pred = g.pred_masks[i] != 0
        has_succ = g.succ_masks[i] != 0
        if has_pred and has_succ:
            raise NotTwoLayeredError(i)
        if has_succ:
            leaders.append(i)
        elif has_pred:
            followers.append(i)
        else:
            independents.append(i)
    return ActorPartition(frozenset(leaders), frozenset(followers), frozenset(independents))


def is_two_layered(g: InfluenceGraph) -> bool:
    return all(not (p and s) for p, s in zip(g.pred_masks, g.succ_masks))


def spread_mask(g: InfluenceGraph, mask: int) -> int:
    """F(X) on bit masks, run to the first fixpoint of the synchronous rounds."""
    preds = g.pred_masks
    thr = g.thresholds
    current = mask
    while True:
        new = current
        for i in range(g.n):
            if not (current >> i) & 1 and (preds[i] & current).bit_count() >= thr[i]:
                new |= 1 << i
        if new == current:
            return current
        current = new


def spread_rounds(g: InfluenceGraph, x: Iterable[int]) -> list[frozenset[int]]:
    """Activated sets F^0(X), F^1(X), ... up to and including the fixpoint."""
    start = to_mask(g.check_vertex(v) for v in x)
    rounds = [start]
    preds = g.pred_masks
    thr = g.thresholds
    current = start
    while True:
        new = current
        for i in range(g.n):
            if not (current >> i) & 1 and (preds[i] & current).bit_count() >= thr[i]:
                new |= 1 << i
        if new == current:
            break
        rounds.append(new)
        current = new
    return [from_mask(m) for m in rounds]


def spread_of_influence(g: InfluenceGraph, x: Iterable[int]) -> frozenset[int]:
    return from_mask(spread_mask(g, to_mask(g.check_vertex(v) for v in x)))


def directly_dependent_followers(g: InfluenceGraph, i: int) -> frozenset[int]:
    """Successors of ``i`` whose only predecessor is ``i`` and whose label is exactly 1."""
    g.check_vertex(i)
    return frozenset(
        j for j in from_mask(g.succ_masks[i]) if g.in_degrees[j] == 1 and g.labels[j] == 1
    )


def weak_components(g: InfluenceGraph, vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Weakly connected components of the subgraph induced by ``vertices``, each sorted."""
    pool = set(range(g.n) if vertices is None else vertices)
    pool_mask = to_mask(pool)
    comps = []
    for start in sorted(pool):
        if start not in pool:
            continue
        comp = []
        stack = [start]
        pool.discard(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            nbrs = (g.pred_masks[v] | g.succ_masks[v]) & pool_mask
            for w in from_mask(nbrs):
                if w in pool:
                    pool.discard(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps
