"""Hardness constructions, built as test-case generators.

``vc_gadget`` turns an undirected graph into a two-layered influence graph
whose expansion count at a fixed size tracks the vertex covers of size 2n/3.
``expansion_to_satisfaction`` adds an isolated probe player whose
satisfaction encodes one expansion count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

from .errors import InputError
from .graph import InfluenceGraph
from .models import InfluenceGame
from .oracle import DEFAULT_CAP, check_cap


@dataclass(frozen=True)
class VCInstance:
    """Undirected simple graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]
    names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise InputError(f"vertex count must be a non-negative integer, got {self.n!r}")
        seen = set()
        norm = []
        for e in self.edges:
            try:
                u, v = e
            except (TypeError, ValueError):
                raise InputError(f"edge {e!r} is not a pair") from None
            for w in (u, v):
                if isinstance(w, bool) or not isinstance(w, int) or not 0 <= w < self.n:
                    raise InputError(f"edge {e!r} has endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))
        if not self.names:
            object.__setattr__(self, "names", tuple(range(self.n)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n

    def warnings(self) -> list[str]:
        out = []
        if not self.is_connected():
            out.append("disconnected")
        if self.n % 3:
            out.append("n_not_divisible_by_3")
        if self.n < 6:
            out.append("n_below_6")
        return out


def parse_edge_list(text: str) -> VCInstance:
    """``u v`` per line; a single token declares an isolated vertex; ``#`` starts a comment.

    Vertex names are sorted (numerically when all are integers) and renumbered 0..n-1.
    """
    pairs: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = tuple(line.split())
        if len(parts) > 2:
            raise InputError(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
        pairs.append(parts)
    names = {t for p in pairs for t in p}
    try:
        ordered = sorted(names, key=int)
        ordered = [int(t) for t in ordered]
        lookup = {str(t): i for i, t in enumerate(ordered)}
    except ValueError:
        ordered = sorted(names)
        lookup = {t: i for i, t in enumerate(ordered)}
    edges = [(lookup[p[0]], lookup[p[1]]) for p in pairs if len(p) == 2]
    return VCInstance(len(ordered), tuple(edges), tuple(ordered))


class Gadget(NamedTuple):
    graph: InfluenceGraph
    players: frozenset[int]
    k: int
    warnings: list[str]


def vc_gadget(g: VCInstance) -> Gadget:
    """Two-layered gadget: V and a hub z (label 1) feed n+2 copies of every edge (label 2).

    Layout: V is 0..n-1, z is n, copy j of edge e is n + 1 + j*m + e.  Each
    edge copy receives arcs from both endpoints and from z, so every in-degree
    is 0 or 3.  Players are V + {z}; the target size is 2n/3 + (n+2)m + 1
    (2n/3 rounded down when 3 does not divide n, with a warning).
    """
    n, m = g.n, g.m
    z = n
    arcs = []
    for j in range(n + 2):
        for e, (u, v) in enumerate(g.edges):
            a = n + 1 + j * m + e
            arcs.extend([(u, a), (v, a), (z, a)])
    total = n + (n + 2) * m + 1
    labels = [1] * (n + 1) + [2] * ((n + 2) * m)
    k = (2 * n) // 3 + (n + 2) * m + 1
    return Gadget(InfluenceGraph(total, arcs, labels), frozenset(range(n + 1)), k, g.warnings())


def expansion_to_satisfaction(g: InfluenceGraph, players, k: int) -> tuple[InfluenceGame, int]:
    """Add an isolated label-1 player z; return the game with quota k+1 and z.

    Coalitions of the old players that spread to exactly k vertices are the
    ones z swings, so Sat(z) = 2^n + 2^(n-|N|) * trace_k = 2^n + |F_k(N)|
    with |F_k(N)| counted over all subsets of the original n vertices.
    """
    players = frozenset(players)
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= g.n:
        raise InputError(f"k must lie in 0..{g.n}")
    z = g.n
    bigger = InfluenceGraph(g.n + 1, list(g.arcs), list(g.labels) + [1])
    return InfluenceGame(bigger, k + 1, players | {z}), z


def probe_satisfaction(n: int, full_count: int) -> int:
    """Sat(z) predicted from the full expansion count of the original graph on n vertices."""
    return (1 << n) + full_count


def count_vertex_covers(g: VCInstance, size: int, cap: int | None = DEFAULT_CAP) -> int:
    check_cap(g.n, cap)
    if size < 0 or size > g.n:
        return 0
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    count = 0
    for combo in combinations(range(g.n), size):
        x = 0
        for v in combo:
            x |= 1 << v
        if all(x & e for e in masks):
            count += 1
    return count


__all__ = [
    "Gadget",
    "VCInstance",
    "count_vertex_covers",
    "expansion_to_satisfaction",
    "parse_edge_list",
    "probe_satisfaction",
    "vc_gadget",
]
