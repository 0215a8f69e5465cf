"""Strong hierarchical influence graphs: recognition and polynomial counting.

A strong hierarchical graph is built from sets of isolated vertices by
disjoint union and by one-layer extension (a new vertex set V' that receives
an arc from every sink of the graph built so far).  :func:`decompose`
recovers such a construction tree, and the table routines fold over it
bottom-up:

* ``T(a, b)``  number of player coalitions X with |F(X)| = a and
  |F(X) & FI| = b (FI = sinks of the current subgraph);
* ``S(a, b)``  number of initial vectors whose non-oblivious final vector has
  a ones and whose player spread meets FI in b vertices; ``S0``/``S1`` are
  the same split by the bit of the tracked actor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable

from .errors import InputError, ModelValidityError, NotHierarchicalError
from .graph import InfluenceGraph, directly_dependent_followers, from_mask, to_mask, weak_components
from .models import InfluenceGame
from .oracle import expansion_histogram

# construction tree ------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    vertices: tuple[int, ...]

    @cached_property
    def all_vertices(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def sinks(self) -> tuple[int, ...]:
        return self.vertices


@dataclass(frozen=True)
class Union:
    left: "Node"
    right: "Node"

    @cached_property
    def all_vertices(self) -> frozenset[int]:
        return self.left.all_vertices | self.right.all_vertices

    @cached_property
    def sinks(self) -> tuple[int, ...]:
        return tuple(sorted(self.left.sinks + self.right.sinks))


@dataclass(frozen=True)
class Extend:
    sub: "Node"
    layer: tuple[int, ...]

    @cached_property
    def all_vertices(self) -> frozenset[int]:
        return self.sub.all_vertices | frozenset(self.layer)

    @cached_property
    def sinks(self) -> tuple[int, ...]:
        return self.layer


Node = Leaf | Union | Extend


def node_to_dict(node: Node) -> dict:
    if isinstance(node, Leaf):
        return {"kind": "leaf", "vertices": list(node.vertices)}
    if isinstance(node, Union):
        return {"kind": "union", "left": node_to_dict(node.left), "right": node_to_dict(node.right)}
    return {"kind": "extend", "sub": node_to_dict(node.sub), "layer": list(node.layer)}


def node_from_dict(doc: dict) -> Node:
    kind = doc.get("kind")
    if kind == "leaf":
        return Leaf(tuple(doc["vertices"]))
    if kind == "union":
        return Union(node_from_dict(doc["left"]), node_from_dict(doc["right"]))
    if kind == "extend":
        return Extend(node_from_dict(doc["sub"]), tuple(doc["layer"]))
    raise InputError(f"unknown decomposition node kind {kind!r}")


def node_arcs(node: Node) -> set[tuple[int, int]]:
    """Arc set of the graph the tree describes."""
    if isinstance(node, Leaf):
        return set()
    if isinstance(node, Union):
        return node_arcs(node.left) | node_arcs(node.right)
    arcs = node_arcs(node.sub)
    arcs.update((u, v) for u in node.sub.sinks for v in node.layer)
    return arcs


def render(node: Node) -> str:
    """Infix form, e.g. ``(({0,1} (x) {3,4}) + {5})``."""
    if isinstance(node, Leaf):
        return "{" + ",".join(map(str, node.vertices)) + "}"
    if isinstance(node, Union):
        return f"({render(node.left)} + {render(node.right)})"
    return f"({render(node.sub)} (x) {{{','.join(map(str, node.layer))}}})"


@dataclass(frozen=True)
class HierarchicalDecomposition:
    graph: InfluenceGraph
    root: Node | None

    def to_dict(self) -> dict:
        return {"n": self.graph.n, "root": None if self.root is None else node_to_dict(self.root)}

    def reconstructed_arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset() if self.root is None else frozenset(node_arcs(self.root))

    @cached_property
    def leaf_vertices(self) -> frozenset[int]:
        """Vertices of the leaves, i.e. the leaders and independents of the graph."""
        out: set[int] = set()
        stack = [] if self.root is None else [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Leaf):
                out.update(node.vertices)
            elif isinstance(node, Union):
                stack.extend((node.left, node.right))
            else:
                stack.append(node.sub)
        return frozenset(out)


def decompose(g: InfluenceGraph) -> HierarchicalDecomposition:
    """Construction tree of a strong hierarchical graph.

    Each connected piece with arcs must be a one-layer extension whose new
    layer is exactly its set of sinks, every sink receiving an arc from every
    sink of the remainder.  Isolated vertices of the same level are grouped
    into one leaf.  Raises :class:`NotHierarchicalError` with a certificate.
    """
    if g.n == 0:
        return HierarchicalDecomposition(g, None)
    return HierarchicalDecomposition(g, _decompose(g, list(range(g.n))))


def _decompose(g: InfluenceGraph, vertices: list[int]) -> Node:
    comps = weak_components(g, vertices)
    isolated = sorted(c[0] for c in comps if len(c) == 1)
    parts = [_decompose_connected(g, c) for c in comps if len(c) > 1]
    if isolated:
        parts.append(Leaf(tuple(isolated)))
    node = parts[-1]
    for part in reversed(parts[:-1]):
        node = Union(part, node)
    return node


def _decompose_connected(g: InfluenceGraph, comp: list[int]) -> Node:
    members = to_mask(comp)
    layer = [v for v in comp if not g.succ_masks[v] & members]
    rest = [v for v in comp if g.succ_masks[v] & members]
    rest_mask = to_mask(rest)
    if not layer:
        raise NotHierarchicalError(
            "component has no sink (directed cycle)", {"vertex": comp[0], "component": comp}
        )
    # sinks of the remainder must feed every vertex of the new layer
    expected = to_mask(v for v in rest if not g.succ_masks[v] & rest_mask)
    for v in layer:
        actual = g.pred_masks[v] & members
        if actual != expected:
            raise NotHierarchicalError(
                f"vertex {v} is not joined to exactly the sinks of the layer above",
                {
                    "vertex": v,
                    "expected_predecessors": sorted(from_mask(expected)),
                    "actual_predecessors": sorted(from_mask(actual)),
                },
            )
    for v in rest:
        stray = g.succ_masks[v] & members & ~rest_mask
        if stray and not (expected >> v) & 1:
            w = min(from_mask(stray))
            raise NotHierarchicalError(
                f"arc ({v}, {w}) skips a layer",
                {"vertex": v, "arc": [v, w]},
            )
    return Extend(_decompose(g, rest), tuple(layer))


def is_strong_hierarchical(g: InfluenceGraph) -> bool:
    try:
        decompose(g)
    except NotHierarchicalError:
        return False
    return True


# tables --------------------------------------------------------------------------


class CountTable:
    """Dense (a, b) -> count table of arbitrary-precision ints."""

    __slots__ = ("rows",)

    def __init__(self, a_max: int, b_max: int):
        self.rows = [[0] * (b_max + 1) for _ in range(a_max + 1)]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ab: tuple[int, int]) -> int:
        a, b = ab
        if 0 <= a < len(self.rows) and 0 <= b < len(self.rows[0]):
            return self.rows[a][b]
        return 0

    def total(self) -> int:
        return sum(map(sum, self.rows))

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {(a, b): v for a, r in enumerate(self.rows) for b, v in enumerate(r) if v}

    def __eq__(self, other) -> bool:
        return isinstance(other, CountTable) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"CountTable({self.nonzero()})"


def _convolve(t1: CountTable, t2: CountTable) -> CountTable:
    (a1, b1), (a2, b2) = t1.shape, t2.shape
    out = CountTable(a1 + a2 - 2, b1 + b2 - 2)
    rows = out.rows
    for x1, r1 in enumerate(t1.rows):
        for y1, v1 in enumerate(r1):
            if not v1:
                continue
            for x2, r2 in enumerate(t2.rows):
                target = rows[x1 + x2]
                for y2, v2 in enumerate(r2):
                    if v2:
                        target[y1 + y2] += v1 * v2
    return out


def _activated_counts(g: InfluenceGraph, layer: Iterable[int], beta: int) -> list[int]:
    """R(c) = #{v in layer : f(v) <= c} for c = 0..beta."""
    thr = sorted(g.thresholds[v] for v in layer)
    out = []
    k = 0
    for c in range(beta + 1):
        while k < len(thr) and thr[k] <= c:
            k += 1
        out.append(k)
    return out


def expansion_table(d: HierarchicalDecomposition, players: Iterable[int] | None = None) -> CountTable:
    """T(a, b) over the whole graph of ``d``.

    ``players`` defaults to the leaf vertices (the leaders and independents).
    Passing a subset models leaf vertices that are barred from coalitions:
    with a positive label they never activate, with label 0 they always do.
    """
    g = d.graph
    if d.root is None:
        t = CountTable(0, 0)
        t.rows[0][0] = 1
        return t
    pl = d.leaf_vertices if players is None else frozenset(players)
    if not pl <= d.leaf_vertices:
        raise NotHierarchicalError(
            "players must be leaf vertices (no predecessors) of the hierarchical graph",
            {"players": sorted(pl), "leaf_vertices": sorted(d.leaf_vertices)},
        )
    return _t_table(g, d.root, pl)


def _t_table(g: InfluenceGraph, node: Node, players: frozenset[int]) -> CountTable:
    if isinstance(node, Leaf):
        size = len(node.vertices)
        zero = sum(1 for v in node.vertices if g.thresholds[v] == 0)
        zero_players = sum(1 for v in node.vertices if g.thresholds[v] == 0 and v in players)
        free = sum(1 for v in node.vertices if g.thresholds[v] > 0 and v in players)
        t = CountTable(size, size)
        for a in range(zero, zero + free + 1):
            t.rows[a][a] = comb(free, a - zero) << zero_players
        return t
    if isinstance(node, Union):
        return _convolve(_t_table(g, node.left, players), _t_table(g, node.right, players))
    sub = _t_table(g, node.sub, players)
    beta_sub = len(node.sub.sinks)
    r = _activated_counts(g, node.layer, beta_sub)
    a_sub = sub.shape[0] - 1
    t = CountTable(a_sub + len(node.layer), len(node.layer))
    for a, row in enumerate(sub.rows):
        for b, v in enumerate(row):
            if v:
                t.rows[a + r[b]][r[b]] += v
    return t


def expansion_counts(d: HierarchicalDecomposition, players: Iterable[int] | None = None, trace: bool = False) -> list[int]:
    """|F_k(N)| for k = 0..n (full count unless ``trace``)."""
    pl = d.leaf_vertices if players is None else frozenset(players)
    t = expansion_table(d, pl)
    sums = t.row_sums()
    n = d.graph.n
    sums += [0] * (n + 1 - len(sums))
    if trace:
        return sums
    shift = n - len(pl)
    return [s << shift for s in sums]


def expansion_count(d: HierarchicalDecomposition, k: int, players: Iterable[int] | None = None, trace: bool = False) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= d.graph.n:
        return 0
    return expansion_counts(d, players, trace)[k]


# reductions ------------------------------------------------------------------------


def reduce_graph_R(g: InfluenceGraph, i: int, cascade: bool = False) -> tuple[InfluenceGraph, dict[int, int]]:
    """Delete ``i`` and its directly dependent followers, lowering successor labels.

    Returns the reduced graph and the old->new id map of surviving vertices.
    With ``cascade=False`` only the successors of ``i`` lose one unit (the
    plain construction).  With ``cascade=True`` every surviving vertex loses
    one unit per deleted predecessor, which is what forcing ``i`` active
    means when the deleted followers have successors of their own.
    """
    g.check_vertex(i)
    removed = directly_dependent_followers(g, i) | {i}
    removed_mask = to_mask(removed)
    keep = [v for v in range(g.n) if v not in removed]
    labels = []
    for v in keep:
        if cascade:
            drop = (g.pred_masks[v] & removed_mask).bit_count()
        else:
            drop = 1 if (g.succ_masks[i] >> v) & 1 else 0
        labels.append(max(g.labels[v] - drop, 0))
    sub, index = g.induced(keep)
    return sub.with_labels(labels), index


def reduce_graph_R2(g: InfluenceGraph, i: int) -> tuple[InfluenceGraph, dict[int, int]]:
    """Keep ``i``, delete its directly dependent followers, hang 2n label-1 sinks on ``i``.

    Successors of ``i`` lose one label unit (floored at 0).  The new sinks get
    ids after the surviving vertices.
    """
    g.check_vertex(i)
    removed = directly_dependent_followers(g, i)
    keep = [v for v in range(g.n) if v not in removed]
    sub, index = g.induced(keep)
    labels = [
        max(g.labels[v] - 1, 0) if (g.succ_masks[i] >> v) & 1 else g.labels[v] for v in keep
    ]
    extra = 2 * g.n
    arcs = list(sub.arcs) + [(index[i], len(keep) + j) for j in range(extra)]
    return InfluenceGraph(len(keep) + extra, arcs, labels + [1] * extra), index


# satisfaction ----------------------------------------------------------------------


def _players_ok(game: InfluenceGame, d: HierarchicalDecomposition) -> None:
    if game.players != d.leaf_vertices:
        raise NotHierarchicalError(
            "players of a strong hierarchical game must be exactly its leaders and independents",
            {"players": sorted(game.players), "leaders_and_independents": sorted(d.leaf_vertices)},
        )


def coalitions_winning_with(game: InfluenceGame, i: int, cap: int | None = None) -> int:
    """#{Y subset of N - {i} : F(Y + {i}) reaches the quota}, through the reduced graph."""
    g = game.graph
    dep = directly_dependent_followers(g, i)
    reduced, index = reduce_graph_R(g, i, cascade=True)
    rest = [index[p] for p in game.players if p != i and p in index]
    pinned = 1 + len(dep)
    try:
        counts = expansion_counts(decompose(reduced), rest, trace=True)
    except (NotHierarchicalError, InputError):
        # not expected for strong hierarchical inputs; enumerate if small enough
        counts = expansion_histogram(reduced, rest, trace=True, cap=cap)
    need = max(game.quota - pinned, 0)
    # players deleted with F_i: their membership no longer matters
    factor = 1 << len(dep & game.players)
    return factor * sum(counts[need:])


def coalitions_winning_without(game: InfluenceGame, d: HierarchicalDecomposition, i: int) -> int:
    """#{Y subset of N - {i} : F(Y) reaches the quota}."""
    counts = expansion_counts(d, game.players - {i}, trace=True)
    return sum(counts[game.quota:])


def sat_oblivious_hierarchical(game: InfluenceGame, i: int, cap: int | None = None) -> int:
    """Satisfaction of actor ``i`` in the oblivious model of a strong hierarchical game.

    Non-players and zero-label players get 2^(n-1).  A player ``i`` gains
    2^(n-|N|) for each coalition of the other players that loses without
    ``i`` and wins with it; those swings are counted as (wins with i forced
    active, via the reduced graph) minus (wins without i).
    """
    g = game.graph
    g.check_vertex(i)
    n = g.n
    d = decompose(g)
    _players_ok(game, d)
    base = 1 << (n - 1)
    if i not in game.players or g.thresholds[i] == 0:
        return base
    swings = coalitions_winning_with(game, i, cap) - coalitions_winning_without(game, d, i)
    return base + (swings << (n - len(game.players)))


def _leaf_s(node: Leaf, u: int | None) -> tuple:
    size = len(node.vertices)
    if u is None or u not in node.vertices:
        t = CountTable(size, size)
        for a in range(size + 1):
            t.rows[a][a] = comb(size, a)
        return ("S", t)
    s0, s1 = CountTable(size, size), CountTable(size, size)
    for a in range(size + 1):
        s0.rows[a][a] = comb(size - 1, a)
        s1.rows[a][a] = comb(size - 1, a - 1) if a >= 1 else 0
    return ("U", s0, s1)


def _layer_stats(g: InfluenceGraph, layer: tuple[int, ...], alpha: int):
    """Per c = 0..alpha: (R, R1, R2, R3) and the A-class of each layer vertex."""
    stats = []
    for c in range(alpha + 1):
        r = r1 = r2 = 0
        cls = {}
        for v in layer:
            f = g.thresholds[v]
            if f <= c:
                r += 1
            if f <= c and alpha - c < f:
                r1 += 1
                cls[v] = 1
            elif f <= alpha - c and c < f:
                r2 += 1
                cls[v] = 2
            else:
                cls[v] = 3
        stats.append((r, r1, r2, len(layer) - r1 - r2, cls))
    return stats


def _extend_plain(sub: CountTable, stats, size: int) -> CountTable:
    a_max = sub.shape[0] - 1 + size
    out = CountTable(a_max, size)
    for b, (r, r1, r2, r3, _) in enumerate(stats):
        free = 1 << (r1 + r2)
        for a, row in enumerate(sub.rows):
            v = row[b] if b < len(row) else 0
            if not v:
                continue
            for delta in range(r3 + 1):
                out.rows[a + r1 + delta][r] += v * comb(r3, delta) * free
    return out


def _s_tables(g: InfluenceGraph, node: Node, u: int | None) -> tuple:
    if isinstance(node, Leaf):
        return _leaf_s(node, u)
    if isinstance(node, Union):
        left = _s_tables(g, node.left, u)
        right = _s_tables(g, node.right, u)
        if left[0] == "S" and right[0] == "S":
            return ("S", _convolve(left[1], right[1]))
        tracked, other = (left, right) if left[0] == "U" else (right, left)
        return ("U", _convolve(tracked[1], other[1]), _convolve(tracked[2], other[1]))
    alpha = len(node.sub.sinks)
    size = len(node.layer)
    stats = _layer_stats(g, node.layer, alpha)
    sub = _s_tables(g, node.sub, u)
    if sub[0] == "U":
        return ("U", _extend_plain(sub[1], stats, size), _extend_plain(sub[2], stats, size))
    if u is None or u not in node.layer:
        return ("S", _extend_plain(sub[1], stats, size))
    base = sub[1]
    a_max = base.shape[0] - 1 + size
    s0, s1 = CountTable(a_max, size), CountTable(a_max, size)
    for b, (r, r1, r2, r3, cls) in enumerate(stats):
        for a, row in enumerate(base.rows):
            v = row[b] if b < len(row) else 0
            if not v:
                continue
            if cls[u] != 3:
                w = v << (r1 + r2 - 1)
                for delta in range(r3 + 1):
                    c = w * comb(r3, delta)
                    s0.rows[a + r1 + delta][r] += c
                    s1.rows[a + r1 + delta][r] += c
            else:
                w = v << (r1 + r2)
                for delta in range(r3):
                    c = w * comb(r3 - 1, delta)
                    s0.rows[a + r1 + delta][r] += c
                    s1.rows[a + r1 + delta + 1][r] += c
    return ("U", s0, s1)


def satisfaction_tables(game: InfluenceGame, u: int) -> tuple[CountTable, CountTable]:
    """(S0, S1) for the whole graph, tracking actor ``u``."""
    g = game.graph
    g.check_vertex(u)
    if any(f <= 0 for f in g.labels):
        raise ModelValidityError("non-oblivious models need positive labels")
    d = decompose(g)
    _players_ok(game, d)
    _, s0, s1 = _s_tables(g, d.root, u)
    return s0, s1


def sat_nonoblivious_hierarchical(game: InfluenceGame, u: int) -> int:
    """Satisfaction of ``u`` in the non-oblivious model of a strong hierarchical game."""
    s0, s1 = satisfaction_tables(game, u)
    q = game.quota
    low = sum(sum(row) for row in s0.rows[:q])
    high = sum(sum(row) for row in s1.rows[q:])
    return low + high
