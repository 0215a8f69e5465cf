"""Brute-force ground truth: enumerate every initial vector or coalition.

All counts are exact Python ints.  The enumeration range can be split into
contiguous blocks of the index space (high-order bit prefixes) and run on a
thread pool; per-block results are summed, so the totals do not depend on
``workers``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable

from . import kernels
from ._pykernels import GOLF, NONOBLIVIOUS, OBLIVIOUS
from .errors import CapExceededError, InputError
from .graph import InfluenceGraph, to_mask
from .models import DecisionModel, GolfModel, InfluenceGame, NonObliviousModel, ObliviousModel

DEFAULT_CAP = 24


def check_cap(bits: int, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if bits > cap:
        raise CapExceededError(bits, cap)


def prefix_blocks(bits: int, workers: int) -> list[tuple[int, int]]:
    """Split [0, 2^bits) into 2^p blocks of equal size, one per high-order prefix."""
    total = 1 << bits
    p = 0
    while (1 << p) < workers and p < bits:
        p += 1
    size = total >> p
    return [(k * size, (k + 1) * size) for k in range(1 << p)]


def _map_blocks(fn: Callable[[int, int], object], bits: int, workers: int) -> list:
    blocks = prefix_blocks(bits, max(1, workers))
    if workers <= 1 or len(blocks) == 1:
        return [fn(a, b) for a, b in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ab: fn(*ab), blocks))


def _sum_vectors(parts: list[list[int]]) -> list[int]:
    return [sum(col) for col in zip(*parts)]


def decision_table(model: DecisionModel, cap: int | None = None, workers: int = 1, backend: str | None = None) -> bytearray:
    """table[x] = C(x) for every initial vector x (bit i of x is actor i)."""
    if isinstance(model, GolfModel):
        g, players, quota, kind, literal = model.graph, 0, model.quota, GOLF, 0
        thr = model.follower_thresholds()
    elif isinstance(model, (ObliviousModel, NonObliviousModel)):
        game = model.game
        g, players, quota = game.graph, game.players_mask, game.quota
        thr = g.thresholds
        kind = OBLIVIOUS if isinstance(model, ObliviousModel) else NONOBLIVIOUS
        literal = int(isinstance(model, NonObliviousModel) and model.player_rule == "literal")
    else:
        raise InputError(f"not a decision model: {model!r}")
    check_cap(g.n, cap)
    k = kernels.pick(g.n, backend)
    table = bytearray(1 << g.n)
    _map_blocks(
        lambda a, b: k.fill_model_table(g.pred_masks, thr, g.n, players, quota, kind, literal, table, a, b),
        g.n,
        workers,
    )
    return table


def _agreement(table: bytearray, bits: int, workers: int, backend: str | None) -> list[int]:
    k = kernels.pick(bits, backend)
    return _sum_vectors(_map_blocks(lambda a, b: k.agreement_counts(table, bits, a, b), bits, workers))


def _swings(table: bytearray, bits: int, workers: int, backend: str | None) -> list[int]:
    k = kernels.pick(bits, backend)
    return _sum_vectors(_map_blocks(lambda a, b: k.swing_counts(table, bits, a, b), bits, workers))


def satisfaction_bruteforce(
    model: DecisionModel,
    i: int | None = None,
    cap: int | None = None,
    workers: int = 1,
    backend: str | None = None,
):
    """Sat(i) = #{x : C(x) = x_i} by full enumeration; all actors when ``i`` is None."""
    n = model.n if isinstance(model, GolfModel) else model.game.n
    if i is not None and (isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < n):
        raise InputError(f"unknown actor {i!r}")
    table = decision_table(model, cap, workers, backend)
    if n == 0:
        return [] if i is None else 0
    counts = _agreement(table, n, workers, backend)
    return counts if i is None else counts[i]


def model_indices(model: DecisionModel, cap: int | None = None, workers: int = 1, backend: str | None = None):
    """(Rae, Banzhaf) lists of the simple game associated with a monotone model, over all actors."""
    n = model.n if isinstance(model, GolfModel) else model.game.n
    table = decision_table(model, cap, workers, backend)
    return _agreement(table, n, workers, backend), _swings(table, n, workers, backend)


# expansion --------------------------------------------------------------------


def expansion_histogram(
    g: InfluenceGraph,
    players: Iterable[int],
    trace: bool = False,
    cap: int | None = None,
    workers: int = 1,
    backend: str | None = None,
) -> list[int]:
    """hist[k] = |F_k(N)| for k = 0..n.

    With ``trace=True`` the count is over subsets of N only; otherwise over
    all subsets of V, i.e. the trace count times 2^(n - |N|).
    """
    bits = sorted({g.check_vertex(p) for p in players})
    check_cap(len(bits), cap)
    k = kernels.pick(g.n, backend)
    parts = _map_blocks(
        lambda a, b: k.expansion_histogram(g.pred_masks, g.thresholds, g.n, bits, a, b), len(bits), workers
    )
    hist = _sum_vectors(parts)
    if trace:
        return hist
    factor = 1 << (g.n - len(bits))
    return [h * factor for h in hist]


def expansion_bruteforce(g: InfluenceGraph, players: Iterable[int], k: int, trace: bool = False, cap: int | None = None, **kw) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= g.n:
        return 0
    return expansion_histogram(g, players, trace=trace, cap=cap, **kw)[k]


# simple-game indices ------------------------------------------------------------


def game_table(game: InfluenceGame, cap: int | None = None, workers: int = 1, backend: str | None = None) -> tuple[bytearray, list[int]]:
    """Win table over coalitions of players; index bit j is the j-th smallest player."""
    bits = sorted(game.players)
    check_cap(len(bits), cap)
    g = game.graph
    k = kernels.pick(g.n, backend)
    table = bytearray(1 << len(bits))
    _map_blocks(
        lambda a, b: k.fill_game_table(g.pred_masks, g.thresholds, g.n, bits, game.quota, table, a, b),
        len(bits),
        workers,
    )
    return table, bits


def power_indices(game: InfluenceGame, **kw) -> dict[int, tuple[int, int]]:
    """player -> (Rae, Banzhaf) for every player of the game."""
    workers = kw.get("workers", 1)
    backend = kw.get("backend")
    table, bits = game_table(game, **kw)
    if not bits:
        return {}
    rae = _agreement(table, len(bits), workers, backend)
    bz = _swings(table, len(bits), workers, backend)
    return {p: (rae[j], bz[j]) for j, p in enumerate(bits)}


def _player_index(game: InfluenceGame, i: int) -> None:
    if i not in game.players:
        raise InputError(f"vertex {i!r} is not a player")


def rae_index(game: InfluenceGame, i: int, **kw) -> int:
    _player_index(game, i)
    return power_indices(game, **kw)[i][0]


def banzhaf_value(game: InfluenceGame, i: int, **kw) -> int:
    _player_index(game, i)
    return power_indices(game, **kw)[i][1]


def winning_losing_counts(game: InfluenceGame, **kw) -> tuple[int, int]:
    """(|W|, |L|) over all X subset of V."""
    hist = expansion_histogram(game.graph, game.players, **kw)
    won = sum(hist[game.quota:])
    return won, sum(hist) - won


def count_subsets(n: int, predicate: Callable[[int], bool]) -> int:
    """Number of masks in [0, 2^n) satisfying ``predicate``; plain loop, for small oracles."""
    return sum(1 for m in range(1 << n) if predicate(m))


__all__ = [
    "DEFAULT_CAP",
    "banzhaf_value",
    "check_cap",
    "count_subsets",
    "decision_table",
    "expansion_bruteforce",
    "expansion_histogram",
    "game_table",
    "model_indices",
    "power_indices",
    "prefix_blocks",
    "rae_index",
    "satisfaction_bruteforce",
    "to_mask",
    "winning_losing_counts",
]
