import random
from fractions import Fraction
from math import comb

import pytest

from generators import random_game, random_golf
from influsat import oracle
from influsat.errors import CapExceededError, InputError
from influsat.graph import InfluenceGraph, spread_mask, to_mask
from influsat.models import (
    GolfModel,
    InfluenceGame,
    NonObliviousModel,
    ObliviousModel,
    collective_decision,
    golf_to_influence_game,
    is_odd_olf,
    mask_vector,
)

DICTATOR = InfluenceGame(InfluenceGraph(2, [(0, 1)], [1, 1]), 2, {0})
FIG1 = InfluenceGraph(5, [(1, 0), (2, 0), (3, 0)])


def naive_sat(model, n):
    out = [0] * n
    for m in range(1 << n):
        x = mask_vector(m, n)
        c = collective_decision(model, x)
        for i in range(n):
            out[i] += x[i] == c
    return out


def test_dictator_satisfaction():
    m = ObliviousModel(DICTATOR)
    assert oracle.satisfaction_bruteforce(m, 0) == 4
    assert oracle.satisfaction_bruteforce(m, 1) == 2


def test_single_vertex():
    m = ObliviousModel(InfluenceGame(InfluenceGraph(1, []), 1, {0}))
    assert oracle.satisfaction_bruteforce(m, 0) == 2


def test_unknown_actor():
    with pytest.raises(InputError):
        oracle.satisfaction_bruteforce(ObliviousModel(DICTATOR), 2)


def test_rae_and_banzhaf_small_games():
    either = InfluenceGame(InfluenceGraph(2, []), 1, {0, 1})
    # W = {0}, {1}, {0,1}: Rae(0) = 2 winning with 0 plus 1 losing without
    assert oracle.rae_index(either, 0) == 3
    w_first = InfluenceGame(InfluenceGraph(3, [(0, 2)], [1, 1, 1]), 2, {0, 1})
    # wins iff 0 is in the coalition
    assert oracle.rae_index(w_first, 0) == 4
    assert oracle.rae_index(w_first, 1) == 2
    assert oracle.banzhaf_value(w_first, 0) == 2
    assert oracle.banzhaf_value(w_first, 1) == 0
    with pytest.raises(InputError):
        oracle.rae_index(w_first, 2)


def test_golf_satisfaction_of_tie_free_example():
    m = GolfModel(FIG1, Fraction(1, 2), 3)
    sat = oracle.satisfaction_bruteforce(m)
    assert sat == [16, 24, 24, 24, 16]
    assert sat == oracle.satisfaction_bruteforce(ObliviousModel(golf_to_influence_game(m)))


@pytest.mark.parametrize("seed", range(15))
def test_rae_banzhaf_identity(seed):
    rng = random.Random(seed)
    game = random_game(rng, max_players=10)
    half = 1 << max(len(game.players) - 1, 0)
    for p, (rae, bz) in oracle.power_indices(game).items():
        assert rae == half + bz
        assert rae >= half


@pytest.mark.parametrize("seed", range(10))
def test_sat_equals_rae_over_all_actors(seed):
    rng = random.Random(100 + seed)
    game = random_game(rng, max_n=10)
    if not game.has_positive_labels():
        game = InfluenceGame(game.graph.with_labels([max(f, 1) for f in game.graph.labels]), game.quota, game.players)
    for model in (ObliviousModel(game), NonObliviousModel(game), NonObliviousModel(game, "literal")):
        sat = oracle.satisfaction_bruteforce(model)
        rae, bz = oracle.model_indices(model)
        assert sat == rae == naive_sat(model, game.n)
        assert all(r - b == 1 << (game.n - 1) for r, b in zip(rae, bz))


@pytest.mark.parametrize("seed", range(10))
def test_expansion_buckets(seed):
    rng = random.Random(200 + seed)
    game = random_game(rng)
    g = game.graph
    hist = oracle.expansion_histogram(g, game.players)
    assert sum(hist) == 1 << g.n
    naive = [0] * (g.n + 1)
    pm = game.players_mask
    for x in range(1 << g.n):
        naive[spread_mask(g, x & pm).bit_count()] += 1
    assert hist == naive
    trace = oracle.expansion_histogram(g, game.players, trace=True)
    assert [t << (g.n - len(game.players)) for t in trace] == hist


def test_small_k_binomial_remark():
    g = InfluenceGraph(6, [(0, 3), (1, 4), (2, 5)], [1, 1, 1, 2, 2, 2])
    players = {0, 1, 2}
    # outsiders need 2 active predecessors, which never happens, and k < 2
    for k in range(2):
        assert oracle.expansion_bruteforce(g, players, k) == comb(3, k) * 8
    empty = InfluenceGraph(4, [], [1, 1, 1, 1])
    for k in range(5):
        assert oracle.expansion_bruteforce(empty, [], k) == (1 << 4 if k == 0 else 0)


def test_winning_losing():
    game = InfluenceGame(InfluenceGraph(4, [(0, 1)], [1, 1, 1, 1]), 0, {0, 2})
    assert oracle.winning_losing_counts(game) == (16, 0)
    game = InfluenceGame(InfluenceGraph(4, [(0, 1)], [1, 1, 1, 1]), 4, {0, 2, 3})
    won, lost = oracle.winning_losing_counts(game)
    assert won == 2 and won + lost == 16


def test_workers_do_not_change_results():
    rng = random.Random(9)
    game = random_game(rng, max_players=12, max_n=12)
    for w in (1, 3, 8):
        assert oracle.expansion_histogram(game.graph, game.players, workers=w) == oracle.expansion_histogram(game.graph, game.players)
    m = NonObliviousModel(InfluenceGame(game.graph.with_labels([max(f, 1) for f in game.graph.labels]), game.quota, game.players))
    assert oracle.satisfaction_bruteforce(m, workers=4) == oracle.satisfaction_bruteforce(m)


def test_cap():
    g = InfluenceGraph(6, [])
    with pytest.raises(CapExceededError) as exc:
        oracle.satisfaction_bruteforce(ObliviousModel(InfluenceGame(g, 1, range(6))), cap=5)
    assert exc.value.exit_code == 4
    # expansion enumerates players only
    assert sum(oracle.expansion_histogram(g, [0, 1], cap=2)) == 64


def test_odd_olf_satisfaction_ordering():
    rng = random.Random(4)
    checked = 0
    while checked < 10:
        m = random_golf(rng, rng.randint(3, 9), odd=True)
        if not is_odd_olf(m):
            continue
        checked += 1
        sat = oracle.satisfaction_bruteforce(m)
        a = m.actors
        if a.leaders and a.independents:
            assert min(sat[i] for i in a.leaders) >= max(sat[i] for i in a.independents)
        for i in a.followers:
            assert sat[i] == 1 << (m.n - 1)
        for i in a.independents:
            assert sat[i] >= 1 << (m.n - 1)


def test_prefix_blocks_cover_range():
    blocks = oracle.prefix_blocks(5, 3)
    assert blocks[0][0] == 0 and blocks[-1][1] == 32
    assert all(b[1] == c[0] for b, c in zip(blocks, blocks[1:]))
    assert oracle.count_subsets(4, lambda m: m & 1) == 8
    assert to_mask([]) == 0
