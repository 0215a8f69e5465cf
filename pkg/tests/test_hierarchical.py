import random
from math import comb

import pytest

from conftest import load
from generators import random_hierarchical_game
from influsat import hierarchical as H
from influsat import oracle
from influsat.errors import ModelValidityError, NotHierarchicalError
from influsat.graph import InfluenceGraph
from influsat.models import InfluenceGame, NonObliviousModel, ObliviousModel

FIG4 = InfluenceGraph.from_dict(load("fig4_graph.json"))
FIG4_PLAYERS = frozenset({0, 1, 2, 11, 14, 15})


def test_fig4_decomposition_shape():
    d = H.decompose(FIG4)
    assert H.render(d.root) == "((((({0,1} (x) {3,4,5}) + ({2} (x) {6,7})) (x) {8,9}) (x) {10}) + (({11} (x) {12,13}) + {14,15}))"
    assert d.reconstructed_arcs() == FIG4.arcs
    assert d.leaf_vertices == FIG4_PLAYERS


def test_two_layer_complete_join_with_independent():
    g = InfluenceGraph(5, [(1, 0), (2, 0), (3, 0)])
    assert H.render(H.decompose(g).root) == "(({1,2,3} (x) {0}) + {4})"


def test_dict_roundtrip():
    d = H.decompose(FIG4)
    doc = d.to_dict()
    assert H.node_to_dict(H.node_from_dict(doc["root"])) == doc["root"]
    assert H.node_arcs(H.node_from_dict(doc["root"])) == set(FIG4.arcs)


@pytest.mark.parametrize(
    "arcs, vertex",
    [
        ([(0, 2), (1, 2), (0, 3)], 3),  # 3 misses predecessor 1
        ([(0, 1), (1, 2), (0, 2)], 2),  # arc skips a layer
        ([(0, 1), (1, 0)], 0),  # cycle
    ],
)
def test_not_hierarchical_certificates(arcs, vertex):
    n = max(max(a) for a in arcs) + 1
    with pytest.raises(NotHierarchicalError) as exc:
        H.decompose(InfluenceGraph(n, arcs))
    assert exc.value.certificate["vertex"] == vertex
    assert exc.value.exit_code == 3
    assert not H.is_strong_hierarchical(InfluenceGraph(n, arcs))


def test_empty_graph_table():
    d = H.decompose(InfluenceGraph(0, []))
    assert H.expansion_counts(d) == [1]


def test_leaf_table_with_zero_labels():
    g = InfluenceGraph(4, [], [0, 0, 1, 1])
    d = H.decompose(g)
    t = H.expansion_table(d, players={0, 2, 3})
    # vertex 1 is active regardless, vertex 0 is a free zero-label player
    assert t.nonzero() == {(2, 2): 2 * comb(2, 0), (3, 3): 2 * comb(2, 1), (4, 4): 2 * comb(2, 2)}
    assert t.total() == 8


def test_players_must_be_sources():
    d = H.decompose(FIG4)
    with pytest.raises(NotHierarchicalError):
        H.expansion_table(d, players={3})


def test_fig4_expansion_against_oracle():
    d = H.decompose(FIG4)
    assert H.expansion_counts(d) == oracle.expansion_histogram(FIG4, FIG4_PLAYERS)
    assert H.expansion_counts(d, trace=True) == oracle.expansion_histogram(FIG4, FIG4_PLAYERS, trace=True)
    assert H.expansion_count(d, 3) == oracle.expansion_bruteforce(FIG4, FIG4_PLAYERS, 3)
    assert H.expansion_count(d, 99) == 0


def test_reduce_R_on_fig4():
    r, index = H.reduce_graph_R(FIG4, 0)
    assert r.n == 15
    assert 0 not in index
    assert [r.labels[index[v]] for v in (3, 4, 5)] == [1, 1, 1]
    assert r.labels[index[8]] == FIG4.labels[8]
    kept_arcs = {(u, v) for u, v in FIG4.arcs if u != 0}
    assert r.arcs == {(index[u], index[v]) for u, v in kept_arcs}


def test_reduce_R_removes_dependent_followers():
    g = InfluenceGraph(4, [(0, 1), (0, 2), (3, 2), (1, 2)], [1, 1, 3, 1])
    plain, index = H.reduce_graph_R(g, 0)
    assert set(index) == {2, 3}
    assert plain.labels[index[2]] == 2
    cascade, _ = H.reduce_graph_R(g, 0, cascade=True)
    assert cascade.labels[index[2]] == 1


def test_reduce_R2_adds_pendants():
    g = InfluenceGraph(3, [(0, 1), (0, 2), (1, 2)], [1, 1, 2])
    r2, index = H.reduce_graph_R2(g, 0)
    assert set(index) == {0, 2}
    assert r2.n == 2 + 6
    assert r2.labels[index[2]] == 1
    assert all(r2.labels[v] == 1 for v in range(2, 8))
    assert {(index[0], v) for v in range(2, 8)} <= r2.arcs


def test_fig4_satisfaction_against_oracle():
    game = InfluenceGame(FIG4, 6, FIG4_PLAYERS)
    so = oracle.satisfaction_bruteforce(ObliviousModel(game))
    sn = oracle.satisfaction_bruteforce(NonObliviousModel(game))
    for i in range(FIG4.n):
        assert H.sat_oblivious_hierarchical(game, i) == so[i]
        assert H.sat_nonoblivious_hierarchical(game, i) == sn[i]


@pytest.mark.parametrize("seed", range(25))
def test_random_against_oracle(seed):
    rng = random.Random(1000 + seed)
    game = random_hierarchical_game(rng, max_n=11)
    d = H.decompose(game.graph)
    assert d.reconstructed_arcs() == game.graph.arcs
    assert H.expansion_counts(d) == oracle.expansion_histogram(game.graph, game.players)
    so = oracle.satisfaction_bruteforce(ObliviousModel(game))
    sn = oracle.satisfaction_bruteforce(NonObliviousModel(game))
    for i in range(game.n):
        assert H.sat_oblivious_hierarchical(game, i) == so[i]
        assert H.sat_nonoblivious_hierarchical(game, i) == sn[i]


@pytest.mark.parametrize("seed", range(10))
def test_random_zero_labels_and_player_subsets(seed):
    rng = random.Random(2000 + seed)
    game = random_hierarchical_game(rng, max_n=12, zero_labels=True)
    d = H.decompose(game.graph)
    subset = frozenset(v for v in d.leaf_vertices if rng.random() < 0.6)
    for pl in (d.leaf_vertices, subset):
        assert H.expansion_counts(d, pl) == oracle.expansion_histogram(game.graph, pl)
        assert H.expansion_counts(d, pl, trace=True) == oracle.expansion_histogram(game.graph, pl, trace=True)


def test_nonoblivious_rejects_zero_labels():
    g = InfluenceGraph(2, [(0, 1)], [1, 0])
    with pytest.raises(ModelValidityError):
        H.sat_nonoblivious_hierarchical(InfluenceGame(g, 1, {0}), 1)


def test_player_set_must_match_sources():
    game = InfluenceGame(FIG4, 3, {0, 1})
    with pytest.raises(NotHierarchicalError):
        H.sat_oblivious_hierarchical(game, 0)


def test_non_player_and_zero_label_get_half():
    # 0 and 2 are always active, so the game is won exactly when 1 plays
    g = InfluenceGraph(3, [(0, 2), (1, 2)], [0, 1, 1])
    game = InfluenceGame(g, 3, {0, 1})
    assert H.sat_oblivious_hierarchical(game, 0) == 4
    assert H.sat_oblivious_hierarchical(game, 2) == 4
    assert H.sat_oblivious_hierarchical(game, 1) == 8
