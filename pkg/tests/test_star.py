import random
from itertools import product

import pytest

from conftest import load
from generators import random_extended_star, random_star
from influsat import oracle
from influsat import star as S
from influsat.errors import InputError, ModelValidityError, NotStarError
from influsat.graph import InfluenceGraph
from influsat.models import InfluenceGame, NonObliviousModel, ObliviousModel, nonoblivious_final_decision
from influsat.graph import spread_mask

FIG7 = S.StarGame(L=3, I=1, R=2, F=1, fc=3, quota=4)


def test_fig7_counts():
    assert S.star_expansion_counts(FIG7) == [4 * c for c in (1, 6, 15, 10, 0, 3, 12, 13, 4)]
    assert S.star_winning_losing(FIG7) == (128, 128)
    assert S.star_expansion_count(FIG7, 5) == 12
    assert S.star_expansion_count(FIG7, 5, trace=True) == 3
    g = FIG7.to_game()
    assert oracle.expansion_histogram(g.graph, g.players) == S.star_expansion_counts(FIG7)


def test_quota_zero_wins_everything():
    assert S.star_winning_losing(FIG7.replace(quota=0)) == (256, 0)


def test_center_label_zero():
    s = S.StarGame(L=2, I=1, R=2, F=1, fc=0, quota=1)
    for k in range(s.R + s.F + 1):
        assert S.star_expansion_count(s, k) == 0
    g = s.to_game()
    assert S.star_expansion_counts(s) == oracle.expansion_histogram(g.graph, g.players)


def test_out_of_range_k():
    assert S.star_expansion_count(FIG7, -1) == 0
    assert S.star_expansion_count(FIG7, 9) == 0


def test_canonical_layout():
    s = S.StarGame(L=2, I=1, R=2, F=1, fc=2, quota=3, zero_labels={"L": 1})
    assert s.center == 5
    assert s.blocks()["R"] == range(2, 4)
    assert s.vertex_class(0) == ("L", True)
    assert s.vertex_class(1) == ("L", False)
    assert s.vertex_class(5) == ("c", False)
    assert s.vertex_class(6) == ("F", False)
    assert s.labels() == [0, 1, 1, 1, 1, 2, 1]
    assert s.players() == {0, 1, 2, 3, 4}


def test_descriptor_roundtrip_and_errors():
    doc = load("fig7_star.json")
    assert S.star_from_dict(doc) == FIG7
    assert S.star_from_dict(FIG7.to_dict()) == FIG7
    e = S.ExtendedStarGame(FIG7, 3, 2)
    assert S.star_from_dict(e.to_dict()) == e
    with pytest.raises(InputError):
        S.star_from_dict({"L": 1, "quota": 1})
    with pytest.raises(InputError):
        S.star_from_dict({"L": 1, "fc": 5, "quota": 1})
    with pytest.raises(InputError):
        S.star_from_dict({"L": 1, "fc": 1, "quota": 1, "zero_labels": {"L": 2}})
    with pytest.raises(InputError):
        S.star_from_dict({"L": 1, "fc": 1, "quota": 1, "color": 3})
    with pytest.raises(InputError):
        S.ExtendedStarGame(FIG7, 0, 1)


def raw_star(leaders, recips, indep, followers, labels, quota):
    n = leaders + recips + indep + followers + 1
    c = n - 1
    L = range(0, leaders)
    R = range(leaders, leaders + recips)
    I = range(leaders + recips, leaders + recips + indep)
    F = range(leaders + recips + indep, c)
    arcs = [(v, c) for v in L] + [(v, c) for v in R] + [(c, v) for v in R] + [(c, v) for v in F]
    return InfluenceGame(InfluenceGraph(n, arcs, labels), quota, set(L) | set(R) | set(I))


def test_reciprocal_with_large_label_becomes_leader():
    game = raw_star(1, 2, 0, 1, [1, 2, 1, 1, 2], 2)
    rec = S.recognize_star(game)
    assert (rec.star.L, rec.star.R, rec.star.F) == (2, 1, 1)
    assert rec.center == 4
    g = game.graph
    assert S.star_expansion_counts(rec.star) == oracle.expansion_histogram(g, game.players)


def test_center_label_clamped_and_rounded():
    game = raw_star(3, 2, 0, 0, [1, 1, 1, 1, 1, 10], 1)
    assert S.recognize_star(game).star.fc == 6
    game = raw_star(3, 0, 0, 1, [1, 1, 1, "1/2", "3/2"], 1)
    s = S.recognize_star(game).star
    assert s.fc == 2 and s.zero_labels["F"] == 0


def test_normal_star_unchanged():
    rec = S.recognize_star(FIG7.to_game())
    assert rec.star == FIG7
    assert rec.mapping == {v: v for v in range(8)}


def test_recognition_with_shuffled_ids():
    doc = load("fig7_nonoblivious.json")
    g = InfluenceGraph.from_dict(doc)
    rng = random.Random(1)
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = InfluenceGraph(g.n, [(perm[u], perm[v]) for u, v in g.arcs], {perm[v]: g.labels[v] for v in range(g.n)})
    game = InfluenceGame(h, 4, {perm[v] for v in doc["players"]})
    rec = S.recognize_star(game)
    assert rec.star == FIG7
    assert rec.center == perm[6]
    sat = oracle.satisfaction_bruteforce(NonObliviousModel(game))
    for v in range(h.n):
        assert S.sat_nonoblivious_star(rec.star, rec.mapping[v]) == sat[v]


def test_not_a_star():
    path = InfluenceGraph(4, [(0, 1), (2, 3)])
    with pytest.raises(NotStarError) as exc:
        S.recognize_star(InfluenceGame(path, 1, {0, 2}))
    assert exc.value.exit_code == 3
    game = raw_star(2, 0, 0, 1, [1, 1, 2, 1], 1)
    with pytest.raises(NotStarError):
        S.recognize_star(game)
    with pytest.raises(NotStarError, match="follower"):
        S.normalize_star(game, 3)
    wrong_players = InfluenceGame(FIG7.to_graph(), 4, {0, 1})
    with pytest.raises(NotStarError):
        S.recognize_star(wrong_players)


def test_extension_without_pendants_is_the_star():
    for k in range(FIG7.n + 1):
        assert S.extended_star_expansion_count(S.ExtendedStarGame(FIG7, 3, 0), k) == S.star_expansion_count(FIG7, k)


def test_extended_star_small_k():
    e = S.ExtendedStarGame(FIG7, 3, 2)
    g = e.to_game()
    hist = oracle.expansion_histogram(g.graph, g.players)
    assert S.extended_star_expansion_counts(e) == hist
    assert sum(hist) == 1 << e.n
    assert S.extended_star_expansion_counts(e, trace=True) == oracle.expansion_histogram(g.graph, g.players, trace=True)


@pytest.mark.parametrize("seed", range(40))
def test_random_counts_against_oracle(seed):
    rng = random.Random(seed)
    s = random_star(rng, max_n=12, zero_labels=True)
    g = s.to_game()
    assert S.star_expansion_counts(s) == oracle.expansion_histogram(g.graph, g.players)
    assert S.star_expansion_counts(s, trace=True) == oracle.expansion_histogram(g.graph, g.players, trace=True)
    e = random_extended_star(rng, max_n=13, zero_labels=True)
    eg = e.to_game()
    assert S.extended_star_expansion_counts(e) == oracle.expansion_histogram(eg.graph, eg.players)


@pytest.mark.parametrize("seed", range(40))
def test_random_satisfaction_against_oracle(seed):
    rng = random.Random(500 + seed)
    s = random_star(rng, max_n=12)
    g = s.to_game()
    so = oracle.satisfaction_bruteforce(ObliviousModel(g))
    assert [S.sat_oblivious_star(s, i) for i in range(s.n)] == so
    for rule in ("restricted", "literal"):
        sn = oracle.satisfaction_bruteforce(NonObliviousModel(g, rule))
        assert [S.sat_nonoblivious_star(s, i, rule) for i in range(s.n)] == sn


def test_zero_label_oblivious_counting():
    # with zero labels the decision models are undefined, but the swing count still matches enumeration
    s = S.StarGame(L=2, I=1, R=2, F=1, fc=2, quota=4, zero_labels={"R": 1})
    g = s.to_game()
    table, bits = oracle.game_table(g)
    for j, v in enumerate(bits):
        swings = sum(1 for m in range(1 << len(bits)) if (m >> j) & 1 and table[m] and not table[m ^ (1 << j)])
        assert S.coalition_swings(s, v) == swings


def test_unreachable_center_gives_half():
    s = S.StarGame(L=2, I=0, R=2, F=2, fc=5, quota=3)
    half = 1 << (s.n - 1)
    assert all(S.sat_oblivious_star(s, i) == half for i in (s.center, *s.blocks()["F"]))
    assert oracle.satisfaction_bruteforce(ObliviousModel(s.to_game())) == [S.sat_oblivious_star(s, i) for i in range(s.n)]


def test_followers_and_center_oblivious_half():
    half = 1 << (FIG7.n - 1)
    assert S.sat_oblivious_star(FIG7, FIG7.center) == half
    assert S.sat_oblivious_star(FIG7, 7) == half


def test_center_corrections():
    for s in (FIG7, FIG7.replace(fc=6), FIG7.replace(quota=6), S.StarGame(L=4, I=2, R=1, F=1, fc=2, quota=5)):
        a0, b1 = S.center_corrections(s)
        brute = oracle.satisfaction_bruteforce(NonObliviousModel(s.to_game()), s.center)
        assert brute == (1 << (s.n - 1)) + a0 + b1
    s = FIG7.replace(fc=6, quota=3)
    a0, b1 = S.center_corrections(s)
    assert a0 == 0 and b1 > 0


def test_non_center_nonoblivious_can_exceed_half():
    sat = S.nonoblivious_star_satisfactions(FIG7)
    assert sat["L"] == 176
    assert sat["I"] == sat["c"] == sat["F"] == 128


def test_divergence_is_confined_to_center():
    g = FIG7.to_game()
    pm = g.players_mask
    for x in product((0, 1), repeat=FIG7.n):
        xm = sum(b << i for i, b in enumerate(x))
        active = spread_mask(g.graph, xm & pm)
        obl = [(active >> i) & 1 for i in range(FIG7.n)]
        non = nonoblivious_final_decision(g, x)
        assert [i for i in range(FIG7.n) if obl[i] != non[i]] in ([], [FIG7.center])


def test_nonoblivious_needs_positive_labels():
    with pytest.raises(ModelValidityError):
        S.sat_nonoblivious_star(FIG7.replace(zero_labels={"L": 1}), 0)
    with pytest.raises(ModelValidityError):
        S.center_corrections(FIG7.replace(fc=0))
