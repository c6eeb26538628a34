import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import barbell, complete, make_net, random_connected
from oracles import best_modularity_exhaustive, modularity_oracle, set_partitions
from scimap._accel import use_backend
from scimap.community import Partition, cluster_census, louvain, louvain_restarts, modularity


def two_triangles():
    return make_net([("a", "b"), ("b", "c"), ("a", "c"), ("x", "y"), ("y", "z"), ("x", "z"), ("c", "x")])


def edges3(net):
    return [(u, v, w) for u, v, w in net.edges]


def ids(net):
    return [n.node_id for n in net.nodes]


def move_gain_exists(net, assignment, gamma=1.0):
    """True if relocating one node to a neighbouring community raises Q."""
    q = modularity(net, assignment, gamma)
    nbrs = {v: set() for v in assignment}
    for u, v, _ in net.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    fresh = max(assignment.values()) + 1
    for v in assignment:
        for c in {assignment[u] for u in nbrs[v]} | {fresh}:
            if c == assignment[v]:
                continue
            trial = dict(assignment)
            trial[v] = c
            if modularity(net, trial, gamma) > q + 1e-12:
                return True
    return False


# ---------------------------------------------------------------- modularity


def test_two_triangles_example():
    part = {v: 0 for v in "abc"} | {v: 1 for v in "xyz"}
    assert modularity(two_triangles(), part) == pytest.approx(5 / 14, abs=1e-12)


def test_single_community_is_zero():
    rnd = random.Random(1)
    for _ in range(20):
        net = random_connected(rnd.randint(2, 12), 0.3, rnd, weighted=True)
        assert modularity(net, {v: 0 for v in ids(net)}) == pytest.approx(0.0, abs=1e-12)


def test_modularity_errors():
    net = two_triangles()
    with pytest.raises(ValueError, match="does not cover"):
        modularity(net, {"a": 0})
    with pytest.raises(ValueError, match="no edges: modularity undefined"):
        modularity(make_net([], nodes=["a", "b"]), {"a": 0, "b": 1})
    with pytest.raises(ValueError):
        modularity(net, {v: 0 for v in ids(net)}, resolution=0)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10_000), st.floats(0.25, 4.0))
def test_modularity_matches_matrix_oracle(n, seed, gamma):
    rnd = random.Random(seed)
    net = random_connected(n, 0.4, rnd, weighted=True)
    assignment = {v: rnd.randrange(3) for v in ids(net)}
    expected = modularity_oracle(ids(net), edges3(net), assignment, gamma)
    assert modularity(net, assignment, gamma) == pytest.approx(expected, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.integers(0, 10_000), st.floats(0.01, 1000))
def test_modularity_scale_invariant(n, seed, factor):
    rnd = random.Random(seed)
    net = random_connected(n, 0.3, rnd, weighted=True)
    scaled = make_net([(u, v, w * factor) for u, v, w in net.edges])
    assignment = {v: rnd.randrange(3) for v in ids(net)}
    assert modularity(scaled, assignment) == pytest.approx(modularity(net, assignment), abs=1e-9)


def test_modularity_range():
    rnd = random.Random(5)
    for _ in range(50):
        net = random_connected(rnd.randint(2, 9), 0.3, rnd)
        a = {v: rnd.randrange(4) for v in ids(net)}
        assert -0.5 - 1e-12 <= modularity(net, a) <= 1.0


# ---------------------------------------------------------------- louvain examples


@pytest.mark.parametrize("seed", range(10))
def test_barbell_recovers_cliques(seed):
    p = louvain(barbell(5), seed=seed)
    assert p.cluster_count == 2
    groups = {frozenset(m) for m in p.members().values()}
    assert groups == {frozenset(f"a{i}" for i in range(5)), frozenset(f"b{i}" for i in range(5))}


def test_barbell_split_is_optimal_among_three_block_partitions():
    net = barbell(5)
    nodes = ids(net)
    best = max(modularity(net, a) for a in set_partitions(nodes, max_blocks=3))
    assert louvain(net).modularity == pytest.approx(best, abs=1e-12)


def test_triangle_is_one_community():
    net = complete(3)
    assert len(list(set_partitions(ids(net)))) == 5
    p = louvain(net)
    assert p.cluster_count == 1 and p.modularity == pytest.approx(0.0, abs=1e-12)


def test_two_disjoint_edges():
    p = louvain(make_net([("a", "b"), ("c", "d")]))
    assert p.cluster_count == 2 and p.modularity == pytest.approx(0.5, abs=1e-12)


def test_edgeless_rejected():
    with pytest.raises(ValueError, match="no edges"):
        louvain(make_net([], nodes=["a"]))


# ---------------------------------------------------------------- louvain properties


def test_partition_invariants_and_quality_battery():
    rnd = random.Random(2024)
    good = total = 0
    for _ in range(150):
        n = rnd.randint(3, 8)
        net = random_connected(n, rnd.choice([0.15, 0.3, 0.5]), rnd, weighted=rnd.random() < 0.5)
        p = louvain(net, seed=rnd.randrange(1000))
        labels = sorted(set(p.assignment.values()))
        assert labels == list(range(len(labels)))
        assert set(p.assignment) == set(ids(net))
        assert p.modularity == pytest.approx(modularity(net, p.assignment), abs=1e-9)
        singletons = modularity(net, {v: i for i, v in enumerate(ids(net))})
        assert p.modularity >= singletons - 1e-12
        assert not move_gain_exists(net, p.assignment)
        best = best_modularity_exhaustive(ids(net), edges3(net))
        total += 1
        good += p.modularity >= 0.9 * best - 1e-12
    assert good / total >= 0.95


def test_move_stable_on_larger_graphs():
    rnd = random.Random(77)
    for _ in range(10):
        net = random_connected(40, 0.08, rnd, weighted=True)
        for gamma in (0.5, 1.0, 2.0):
            p = louvain(net, resolution=gamma, seed=rnd.randrange(100))
            assert not move_gain_exists(net, p.assignment, gamma)


def test_deterministic_per_seed():
    net = random_connected(60, 0.06, random.Random(4))
    a, b = louvain(net, seed=13), louvain(net, seed=13)
    assert a.assignment == b.assignment and a.modularity == b.modularity


def test_seed_variation_stays_close_on_cliques():
    qs = [louvain(barbell(5), seed=s).modularity for s in range(10)]
    qs += [louvain(barbell(8), seed=s).modularity for s in range(10)]
    assert max(qs[:10]) - min(qs[:10]) <= 0.05
    assert max(qs[10:]) - min(qs[10:]) <= 0.05


def test_resolution_controls_cluster_count():
    net = random_connected(60, 0.08, random.Random(8))
    low = louvain(net, resolution=0.2).cluster_count
    high = louvain(net, resolution=5.0).cluster_count
    assert low < high


def test_restarts_pick_best_then_lowest_seed():
    net = random_connected(50, 0.08, random.Random(6))
    runs = [louvain(net, seed=10 + r) for r in range(5)]
    best = louvain_restarts(net, seed=10, restarts=5)
    assert best.modularity == max(r.modularity for r in runs)
    assert best.seed == min(r.seed for r in runs if r.modularity == best.modularity)
    with pytest.raises(ValueError):
        louvain_restarts(net, restarts=0)


def test_python_backend_identical():
    net = random_connected(50, 0.08, random.Random(12), weighted=True)
    fast = louvain(net, seed=3)
    with use_backend("numpy"):
        slow = louvain(net, seed=3)
    assert fast.assignment == slow.assignment


# ---------------------------------------------------------------- census


def test_census_share_for_203_nodes():
    # 12-node clique plus 191 pairs/singletons in smaller cliques
    edges = list(itertools.combinations([f"big{i}" for i in range(12)], 2))
    rest = [f"n{i}" for i in range(191)]
    edges += [(rest[i], rest[i + 1]) for i in range(0, 190, 2)]
    net = make_net(edges, nodes=rest, kind="institution")
    assert net.n == 203
    p = louvain(net)
    rows = cluster_census(net, p)
    assert rows[0][1] == 12
    assert round(rows[0][2], 2) == 5.91
    assert sum(r[1] for r in rows) == 203


def test_census_single_and_equal_communities():
    net = complete(4)
    (row,) = cluster_census(net, Partition({v: 0 for v in ids(net)}, 0.0))
    assert row[1] == 4 and row[2] == 100.0
    net = make_net(list(itertools.combinations("abcde", 2)) + list(itertools.combinations("vwxyz", 2)))
    rows = cluster_census(net, Partition({v: (1 if v in "abcde" else 0) for v in ids(net)}, 0.0))
    assert [(r[0], r[2]) for r in rows] == [(0, 50.0), (1, 50.0)]


def test_census_member_order():
    net = make_net([("a", "b", 3), ("b", "c", 1), ("c", "d", 1), ("d", "e", 1)])
    p = Partition({v: 0 for v in "abcde"}, 0.0)
    (row,) = cluster_census(net, p, max_members=3)
    assert row[3] == ["b", "a", "c"]
