import itertools
import random
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, make_net, path, random_connected, star
from oracles import apl_oracle, betweenness_oracle, bfs_dist, adjacency
from scimap._accel import use_backend
from scimap.metrics import (
    CentralityVector,
    MetricUndefinedError,
    average_path_length,
    betweenness,
    density,
    top_k,
)
from scimap.synthetic import random_network


def raw(net, **kw):
    return betweenness(net, normalized=False, **kw).scores


def as_lists(net):
    return [n.node_id for n in net.nodes], [(u, v) for u, v, _ in net.edges]


# ---------------------------------------------------------------- closed forms


def test_density_examples():
    assert density(complete(5)) == 1.0
    assert density(path(3)) == pytest.approx(2 / 3, abs=1e-12)
    with pytest.raises(MetricUndefinedError, match="metric undefined: density"):
        density(make_net([], nodes=["a"]))


@pytest.mark.parametrize("n", [3, 4, 7, 12])
def test_closed_forms_complete(n):
    net = complete(n)
    assert density(net) == 1.0
    assert average_path_length(net) == 1.0
    assert all(v == 0 for v in raw(net).values())


@pytest.mark.parametrize("n", [3, 5, 9])
def test_closed_forms_star(n):
    net = star(n)
    assert density(net) == pytest.approx(2 / n, abs=1e-12)
    assert average_path_length(net) == pytest.approx(2 * (n - 1) / n, abs=1e-12)
    b = raw(net)
    assert b["c"] == comb(n - 1, 2)
    assert all(b[f"l{i}"] == 0 for i in range(n - 1))
    assert betweenness(net).scores["c"] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [3, 4, 6, 10])
def test_closed_forms_path(n):
    net = path(n)
    assert average_path_length(net) == pytest.approx((n + 1) / 3, abs=1e-12)
    b = raw(net)
    for i in range(n):
        assert b[f"p{i}"] == pytest.approx(i * (n - 1 - i), abs=1e-9)


def test_path4_and_c4_examples():
    b = raw(path(4))
    assert (b["p1"], b["p2"]) == (2.0, 2.0)
    assert set(raw(cycle(4)).values()) == {0.5}
    assert set(raw(cycle(4), weighted=True).values()) == {0.5}


@pytest.mark.parametrize("n", [5, 6, 9])
def test_closed_forms_cycle(n):
    net = cycle(n)
    h = n // 2
    # odd cycles: sum_{d=1..h} (d-1); even cycles add the split antipodal pairs
    expected = sum(d - 1 for d in range(1, h + 1)) if n % 2 else sum(d - 1 for d in range(1, h)) + (h - 1) / 2
    for v in raw(net).values():
        assert v == pytest.approx(expected, abs=1e-9)
    apl = sum(min(d, n - d) for d in range(1, n)) / (n - 1)
    assert average_path_length(net) == pytest.approx(apl, abs=1e-12)


# ---------------------------------------------------------------- oracle agreement


def test_brandes_matches_geodesic_oracle_200_graphs():
    rnd = random.Random(20240601)
    for _ in range(200):
        n = rnd.randint(3, 8)
        net = random_connected(n, rnd.choice([0.1, 0.3, 0.6]), rnd)
        nodes, edges = as_lists(net)
        expected = betweenness_oracle(nodes, edges)
        got = raw(net)
        for v in nodes:
            assert got[v] == pytest.approx(expected[v], abs=1e-9)
        assert average_path_length(net) == pytest.approx(apl_oracle(nodes, edges), abs=1e-12)


def test_weighted_betweenness_with_unit_weights_equals_unweighted():
    rnd = random.Random(3)
    for _ in range(30):
        net = random_connected(rnd.randint(3, 10), 0.3, rnd)
        a, b = raw(net), raw(net, weighted=True)
        for v in a:
            assert a[v] == pytest.approx(b[v], abs=1e-9)


def test_weighted_betweenness_prefers_strong_ties():
    # a-b strong (cost 1/4), b-c strong, a-c weak (cost 1): a..c detours through b
    net = make_net([("a", "b", 4), ("b", "c", 4), ("a", "c", 1)])
    assert raw(net, weighted=True)["b"] == 1.0
    assert raw(net)["b"] == 0.0


def test_weighted_betweenness_oracle_by_enumeration():
    """Compare against all simple paths with minimal cost (integer-friendly weights)."""
    rnd = random.Random(11)
    for _ in range(40):
        n = rnd.randint(3, 7)
        net = random_connected(n, 0.4, rnd, weighted=True)
        nodes, _ = as_lists(net)
        cost = {}
        for u, v, w in net.edges:
            cost[(u, v)] = cost[(v, u)] = 1.0 / w
        adj = adjacency(nodes, [(u, v) for u, v, _ in net.edges])
        expected = {v: 0.0 for v in nodes}
        for s, t in itertools.combinations(nodes, 2):
            paths = []

            def walk(p):
                if p[-1] == t:
                    paths.append((sum(cost[e] for e in zip(p, p[1:])), p))
                    return
                for w in adj[p[-1]]:
                    if w not in p:
                        walk(p + [w])

            walk([s])
            best = min(c for c, _ in paths)
            geo = [p for c, p in paths if abs(c - best) < 1e-9]
            for v in nodes:
                if v not in (s, t):
                    expected[v] += sum(v in p for p in geo) / len(geo)
        got = raw(net, weighted=True)
        for v in nodes:
            assert got[v] == pytest.approx(expected[v], abs=1e-9)


def tree_edges(n, rnd):
    return [(f"t{i}", f"t{rnd.randrange(i)}") for i in range(1, n)]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.integers(0, 10_000))
def test_tree_invariants(n, seed):
    rnd = random.Random(seed)
    net = make_net(tree_edges(n, rnd))
    nodes, edges = as_lists(net)
    b = raw(net)
    adj = adjacency(nodes, edges)
    for v in nodes:
        if len(adj[v]) == 1:
            assert b[v] == 0
    total = sum(d - 1 for s, t in itertools.combinations(nodes, 2) for d in [bfs_dist(adj, s)[t]])
    assert sum(b.values()) == pytest.approx(total, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10_000))
def test_normalized_scores_in_unit_interval(n, seed):
    net = random_connected(n, 0.3, random.Random(seed))
    assert all(0.0 <= s <= 1.0 + 1e-12 for s in betweenness(net).scores.values())


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 10), st.integers(0, 10_000))
def test_apl_relabel_invariant_and_edge_addition(n, seed):
    rnd = random.Random(seed)
    net = random_connected(n, 0.2, rnd)
    relabeled = make_net([(f"x{u}", f"x{v}") for u, v, _ in net.edges])
    assert average_path_length(relabeled) == pytest.approx(average_path_length(net), abs=1e-12)
    present = {(u, v) for u, v, _ in net.edges}
    missing = [p for p in itertools.combinations(sorted(n.node_id for n in net.nodes), 2) if p not in present]
    if missing:
        extra = make_net([(u, v) for u, v, _ in net.edges] + [rnd.choice(missing)])
        before = average_path_length(net, "largest_component")
        assert average_path_length(extra, "largest_component") <= before + 1e-12


# ---------------------------------------------------------------- APL policies and errors


def test_apl_policies_on_fragmented_network():
    net = make_net([("a", "b"), ("b", "c"), ("x", "y")], nodes=["z"])
    assert average_path_length(net) == pytest.approx((1 + 1 + 2 + 1) / 4)
    assert average_path_length(net, "largest_component") == pytest.approx(4 / 3)
    with pytest.raises(ValueError):
        average_path_length(net, "everything")


def test_apl_edgeless_undefined():
    with pytest.raises(MetricUndefinedError):
        average_path_length(make_net([], nodes=["a", "b"]))


def test_normalized_betweenness_needs_three_nodes():
    with pytest.raises(MetricUndefinedError):
        betweenness(make_net([("a", "b")]))
    assert raw(make_net([("a", "b")])) == {"a": 0.0, "b": 0.0}


def test_disconnected_betweenness_sums_per_component():
    net = make_net([("a", "b"), ("b", "c"), ("x", "y"), ("y", "z")])
    b = raw(net)
    assert b["b"] == 1.0 and b["y"] == 1.0 and b["a"] == 0.0


# ---------------------------------------------------------------- determinism and backends


def test_worker_count_bit_identical():
    net = random_network(300, 1200, seed=5)
    ref = betweenness(net, workers=1).scores
    for workers in (2, 3, 8):
        assert betweenness(net, workers=workers).scores == ref
    wref = betweenness(net, weighted=True, workers=1).scores
    assert betweenness(net, weighted=True, workers=4).scores == wref


def test_python_backend_agrees():
    rnd = random.Random(9)
    net = random_connected(40, 0.1, rnd, weighted=True)
    fast = (raw(net), raw(net, weighted=True), average_path_length(net))
    with use_backend("numpy"):
        slow = (raw(net), raw(net, weighted=True), average_path_length(net))
    for a, b in zip(fast[:2], slow[:2]):
        assert all(np.isclose(a[v], b[v], atol=1e-12) for v in a)
    assert fast[2] == pytest.approx(slow[2], abs=1e-12)


# ---------------------------------------------------------------- top_k


def test_top_k_examples():
    assert [r[0] for r in top_k(betweenness(star(5)), 1)] == ["c"]
    zeros = CentralityVector({k: 0.0 for k in "dcba"}, True, False)
    assert [r[1] for r in top_k(zeros, 3)] == ["a", "b", "c"]
    ties = CentralityVector({"a": 0.2, "b": 0.5, "c": 0.5}, True, False)
    assert top_k(ties, 2) == [("b", "b", 0.5), ("c", "c", 0.5)]
    assert top_k(ties, 2, {"b": "zeta", "c": "alpha"})[0][0] == "c"
    assert len(top_k(ties, 10)) == 3
    with pytest.raises(ValueError):
        top_k(ties, 0)
