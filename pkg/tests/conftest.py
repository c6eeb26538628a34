import itertools
import random

import pytest

from scimap.netbuild import Network, Node


def make_net(edges, nodes=(), kind="keyword", name="test"):
    """Network from ``(u, v)`` or ``(u, v, w)`` tuples; labels equal ids."""
    ids = sorted({e[0] for e in edges} | {e[1] for e in edges} | set(nodes))
    es = [(e[0], e[1], float(e[2]) if len(e) > 2 else 1.0) for e in edges]
    return Network(kind, [Node(i, i) for i in ids], es, name)


def complete(n, prefix="k"):
    ids = [f"{prefix}{i}" for i in range(n)]
    return make_net(list(itertools.combinations(ids, 2)))


def star(n):
    return make_net([("c", f"l{i}") for i in range(n - 1)])


def path(n):
    ids = [f"p{i}" for i in range(n)]
    return make_net(list(zip(ids, ids[1:])))


def cycle(n):
    ids = [f"c{i}" for i in range(n)]
    return make_net(list(zip(ids, ids[1:] + ids[:1])))


def barbell(k=5):
    a = [f"a{i}" for i in range(k)]
    b = [f"b{i}" for i in range(k)]
    edges = list(itertools.combinations(a, 2)) + list(itertools.combinations(b, 2)) + [("a0", "b0")]
    return make_net(edges)


def random_connected(n, p, rng: random.Random, weighted=False):
    """Random connected graph: random spanning tree plus extra edges with prob ``p``."""
    ids = [f"n{i}" for i in range(n)]
    edges = {}
    order = ids[:]
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges[tuple(sorted((u, v)))] = 1.0
    for u, v in itertools.combinations(ids, 2):
        if rng.random() < p:
            edges.setdefault(tuple(sorted((u, v))), 1.0)
    if weighted:
        edges = {e: float(rng.randint(1, 4)) for e in edges}
    return make_net([(u, v, w) for (u, v), w in edges.items()], nodes=ids)


@pytest.fixture
def rng():
    return random.Random(20201)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
