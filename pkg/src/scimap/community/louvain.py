"""Modularity, Louvain community detection and cluster census."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .._accel import pick
from ..netbuild.network import Network
from ._kernels import local_move

MAX_SWEEPS = 1000
MAX_POLISH_ROUNDS = 20


@dataclass
class Partition:
    assignment: dict[str, int]
    modularity: float
    resolution: float = 1.0
    seed: int = 0

    @property
    def cluster_count(self) -> int:
        return len(set(self.assignment.values()))

    def members(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for node_id, c in self.assignment.items():
            out.setdefault(c, []).append(node_id)
        return out


def modularity(net: Network, assignment: Mapping[str, int], resolution: float = 1.0) -> float:
    """``Q = sum_c [ w_c / W - resolution * (s_c / 2W)^2 ]``.

    ``w_c`` is the weight inside community ``c``, ``s_c`` the summed
    strength of its nodes and ``W`` the total edge weight.
    """
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    missing = [nd.node_id for nd in net.nodes if nd.node_id not in assignment]
    if missing:
        raise ValueError(f"assignment does not cover node {missing[0]!r}")
    if net.m == 0:
        raise ValueError("no edges: modularity undefined")
    inside: dict[int, list[float]] = {}
    boundary: dict[int, list[float]] = {}
    for u, v, w in net.edges:
        cu, cv = assignment[u], assignment[v]
        if cu == cv:
            inside.setdefault(cu, []).append(w)
        else:
            boundary.setdefault(cu, []).append(w)
            boundary.setdefault(cv, []).append(w)
    total = math.fsum(w for _, _, w in net.edges)
    q = []
    for c in sorted(set(inside) | set(boundary)):
        w_in = math.fsum(inside.get(c, ()))
        strength = 2.0 * w_in + math.fsum(boundary.get(c, ()))
        q.append(w_in / total - resolution * (strength / (2.0 * total)) ** 2)
    return math.fsum(q)


@dataclass
class _Level:
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    strength: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    w: np.ndarray
    self_w: np.ndarray

    @property
    def n(self) -> int:
        return self.strength.shape[0]


def _level(n, src, dst, w, self_w) -> _Level:
    rows = np.concatenate([src, dst])
    cols = np.concatenate([dst, src])
    ws = np.concatenate([w, w])
    order = np.lexsort((cols, rows))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, rows + 1, 1)
    strength = 2.0 * self_w
    np.add.at(strength, rows, ws)
    return _Level(np.cumsum(indptr), cols[order], ws[order], strength, src, dst, w, self_w)


def _dense(labels: np.ndarray) -> np.ndarray:
    """Renumber so communities appear as 0, 1, 2, ... in node order."""
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(first.shape[0], dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(first.shape[0])
    return rank[inverse]


def _aggregate(level: _Level, comm: np.ndarray) -> _Level:
    nc = int(comm.max()) + 1
    cu, cv = comm[level.src], comm[level.dst]
    self_w = np.zeros(nc)
    np.add.at(self_w, comm, level.self_w)
    intra = cu == cv
    np.add.at(self_w, cu[intra], level.w[intra])
    a = np.minimum(cu[~intra], cv[~intra])
    b = np.maximum(cu[~intra], cv[~intra])
    keys, inverse = np.unique(a * nc + b, return_inverse=True)
    w = np.zeros(keys.shape[0])
    np.add.at(w, inverse, level.w[~intra])
    return _level(nc, keys // nc, keys % nc, w, self_w)


def _sweep_until_stable(level: _Level, comm: np.ndarray, gamma: float, total: float, rng) -> int:
    tot = np.zeros(level.n)
    np.add.at(tot, comm, level.strength)
    move = pick(local_move)
    moved_total = 0
    for _ in range(MAX_SWEEPS):
        order = rng.permutation(level.n)
        moved = move(level.indptr, level.indices, level.weights, level.strength, comm, tot, order, gamma, total)
        moved_total += moved
        if moved == 0:
            break
    return moved_total


def louvain(net: Network, resolution: float = 1.0, seed: int = 42, max_passes: int = 100) -> Partition:
    """Greedy modularity optimisation by local moves and aggregation.

    Within each sweep nodes are visited in a permutation drawn from
    ``seed``. When aggregation stops improving, single-node moves on the
    original graph polish the result, so no node can raise Q by moving to a
    neighbouring community.
    """
    if net.m == 0:
        raise ValueError("no edges: modularity undefined")
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    if max_passes < 1:
        raise ValueError("max_passes must be >= 1")
    rng = np.random.default_rng(seed)
    src, dst, w = net.edge_arrays
    base = _level(net.n, src, dst, w, np.zeros(net.n))
    total = float(base.strength.sum() / 2.0)
    membership = np.arange(net.n)
    for _ in range(MAX_POLISH_ROUNDS):
        level = base if membership.max() == net.n - 1 else _aggregate(base, membership)
        for _ in range(max_passes):
            comm = np.arange(level.n)
            if _sweep_until_stable(level, comm, resolution, total, rng) == 0:
                break
            comm = _dense(comm)
            membership = comm[membership]
            level = _aggregate(level, comm)
        comm = membership.copy()
        moved = _sweep_until_stable(base, comm, resolution, total, rng)
        membership = _dense(comm)
        if moved == 0:
            break
    assignment = {nd.node_id: int(c) for nd, c in zip(net.nodes, membership)}
    return Partition(assignment, modularity(net, assignment, resolution), resolution, seed)


def louvain_restarts(
    net: Network, resolution: float = 1.0, seed: int = 42, restarts: int = 1, max_passes: int = 100
) -> Partition:
    """Best of ``restarts`` runs on seeds ``seed, seed+1, ...`` (highest Q, then lowest seed)."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    runs = [louvain(net, resolution, seed + r, max_passes) for r in range(restarts)]
    return min(runs, key=lambda p: (-p.modularity, p.seed))


def cluster_census(net: Network, partition: Partition, max_members: int = 10) -> list[tuple[int, int, float, list[str]]]:
    """Rows ``(community_id, size, share_percent, top_members)``, largest first.

    Members are ranked by weighted degree inside their own community, ties
    by label.
    """
    internal = dict.fromkeys(partition.assignment, 0.0)
    for u, v, w in net.edges:
        if partition.assignment[u] == partition.assignment[v]:
            internal[u] += w
            internal[v] += w
    labels = dict(zip((nd.node_id for nd in net.nodes), net.labels))
    rows = []
    for c, members in partition.members().items():
        ranked = sorted(members, key=lambda i: (-internal[i], labels[i], i))
        rows.append((c, len(members), 100.0 * len(members) / net.n, [labels[i] for i in ranked[:max_members]]))
    rows.sort(key=lambda r: (-r[1], r[0]))
    return rows
