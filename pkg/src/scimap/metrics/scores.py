"""Macro scores (density, average path length) and betweenness centrality."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .._accel import pick
from ..netbuild.builders import connected_components
from ..netbuild.network import Network
from . import _kernels

APL_POLICIES = ("reachable_pairs", "largest_component")
BLOCK = 64


class MetricUndefinedError(ValueError):
    """A score is undefined for the given network."""

    def __init__(self, metric: str, reason: str = ""):
        self.metric = metric
        self.reason = reason
        super().__init__(f"metric undefined: {metric}" + (f" ({reason})" if reason else ""))


@dataclass
class CentralityVector:
    scores: dict[str, float]
    normalized: bool
    weighted: bool


def density(net: Network) -> float:
    """Share of possible node pairs that are linked, ``2m / (n(n-1))``."""
    if net.n < 2:
        raise MetricUndefinedError("density", f"needs at least 2 nodes, got {net.n}")
    return 2.0 * net.m / (net.n * (net.n - 1))


def average_path_length(net: Network, policy: str = "reachable_pairs") -> float:
    """Mean hop distance between distinct node pairs.

    ``reachable_pairs`` averages over every pair joined by some path;
    ``largest_component`` averages over all pairs of the largest component.
    """
    if policy not in APL_POLICIES:
        raise ValueError(f"unknown APL policy {policy!r}")
    if net.m == 0:
        raise MetricUndefinedError("average_path_length", "no connected pair")
    mask = np.ones(net.n, dtype=np.bool_)
    if policy == "largest_component":
        biggest = connected_components(net)[0]
        mask = np.array([nd.node_id in biggest for nd in net.nodes], dtype=np.bool_)
    indptr, indices, _ = net.csr
    total, pairs = pick(_kernels.bfs_distance_sums)(indptr, indices, mask)
    return float(total) / float(pairs)


def betweenness(
    net: Network,
    weighted: bool = False,
    normalized: bool = True,
    workers: int | None = None,
) -> CentralityVector:
    """Brandes betweenness, each unordered pair counted once.

    Weighted mode uses ``1 / weight`` as edge length. Sources are processed
    in fixed blocks whose partial sums are added in block order, so the
    result does not depend on ``workers``.
    """
    n = net.n
    if normalized and n < 3:
        raise MetricUndefinedError("betweenness", "normalisation needs at least 3 nodes")
    indptr, indices, w = net.csr
    if weighted:
        if np.any(w <= 0):
            raise ValueError("weighted betweenness needs positive weights")
        costs = 1.0 / w
    else:
        costs = np.ones_like(w)
    fn = pick(_kernels.brandes_block)
    blocks = [(s, min(s + BLOCK, n)) for s in range(0, n, BLOCK)]
    workers = workers or os.cpu_count() or 1

    def run(block):
        return fn(indptr, indices, costs, block[0], block[1], weighted)

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(workers) as pool:
            partials = list(pool.map(run, blocks))
    else:
        partials = [run(b) for b in blocks]
    total = np.zeros(n)
    for part in partials:
        total += part
    total /= 2.0
    if normalized:
        total /= (n - 1) * (n - 2) / 2.0
    return CentralityVector({nd.node_id: float(s) for nd, s in zip(net.nodes, total)}, normalized, weighted)


def top_k(centrality: CentralityVector, k: int, labels: dict[str, str] | None = None) -> list[tuple[str, str, float]]:
    """Highest scores first; equal scores ordered by label, then node id."""
    if k < 1:
        raise ValueError("k must be >= 1")
    labels = labels or {}
    rows = [(node_id, labels.get(node_id, node_id), score) for node_id, score in centrality.scores.items()]
    rows.sort(key=lambda r: (-r[2], r[1], r[0]))
    return rows[:k]
