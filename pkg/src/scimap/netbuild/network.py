"""Undirected weighted network with typed, labelled nodes."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

NODE_KINDS = ("author", "institution", "document", "keyword")


class NetworkError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    node_id: str
    label: str
    attributes: tuple[tuple[str, object], ...] = ()

    def attr(self, name, default=None):
        return dict(self.attributes).get(name, default)


@dataclass(eq=False)
class Network:
    """Undirected, simple, positively weighted graph.

    Nodes are kept sorted by id and edges as ``(min, max, weight)`` sorted by
    endpoint pair, which is the canonical form every exporter and equality
    check relies on. Index ``i`` in the CSR arrays is position ``i`` in
    ``nodes``.
    """

    node_kind: str
    nodes: list[Node]
    edges: list[tuple[str, str, float]] = field(default_factory=list)
    name: str = "network"

    def __post_init__(self):
        if self.node_kind not in NODE_KINDS:
            raise NetworkError(f"unknown node kind {self.node_kind!r}")
        self.nodes = sorted(self.nodes, key=lambda n: n.node_id)
        ids = [n.node_id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise NetworkError("node ids must be unique")
        known = set(ids)
        canon: dict[tuple[str, str], float] = {}
        for u, v, w in self.edges:
            if u == v:
                raise NetworkError(f"self-loop on {u!r}")
            if u not in known or v not in known:
                raise NetworkError(f"edge ({u!r}, {v!r}) has an unknown endpoint")
            w = float(w)
            if not w > 0 or not np.isfinite(w):
                raise NetworkError(f"edge ({u!r}, {v!r}) has non-positive weight {w}")
            key = (u, v) if u < v else (v, u)
            if key in canon:
                raise NetworkError(f"duplicate edge {key}")
            canon[key] = w
        self.edges = [(u, v, canon[(u, v)]) for u, v in sorted(canon)]

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[str, int]:
        return {node.node_id: i for i, node in enumerate(self.nodes)}

    @cached_property
    def labels(self) -> list[str]:
        return [node.label for node in self.nodes]

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        idx = self.index
        src = np.fromiter((idx[u] for u, _, _ in self.edges), dtype=np.int64, count=self.m)
        dst = np.fromiter((idx[v] for _, v, _ in self.edges), dtype=np.int64, count=self.m)
        w = np.fromiter((w for _, _, w in self.edges), dtype=np.float64, count=self.m)
        return src, dst, w

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Symmetric adjacency as ``(indptr, indices, weights)``, neighbours ascending."""
        src, dst, w = self.edge_arrays
        rows = np.concatenate([src, dst])
        cols = np.concatenate([dst, src])
        ws = np.concatenate([w, w])
        order = np.lexsort((cols, rows))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        return np.cumsum(indptr), cols[order], ws[order]

    def strength(self) -> np.ndarray:
        src, dst, w = self.edge_arrays
        s = np.zeros(self.n)
        np.add.at(s, src, w)
        np.add.at(s, dst, w)
        return s

    def degree(self) -> np.ndarray:
        indptr = self.csr[0]
        return np.diff(indptr)

    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))

    def canonical(self) -> tuple:
        """Hashable canonical form used for round-trip equality."""
        return (
            self.node_kind,
            tuple((nd.node_id, nd.label) for nd in self.nodes),
            tuple(self.edges),
        )

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return self.canonical() == other.canonical()

    def subgraph(self, keep_ids) -> "Network":
        keep = set(keep_ids)
        return Network(
            self.node_kind,
            [nd for nd in self.nodes if nd.node_id in keep],
            [(u, v, w) for u, v, w in self.edges if u in keep and v in keep],
            self.name,
        )
