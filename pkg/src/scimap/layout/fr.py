"""Fruchterman-Reingold force-directed layout."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .._accel import numba_enabled
from ..netbuild.network import Network
from ._kernels import EPS, fr_step, fr_step_numpy


@dataclass
class LayoutCoords:
    positions: dict[str, tuple[float, float]]
    iterations_run: int
    seed: int
    width: float = 1000.0
    height: float = 1000.0
    C: float = 1.0
    checkpoints: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    def array(self, net: Network) -> np.ndarray:
        return np.array([self.positions[nd.node_id] for nd in net.nodes], dtype=np.float64).reshape(-1, 2)


def optimal_distance(width: float, height: float, n: int, C: float = 1.0) -> float:
    return C * math.sqrt(width * height / n)


def fruchterman_reingold(
    net: Network,
    width: float = 1000.0,
    height: float = 1000.0,
    iterations: int = 500,
    seed: int = 42,
    C: float = 1.0,
    weighted_attraction: bool = False,
    init: np.ndarray | None = None,
    checkpoint_every: int | None = None,
) -> LayoutCoords:
    """Spring-electrical layout inside the ``[0, width] x [0, height]`` frame.

    Every pair repels with ``k^2 / d`` and every edge attracts with
    ``d^2 / k`` where ``k = C * sqrt(width * height / n)``. Displacements
    are capped by a temperature that cools linearly from
    ``min(width, height) / 10``; positions are clamped to the frame after
    each step. ``init`` overrides the seeded uniform start.

    With ``checkpoint_every`` set, copies of the positions after iteration
    1 and every ``checkpoint_every`` iterations are kept in ``checkpoints``.
    """
    if net.n < 1:
        raise ValueError("layout needs at least one node")
    if width <= 0 or height <= 0 or iterations < 1:
        raise ValueError("width, height and iterations must be positive")
    ids = [nd.node_id for nd in net.nodes]
    if net.n == 1:
        return LayoutCoords({ids[0]: (width / 2.0, height / 2.0)}, 0, seed, width, height, C)

    rng = np.random.default_rng(seed)
    k = optimal_distance(width, height, net.n, C)
    start = rng.uniform(size=(net.n, 2)) * np.array([width, height])
    nudge = rng.uniform(-1.0, 1.0, size=(net.n, 2)) * (k * 1e-3)
    pos = np.array(init, dtype=np.float64, copy=True) if init is not None else start
    if pos.shape != (net.n, 2):
        raise ValueError(f"init must have shape ({net.n}, 2)")
    src, dst, ew = net.edge_arrays
    step = fr_step if numba_enabled() else fr_step_numpy
    t0 = min(width, height) / 10.0
    checkpoints: dict[int, np.ndarray] = {}
    for it in range(iterations):
        temperature = t0 * (1.0 - it / iterations)
        step(pos, src, dst, ew, k, temperature, width, height, nudge, weighted_attraction)
        done = it + 1
        if checkpoint_every and (done == 1 or done % checkpoint_every == 0 or done == iterations):
            checkpoints[done] = pos.copy()
    positions = {i: (float(x), float(y)) for i, (x, y) in zip(ids, pos)}
    return LayoutCoords(positions, iterations, seed, width, height, C, checkpoints)


def energy_terms(net: Network, pos: np.ndarray, width: float, height: float, C: float = 1.0) -> tuple[float, float]:
    """Attractive ``sum d^3 / 3k`` over edges and repulsive ``sum k^2 ln(D / d)`` over pairs.

    ``D`` is the frame diagonal, so pair terms are non-negative; distances
    are floored at 1e-9.
    """
    if net.n < 2:
        return 0.0, 0.0
    k = optimal_distance(width, height, net.n, C)
    diag = math.hypot(width, height)
    src, dst, _ = net.edge_arrays
    de = pos[src] - pos[dst]
    attract = float(np.sum(np.sqrt(np.einsum("ij,ij->i", de, de)) ** 3) / (3.0 * k))
    iu, ju = np.triu_indices(net.n, 1)
    dp = pos[iu] - pos[ju]
    d = np.clip(np.sqrt(np.einsum("ij,ij->i", dp, dp)), EPS, diag)
    repulse = float(k * k * np.sum(np.log(diag / d)))
    return attract, repulse


def layout_energy(net: Network, coords: LayoutCoords) -> float:
    """Diagnostic potential of a layout; lower is usually better converged."""
    a, r = energy_terms(net, coords.array(net), coords.width, coords.height, coords.C)
    return a + r
