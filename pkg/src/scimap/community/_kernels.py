import numpy as np

from .._accel import kernel


@kernel
def local_move(indptr, indices, weights, strength, comm, comm_tot, order, gamma, total_weight):
    """One sweep of single-node moves; returns the number of nodes that moved.

    ``comm`` and ``comm_tot`` (community strength sums) are updated in place.
    A node only moves for a strict modularity gain.
    """
    n = indptr.shape[0] - 1
    link = np.zeros(n)
    touched = np.empty(n, dtype=np.int64)
    scale = gamma / (2.0 * total_weight)
    eps = 1e-12 * total_weight
    moved = 0
    for t in range(order.shape[0]):
        i = order[t]
        ci = comm[i]
        ki = strength[i]
        nt = 0
        for p in range(indptr[i], indptr[i + 1]):
            c = comm[indices[p]]
            if link[c] == 0.0:
                touched[nt] = c
                nt += 1
            link[c] += weights[p]
        comm_tot[ci] -= ki
        best = ci
        best_gain = link[ci] - scale * comm_tot[ci] * ki
        for q in range(nt):
            c = touched[q]
            gain = link[c] - scale * comm_tot[c] * ki
            if gain > best_gain + eps:
                best = c
                best_gain = gain
        comm_tot[best] += ki
        if best != ci:
            comm[i] = best
            moved += 1
        for q in range(nt):
            link[touched[q]] = 0.0
    return moved
