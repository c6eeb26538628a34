"""Shortest-path kernels on CSR adjacency (numba-compiled when enabled)."""
import numpy as np

from .._accel import kernel


@kernel
def bfs_distance_sums(indptr, indices, mask):
    """Sum of hop distances and count over ordered reachable pairs inside ``mask``."""
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    total = 0
    pairs = 0
    for s in range(n):
        if not mask[s]:
            continue
        dist[:] = -1
        dist[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            if v != s and mask[v]:
                total += dv
                pairs += 1
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue[tail] = w
                    tail += 1
    return total, pairs


@kernel
def _heap_push(keys, items, size, key, item):
    i = size
    keys[i] = key
    items[i] = item
    while i > 0:
        parent = (i - 1) // 2
        if keys[parent] < keys[i] or (keys[parent] == keys[i] and items[parent] <= items[i]):
            break
        keys[parent], keys[i] = keys[i], keys[parent]
        items[parent], items[i] = items[i], items[parent]
        i = parent
    return size + 1


@kernel
def _heap_pop(keys, items, size):
    key = keys[0]
    item = items[0]
    size -= 1
    keys[0] = keys[size]
    items[0] = items[size]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        c = left
        right = left + 1
        if right < size and (keys[right] < keys[left] or (keys[right] == keys[left] and items[right] < items[left])):
            c = right
        if keys[i] < keys[c] or (keys[i] == keys[c] and items[i] <= items[c]):
            break
        keys[c], keys[i] = keys[i], keys[c]
        items[c], items[i] = items[i], items[c]
        i = c
    return key, item, size


@kernel
def brandes_block(indptr, indices, costs, start, stop, weighted):
    """Dependency sums from sources ``start..stop-1`` (ordered-pair convention).

    Unweighted mode runs BFS; weighted mode runs Dijkstra on ``costs``.
    Weighted path lengths within a relative 1e-10 are treated as equal.
    """
    n = indptr.shape[0] - 1
    bc = np.zeros(n)
    sigma = np.zeros(n)
    delta = np.zeros(n)
    dist = np.empty(n)
    hops = np.empty(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    cap = indices.shape[0] + n + 1
    hkeys = np.empty(cap)
    hitems = np.empty(cap, dtype=np.int64)
    for s in range(start, stop):
        sigma[:] = 0.0
        delta[:] = 0.0
        count = 0
        if not weighted:
            hops[:] = -1
            hops[s] = 0
            sigma[s] = 1.0
            order[0] = s
            head = 0
            count = 1
            while head < count:
                v = order[head]
                head += 1
                for p in range(indptr[v], indptr[v + 1]):
                    w = indices[p]
                    if hops[w] < 0:
                        hops[w] = hops[v] + 1
                        order[count] = w
                        count += 1
                    if hops[w] == hops[v] + 1:
                        sigma[w] += sigma[v]
            for k in range(count - 1, -1, -1):
                w = order[k]
                coeff = (1.0 + delta[w]) / sigma[w]
                for p in range(indptr[w], indptr[w + 1]):
                    v = indices[p]
                    if hops[v] == hops[w] - 1:
                        delta[v] += sigma[v] * coeff
                if w != s:
                    bc[w] += delta[w]
        else:
            dist[:] = np.inf
            done[:] = False
            dist[s] = 0.0
            sigma[s] = 1.0
            size = _heap_push(hkeys, hitems, 0, 0.0, s)
            while size > 0:
                d, v, size = _heap_pop(hkeys, hitems, size)
                if done[v] or d > dist[v]:
                    continue
                done[v] = True
                order[count] = v
                count += 1
                for p in range(indptr[v], indptr[v + 1]):
                    w = indices[p]
                    if done[w]:
                        continue
                    nd = dist[v] + costs[p]
                    tol = 1e-10 * nd
                    if nd < dist[w] - tol:
                        dist[w] = nd
                        sigma[w] = sigma[v]
                        size = _heap_push(hkeys, hitems, size, nd, w)
                    elif abs(nd - dist[w]) <= tol:
                        sigma[w] += sigma[v]
            for k in range(count - 1, -1, -1):
                w = order[k]
                coeff = (1.0 + delta[w]) / sigma[w]
                for p in range(indptr[w], indptr[w + 1]):
                    v = indices[p]
                    if done[v] and dist[v] < dist[w]:
                        through = dist[v] + costs[p]
                        if abs(through - dist[w]) <= 1e-10 * through:
                            delta[v] += sigma[v] * coeff
                if w != s:
                    bc[w] += delta[w]
    return bc
