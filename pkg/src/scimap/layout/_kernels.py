import numpy as np

from .._accel import kernel

EPS = 1e-9


@kernel
def fr_step(pos, src, dst, ew, k, temperature, width, height, nudge, weighted):
    """One Fruchterman-Reingold iteration, in place, sequential fixed-order sums."""
    n = pos.shape[0]
    disp = np.zeros((n, 2))
    k2 = k * k
    for i in range(n):
        xi = pos[i, 0]
        yi = pos[i, 1]
        for j in range(i + 1, n):
            dx = xi - pos[j, 0]
            dy = yi - pos[j, 1]
            d2 = dx * dx + dy * dy
            if d2 < EPS * EPS:
                dx = nudge[i, 0] - nudge[j, 0]
                dy = nudge[i, 1] - nudge[j, 1]
                d2 = dx * dx + dy * dy
            f = k2 / d2
            disp[i, 0] += dx * f
            disp[i, 1] += dy * f
            disp[j, 0] -= dx * f
            disp[j, 1] -= dy * f
    for e in range(src.shape[0]):
        u = src[e]
        v = dst[e]
        dx = pos[u, 0] - pos[v, 0]
        dy = pos[u, 1] - pos[v, 1]
        d = np.sqrt(dx * dx + dy * dy)
        f = d / k
        if weighted:
            f *= ew[e]
        disp[u, 0] -= dx * f
        disp[u, 1] -= dy * f
        disp[v, 0] += dx * f
        disp[v, 1] += dy * f
    for i in range(n):
        length = np.sqrt(disp[i, 0] ** 2 + disp[i, 1] ** 2)
        if length > 0.0:
            scale = min(length, temperature) / length
            x = pos[i, 0] + disp[i, 0] * scale
            y = pos[i, 1] + disp[i, 1] * scale
            pos[i, 0] = min(width, max(0.0, x))
            pos[i, 1] = min(height, max(0.0, y))


def fr_step_numpy(pos, src, dst, ew, k, temperature, width, height, nudge, weighted):
    """Vectorised twin of :func:`fr_step` (same force law, different summation order)."""
    delta = pos[:, None, :] - pos[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", delta, delta)
    np.fill_diagonal(d2, np.inf)
    close = d2 < EPS * EPS
    if close.any():
        fake = nudge[:, None, :] - nudge[None, :, :]
        delta = np.where(close[:, :, None], fake, delta)
        d2 = np.where(close, np.einsum("ijk,ijk->ij", fake, fake), d2)
    disp = np.einsum("ijk,ij->ik", delta, (k * k) / d2)
    de = pos[src] - pos[dst]
    f = np.sqrt(np.einsum("ij,ij->i", de, de)) / k
    if weighted:
        f = f * ew
    pull = de * f[:, None]
    np.subtract.at(disp, src, pull)
    np.add.at(disp, dst, pull)
    length = np.sqrt(np.einsum("ij,ij->i", disp, disp))
    moving = length > 0
    scale = np.where(moving, np.minimum(length, temperature) / np.where(moving, length, 1.0), 0.0)
    pos += disp * scale[:, None]
    np.clip(pos[:, 0], 0.0, width, out=pos[:, 0])
    np.clip(pos[:, 1], 0.0, height, out=pos[:, 1])
