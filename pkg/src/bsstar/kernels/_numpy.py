"""Pure-numpy kernels, vectorized over vertex batches instead of compiled loops."""

import math

import numpy as np

UNSEEN = np.uint8(255)
_BATCH = 1 << 18


def _factorials(n):
    return np.array([math.factorial(a) for a in range(n + 1)], dtype=np.int64)


def rank_rows(perms):
    perms = np.asarray(perms)
    m, n = perms.shape
    fact = _factorials(n)
    out = np.zeros(m, dtype=np.int64)
    for a in range(n - 1):
        smaller = (perms[:, a + 1:] < perms[:, a:a + 1]).sum(axis=1)
        out += smaller * fact[n - 1 - a]
    return out


def unrank_rows(idx, n):
    idx = np.asarray(idx, dtype=np.int64).copy()
    m = idx.shape[0]
    fact = _factorials(n)
    available = np.ones((m, n), dtype=bool)
    out = np.empty((m, n), dtype=np.int8)
    rows = np.arange(m)
    for a in range(n):
        digit, idx = np.divmod(idx, fact[n - 1 - a])
        # the (digit)-th still-available symbol
        slot = np.cumsum(available, axis=1) == (digit + 1)[:, None]
        pick = np.argmax(slot & available, axis=1)
        out[:, a] = pick
        available[rows, pick] = False
    return out


def _neighbors_of(ids, n, gi, gj):
    perms = unrank_rows(ids, n)
    cols = []
    for a, b in zip(gi, gj):
        swapped = perms.copy()
        swapped[:, [a, b]] = swapped[:, [b, a]]
        cols.append(rank_rows(swapped))
    return np.stack(cols, axis=1)


def neighbor_table(n, gi, gj):
    total = math.factorial(n)
    table = np.empty((total, len(gi)), dtype=np.int32)
    for start in range(0, total, _BATCH):
        ids = np.arange(start, min(start + _BATCH, total), dtype=np.int64)
        table[ids] = _neighbors_of(ids, n, gi, gj)
    return table


def _bfs(total, expand, source, max_depth):
    dist = np.full(total, UNSEEN, dtype=np.uint8)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    depth = 0
    while frontier.size and (max_depth < 0 or depth < max_depth):
        nxt = np.unique(expand(frontier).ravel())
        nxt = nxt[dist[nxt] == UNSEEN]
        depth += 1
        dist[nxt] = depth
        frontier = nxt
    return dist


def bfs_table(table, source, max_depth):
    return _bfs(table.shape[0], lambda f: table[f], source, max_depth)


def bfs_implicit(n, gi, gj, source, max_depth):
    total = math.factorial(n)

    def expand(frontier):
        parts = [
            _neighbors_of(frontier[s:s + _BATCH], n, gi, gj)
            for s in range(0, frontier.size, _BATCH)
        ]
        return np.concatenate(parts, axis=0)

    return _bfs(total, expand, source, max_depth)


def _forest_from_edges(alive, src, dst):
    """Acyclic iff |E| = |V| - #components; components by min-label propagation."""
    keep = alive[src] & alive[dst] & (src < dst)
    src, dst = src[keep], dst[keep]
    labels = np.arange(alive.shape[0], dtype=np.int64)
    while True:
        new = labels.copy()
        np.minimum.at(new, src, labels[dst])
        np.minimum.at(new, dst, labels[src])
        new = new[new]
        if np.array_equal(new, labels):
            break
        labels = new
    ids = np.flatnonzero(alive)
    components = int(np.count_nonzero(labels[ids] == ids))
    return src.size == ids.size - components


def is_forest_table(table, alive):
    total, degree = table.shape
    src = np.repeat(np.arange(total, dtype=np.int64), degree)
    return _forest_from_edges(alive, src, table.ravel().astype(np.int64))


def is_forest_implicit(n, gi, gj, alive):
    return is_forest_table(neighbor_table(n, gi, gj), alive)
