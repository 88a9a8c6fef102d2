"""Compiled kernels. Symbols are 0-based inside every kernel."""

import numba as nb
import numpy as np

UNSEEN = np.uint8(255)

_jit = nb.njit(cache=True, nogil=True)


@_jit
def _factorials(n):
    fact = np.ones(n + 1, dtype=np.int64)
    for a in range(1, n + 1):
        fact[a] = fact[a - 1] * a
    return fact


@_jit
def _unrank_into(idx, n, fact, pool, out):
    for a in range(n):
        pool[a] = a
    size = n
    for a in range(n):
        f = fact[n - 1 - a]
        digit = idx // f
        idx -= digit * f
        out[a] = pool[digit]
        for b in range(digit, size - 1):
            pool[b] = pool[b + 1]
        size -= 1


@_jit
def _rank_of(perm, n, fact):
    r = 0
    for a in range(n):
        smaller = 0
        for b in range(a + 1, n):
            if perm[b] < perm[a]:
                smaller += 1
        r += smaller * fact[n - 1 - a]
    return r


@_jit
def rank_rows(perms):
    m, n = perms.shape
    fact = _factorials(n)
    out = np.empty(m, dtype=np.int64)
    for r in range(m):
        out[r] = _rank_of(perms[r], n, fact)
    return out


@_jit
def unrank_rows(idx, n):
    fact = _factorials(n)
    out = np.empty((idx.shape[0], n), dtype=np.int8)
    pool = np.empty(n, dtype=np.int8)
    for r in range(idx.shape[0]):
        _unrank_into(idx[r], n, fact, pool, out[r])
    return out


@_jit
def _neighbors_into(v, n, gi, gj, fact, pool, perm, out):
    _unrank_into(v, n, fact, pool, perm)
    for g in range(gi.shape[0]):
        a = gi[g]
        b = gj[g]
        tmp = perm[a]
        perm[a] = perm[b]
        perm[b] = tmp
        out[g] = _rank_of(perm, n, fact)
        perm[b] = perm[a]
        perm[a] = tmp


@_jit
def neighbor_table(n, gi, gj):
    fact = _factorials(n)
    total = fact[n]
    table = np.empty((total, gi.shape[0]), dtype=np.int32)
    pool = np.empty(n, dtype=np.int8)
    perm = np.empty(n, dtype=np.int8)
    row = np.empty(gi.shape[0], dtype=np.int64)
    for v in range(total):
        _neighbors_into(v, n, gi, gj, fact, pool, perm, row)
        for g in range(gi.shape[0]):
            table[v, g] = row[g]
    return table


@_jit
def bfs_table(table, source, max_depth):
    total = table.shape[0]
    dist = np.full(total, UNSEEN, dtype=np.uint8)
    queue = np.empty(total, dtype=np.int32)
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v]
        if max_depth >= 0 and dv >= max_depth:
            continue
        for g in range(table.shape[1]):
            w = table[v, g]
            if dist[w] == UNSEEN:
                dist[w] = dv + 1
                queue[tail] = w
                tail += 1
    return dist


@_jit
def bfs_implicit(n, gi, gj, source, max_depth):
    fact = _factorials(n)
    total = fact[n]
    dist = np.full(total, UNSEEN, dtype=np.uint8)
    queue = np.empty(total, dtype=np.int64)
    pool = np.empty(n, dtype=np.int8)
    perm = np.empty(n, dtype=np.int8)
    row = np.empty(gi.shape[0], dtype=np.int64)
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v]
        if max_depth >= 0 and dv >= max_depth:
            continue
        _neighbors_into(v, n, gi, gj, fact, pool, perm, row)
        for g in range(gi.shape[0]):
            w = row[g]
            if dist[w] == UNSEEN:
                dist[w] = dv + 1
                queue[tail] = w
                tail += 1
    return dist


@_jit
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@_jit
def is_forest_table(table, alive):
    total = table.shape[0]
    parent = np.arange(total, dtype=np.int64)
    for v in range(total):
        if not alive[v]:
            continue
        for g in range(table.shape[1]):
            w = table[v, g]
            if w <= v or not alive[w]:
                continue
            rv = _find(parent, v)
            rw = _find(parent, w)
            if rv == rw:
                return False
            parent[rv] = rw
    return True


@_jit
def is_forest_implicit(n, gi, gj, alive):
    fact = _factorials(n)
    total = fact[n]
    parent = np.arange(total, dtype=np.int64)
    pool = np.empty(n, dtype=np.int8)
    perm = np.empty(n, dtype=np.int8)
    row = np.empty(gi.shape[0], dtype=np.int64)
    for v in range(total):
        if not alive[v]:
            continue
        _neighbors_into(v, n, gi, gj, fact, pool, perm, row)
        for g in range(gi.shape[0]):
            w = row[g]
            if w <= v or not alive[w]:
                continue
            rv = _find(parent, v)
            rw = _find(parent, w)
            if rv == rw:
                return False
            parent[rv] = rw
    return True
