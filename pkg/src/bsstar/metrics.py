"""Distances, diameter, rotation routing and distance-k independence on BS_n."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import BSStarError, DimensionError, VertexRangeError
from .graph import BubbleSortStarGraph
from .kernels import UNSEEN
from .perm import Permutation, Transposition, apply_transposition, generator_set, rotate


@dataclass(frozen=True)
class DistanceMap:
    source: int
    dist: np.ndarray = field(repr=False)

    def __getitem__(self, v: int) -> int:
        return int(self.dist[v])

    @property
    def eccentricity(self) -> int:
        return int(self.dist.max())


def bfs(g: BubbleSortStarGraph, source: int) -> DistanceMap:
    dist = g.bfs_distances(source)
    if (dist == UNSEEN).any():
        raise BSStarError("BFS left vertices unreached; the graph should be connected")
    return DistanceMap(source, dist)


def distance(g: BubbleSortStarGraph, u: Permutation, v: Permutation) -> int:
    return bfs(g, g.index(u))[g.index(v)]


def eccentricity(g: BubbleSortStarGraph, v: int) -> int:
    return bfs(g, v).eccentricity


def diameter(g: BubbleSortStarGraph, cross_check: int = 0, seed: int | None = None) -> int:
    """Eccentricity of vertex 0, which equals the diameter of a Cayley graph.

    ``cross_check`` extra random sources must report the same eccentricity;
    a disagreement signals an indexing bug and raises.
    """
    diam = eccentricity(g, 0)
    rng = random.Random(seed)
    for _ in range(cross_check):
        v = rng.randrange(g.num_vertices)
        other = eccentricity(g, v)
        if other != diam:
            raise BSStarError(f"eccentricity {other} at vertex {v} differs from {diam} at vertex 0")
    return diam


def rotation_distance_formula(n: int, k: int) -> int:
    """Claimed distance between ``u`` and its ``k``-fold rotation.

    ``n - 1`` for odd ``n``; ``3n/2 - 2 - |k - n/2|`` for even ``n``. The even
    formula matches BFS for n <= 6 but overestimates at n = 8, k in {3, 5}.
    """
    if n < 3:
        raise DimensionError(f"n must be >= 3, got {n}")
    if not 1 <= k <= n - 1:
        raise VertexRangeError(f"k must lie in 1..{n - 1}, got {k}")
    if n % 2:
        return n - 1
    return 3 * n // 2 - 2 - abs(k - n // 2)


@dataclass(frozen=True)
class RoutePlan:
    start: Permutation
    target: Permutation
    moves: tuple[Transposition, ...]

    def __len__(self) -> int:
        return len(self.moves)

    def replay(self) -> list[Permutation]:
        """Vertices visited, start and end included."""
        path = [self.start]
        for t in self.moves:
            path.append(apply_transposition(path[-1], t))
        return path

    def is_valid(self) -> bool:
        allowed = set(generator_set(self.start.n))
        return all(t in allowed for t in self.moves) and self.replay()[-1] == self.target

    def move_strings(self) -> list[str]:
        return [str(t) for t in self.moves]


def rotation_route(u: Permutation, k: int) -> RoutePlan:
    """Greedy star-swap route from ``rotate(u, k)`` back to ``u``.

    The front symbol is sent to its home position with ``(1, t)``. When the
    front symbol is already home, it is swapped with the leftmost symbol that
    is not.
    """
    n = u.n
    if not 1 <= k <= n - 1:
        raise VertexRangeError(f"k must lie in 1..{n - 1}, got {k}")
    start = rotate(u, k)
    home = {sym: pos for pos, sym in enumerate(u.symbols)}
    cur = list(start.symbols)
    moves = []
    # every move homes a symbol or breaks a cycle open
    for _ in range(2 * n):
        if tuple(cur) == u.symbols:
            break
        t = home[cur[0]]
        if t == 0:
            t = next(pos for pos in range(1, n) if cur[pos] != u[pos])
        cur[0], cur[t] = cur[t], cur[0]
        moves.append(Transposition(1, t + 1))
    else:
        raise BSStarError(f"rotation route from {start} did not terminate")
    return RoutePlan(start, u, tuple(moves))


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    witness: tuple[int, int, int] | None = None  # (v, w, distance)

    def __bool__(self) -> bool:
        return self.independent


def is_distance_k_independent(
    g: BubbleSortStarGraph, members: Iterable[int], k: int
) -> IndependenceResult:
    """Check all pairs of ``members`` are at distance >= ``k``.

    BFS from each member stops at depth ``k - 1``, so the cost stays local.
    The witness is the violating pair with the smallest first id.
    """
    if k < 1:
        raise VertexRangeError(f"k must be >= 1, got {k}")
    nodes = sorted({int(v) for v in members})
    if len(nodes) < 2:
        return IndependenceResult(True)
    idx = np.array(nodes, dtype=np.int64)
    for pos, v in enumerate(nodes[:-1]):
        dist = g.bfs_distances(v, max_depth=k - 1)
        later = idx[pos + 1:]
        close = later[dist[later] < k]
        if close.size:
            w = int(close[0])
            return IndependenceResult(False, (v, w, int(dist[w])))
    return IndependenceResult(True)


def pairwise_distances(g: BubbleSortStarGraph, members: Sequence[int]) -> np.ndarray:
    """Dense distance matrix among a small vertex set."""
    idx = np.asarray(members, dtype=np.int64)
    out = np.empty((idx.size, idx.size), dtype=np.int64)
    for a, v in enumerate(idx):
        out[a] = bfs(g, int(v)).dist[idx]
    return out
