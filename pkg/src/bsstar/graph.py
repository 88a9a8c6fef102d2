"""The bubble-sort star graph BS_n as a Cayley graph on Lehmer ranks."""

from __future__ import annotations

import enum
import math
import os
from typing import Iterator

import numpy as np

from . import kernels
from .errors import DimensionError, ResourceError, VertexRangeError
from .perm import MIN_N, Permutation, Transposition, generator_set, rank, unrank

DEFAULT_MAX_N = 10
# factorials above 20! overflow int64 ranks
HARD_MAX_N = 20
DEFAULT_MEMORY_CAP = 1 << 30
MEMORY_CAP_ENV = "BSSTAR_MEMORY_CAP"


class AdjacencyMode(enum.Enum):
    IMPLICIT = "implicit"
    CACHED = "cached"


def memory_cap() -> int:
    """Byte budget for cached neighbor tables, overridable via ``BSSTAR_MEMORY_CAP``."""
    raw = os.environ.get(MEMORY_CAP_ENV)
    if not raw:
        return DEFAULT_MEMORY_CAP
    try:
        return int(float(raw))
    except ValueError as exc:
        raise ResourceError(f"{MEMORY_CAP_ENV}={raw!r} is not a byte count") from exc


def table_bytes(n: int) -> int:
    return math.factorial(n) * (2 * n - 3) * np.dtype(np.int32).itemsize


class BubbleSortStarGraph:
    """Immutable handle on BS_n.

    Vertex ids are Lehmer ranks ``0..n!-1``. Neighbor lists follow the sorted
    generator order, so ``neighbors(v)[g]`` is ``v`` with generator ``g`` applied.
    """

    def __init__(self, n: int, mode: AdjacencyMode, table: np.ndarray | None = None):
        self.n = n
        self.mode = mode
        self.generators: list[Transposition] = generator_set(n)
        self.gen_i = np.array([t.i - 1 for t in self.generators], dtype=np.int64)
        self.gen_j = np.array([t.j - 1 for t in self.generators], dtype=np.int64)
        self._table = table
        self._odd: np.ndarray | None = None
        if table is not None:
            table.setflags(write=False)

    def __repr__(self) -> str:
        return f"BubbleSortStarGraph(n={self.n}, mode={self.mode.value})"

    @property
    def num_vertices(self) -> int:
        return math.factorial(self.n)

    @property
    def degree(self) -> int:
        return len(self.generators)

    @property
    def num_edges(self) -> int:
        return self.num_vertices * self.degree // 2

    @property
    def table(self) -> np.ndarray | None:
        return self._table

    def _check(self, v: int) -> int:
        if not 0 <= v < self.num_vertices:
            raise VertexRangeError(f"vertex {v} outside 0..{self.num_vertices - 1}")
        return int(v)

    def vertex(self, v: int) -> Permutation:
        return unrank(self._check(v), self.n)

    def index(self, p: Permutation) -> int:
        if p.n != self.n:
            raise DimensionError(f"label {p} has n={p.n}, graph has n={self.n}")
        return rank(p)

    def neighbors(self, v: int) -> list[int]:
        v = self._check(v)
        if self._table is not None:
            return [int(w) for w in self._table[v]]
        perm = np.array([list(unrank(v, self.n).symbols)], dtype=np.int8) - 1
        rows = []
        for a, b in zip(self.gen_i, self.gen_j):
            swapped = perm.copy()
            swapped[0, [a, b]] = swapped[0, [b, a]]
            rows.append(swapped[0])
        return [int(r) for r in kernels.rank_rows(np.array(rows))]

    def odd_mask(self) -> np.ndarray:
        """Boolean mask of odd vertices, from the Lehmer digit sum (= inversion count)."""
        if self._odd is None:
            n = self.n
            ids = np.arange(self.num_vertices, dtype=np.int64)
            total = np.zeros_like(ids)
            for a in range(n - 1):
                total += (ids // math.factorial(n - 1 - a)) % (n - a)
            self._odd = (total % 2).astype(bool)
            self._odd.setflags(write=False)
        return self._odd

    def odd_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.odd_mask())

    def even_vertices(self) -> np.ndarray:
        return np.flatnonzero(~self.odd_mask())

    def bfs_distances(self, source: int, max_depth: int = -1) -> np.ndarray:
        """uint8 hop counts from ``source``; 255 marks vertices beyond ``max_depth``."""
        source = self._check(source)
        if self._table is not None:
            return kernels.bfs_table(self._table, source, max_depth)
        return kernels.bfs_implicit(self.n, self.gen_i, self.gen_j, source, max_depth)

    def induced_is_forest(self, alive: np.ndarray) -> bool:
        alive = np.ascontiguousarray(alive, dtype=np.bool_)
        if alive.shape != (self.num_vertices,):
            raise DimensionError("alive mask must have one entry per vertex")
        if self._table is not None:
            return bool(kernels.is_forest_table(self._table, alive))
        return bool(kernels.is_forest_implicit(self.n, self.gen_i, self.gen_j, alive))

    def edge_iter(self) -> Iterator[tuple[int, int]]:
        """Each undirected edge once, as ``(v, w)`` with ``v < w``."""
        for v in range(self.num_vertices):
            for w in self.neighbors(v):
                if v < w:
                    yield v, w

    def edge_array(self) -> np.ndarray:
        """All edges as an ``(|E|, 2)`` array, ``v < w`` per row, sorted."""
        table = self._table
        if table is None:
            table = kernels.neighbor_table(self.n, self.gen_i, self.gen_j)
        src = np.repeat(np.arange(self.num_vertices, dtype=np.int64), self.degree)
        dst = table.ravel().astype(np.int64)
        keep = src < dst
        return np.stack([src[keep], dst[keep]], axis=1)


def build(
    n: int,
    mode: AdjacencyMode | str = AdjacencyMode.CACHED,
    *,
    cap_override: bool = False,
) -> BubbleSortStarGraph:
    """Build BS_n.

    ``n`` above ``DEFAULT_MAX_N`` needs ``cap_override`` and implicit mode.
    Cached tables larger than :func:`memory_cap` raise :class:`ResourceError`.
    """
    mode = AdjacencyMode(mode)
    if not MIN_N <= n <= HARD_MAX_N:
        raise DimensionError(f"n must lie in {MIN_N}..{HARD_MAX_N}, got {n}")
    if n > DEFAULT_MAX_N:
        if not cap_override:
            raise DimensionError(
                f"n={n} exceeds the default cap {DEFAULT_MAX_N}; pass cap_override to proceed"
            )
        if mode is AdjacencyMode.CACHED:
            raise ResourceError(f"n={n} is only supported with implicit adjacency")
    if mode is AdjacencyMode.IMPLICIT:
        return BubbleSortStarGraph(n, mode)
    need = table_bytes(n)
    if need > memory_cap():
        raise ResourceError(
            f"cached adjacency for n={n} needs {need} bytes (cap {memory_cap()}); "
            "use implicit mode or raise " + MEMORY_CAP_ENV
        )
    g = BubbleSortStarGraph(n, mode)
    table = kernels.neighbor_table(n, g.gen_i, g.gen_j)
    return BubbleSortStarGraph(n, mode, table)


def iter_dot(g: BubbleSortStarGraph, *, allow_large: bool = False) -> Iterator[str]:
    if g.n > 6 and not allow_large:
        raise ResourceError(f"DOT export of n={g.n} is unreadable; pass allow_large to force it")
    odd = g.odd_mask()
    yield f"graph BS{g.n} {{\n"
    yield "  node [style=filled];\n"
    for v in range(g.num_vertices):
        kind = "odd" if odd[v] else "even"
        fill = "gray" if odd[v] else "white"
        yield f'  {v} [label="{g.vertex(v)}", parity="{kind}", fillcolor="{fill}"];\n'
    for v, w in g.edge_iter():
        yield f"  {v} -- {w};\n"
    yield "}\n"


def iter_edge_list(g: BubbleSortStarGraph) -> Iterator[str]:
    for v, w in g.edge_iter():
        yield f"{v} {w}\n"


def export(g: BubbleSortStarGraph, fmt: str = "dot", *, allow_large: bool = False) -> str:
    fmt = fmt.lower()
    if fmt == "dot":
        return "".join(iter_dot(g, allow_large=allow_large))
    if fmt in {"edgelist", "edges"}:
        return "".join(iter_edge_list(g))
    raise ValueError(f"unknown export format {fmt!r}")
