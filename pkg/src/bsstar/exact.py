"""Exact minimum feedback vertex set for small graphs.

Iterative deepening on the solution size, starting at the counting lower
bound. Each level is a branch-and-bound: strip vertices of degree <= 1, pick
a shortest cycle, and branch on which of its vertices is deleted first.
Vertices passed over in earlier branches are pinned as kept, so no deletion
set is explored twice.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .decycle import lower_bound_general
from .errors import ParseError, ResourceError
from .graph import BubbleSortStarGraph

DEFAULT_SOLVER_CAP = 24

Adjacency = dict[int, set[int]]


@dataclass
class ExactResult:
    optimum: int | None
    optimal_set: list[int]
    nodes_explored: int
    elapsed: float
    complete: bool = True
    levels: list[int] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.optimum is not None


def _strip_low_degree(adj: Adjacency) -> Adjacency:
    adj = {v: set(ns) for v, ns in adj.items()}
    queue = deque(v for v, ns in adj.items() if len(ns) <= 1)
    while queue:
        v = queue.popleft()
        if v not in adj:
            continue
        for w in adj.pop(v):
            ns = adj[w]
            ns.discard(v)
            if len(ns) == 1:
                queue.append(w)
    return adj


def _delete(adj: Adjacency, v: int) -> Adjacency:
    out = {w: ns - {v} for w, ns in adj.items() if w != v}
    return out


def shortest_cycle(adj: Adjacency) -> list[int] | None:
    """A minimum-length cycle; among equals, the one found from the lowest root."""
    best: list[int] | None = None
    for s in sorted(adj):
        parent = {s: -1}
        depth = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * depth[x] + 1 >= len(best):
                break
            for y in sorted(adj[x]):
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x] and depth[y] >= depth[x]:
                    length = depth[x] + depth[y] + 1
                    if best is None or length < len(best):
                        left, right = [x], [y]
                        while parent[left[-1]] != -1:
                            left.append(parent[left[-1]])
                        while parent[right[-1]] != -1:
                            right.append(parent[right[-1]])
                        # both walks end at s; keep it once
                        best = left[::-1] + right[:-1]
        if best is not None and len(best) == 3:
            break
    return best


class _Search:
    def __init__(self) -> None:
        self.nodes = 0

    def solve(self, adj: Adjacency, budget: int, pinned: frozenset[int]) -> list[int] | None:
        self.nodes += 1
        adj = _strip_low_degree(adj)
        if not adj:
            return []
        if budget == 0:
            return None
        n_v = len(adj)
        n_e = sum(len(ns) for ns in adj.values()) // 2
        max_deg = max(len(ns) for ns in adj.values())
        if lower_bound_general(n_v, n_e, max_deg) > budget:
            return None
        cycle = shortest_cycle(adj)
        if cycle is None:
            return []
        choices = sorted(v for v in cycle if v not in pinned)
        kept = set(pinned)
        for v in choices:
            rest = self.solve(_delete(adj, v), budget - 1, frozenset(kept))
            if rest is not None:
                return [v] + rest
            kept.add(v)
        return None


def _solve(adj: Adjacency, budget: int | None) -> ExactResult:
    start = time.perf_counter()
    search = _Search()
    core = _strip_low_degree(adj)
    if core:
        n_e = sum(len(ns) for ns in core.values()) // 2
        max_deg = max(len(ns) for ns in core.values())
        floor = lower_bound_general(len(core), n_e, max_deg)
    else:
        floor = 0
    ceiling = len(adj) if budget is None else min(budget, len(adj))
    levels = []
    for size in range(floor, ceiling + 1):
        levels.append(size)
        found = search.solve(core, size, frozenset())
        if found is not None:
            return ExactResult(size, sorted(found), search.nodes, time.perf_counter() - start, True, levels)
    return ExactResult(None, [], search.nodes, time.perf_counter() - start, budget is None, levels)


def adjacency_from_edges(num_vertices: int, edges: Iterable[tuple[int, int]]) -> Adjacency:
    adj: Adjacency = {v: set() for v in range(num_vertices)}
    for a, b in edges:
        a, b = int(a), int(b)
        if not (0 <= a < num_vertices and 0 <= b < num_vertices):
            raise ParseError(f"edge ({a},{b}) has an endpoint outside 0..{num_vertices - 1}")
        if a == b:
            raise ParseError(f"self-loop at {a}")
        if b in adj[a]:
            raise ParseError(f"duplicate edge ({a},{b})")
        adj[a].add(b)
        adj[b].add(a)
    return adj


def exact_fvs_generic(
    num_vertices: int, edges: Iterable[tuple[int, int]], budget: int | None = None
) -> ExactResult:
    """Minimum feedback vertex set of a simple undirected graph.

    With ``budget`` the search stops after size ``budget``; an unsolved
    instance then has ``optimum=None``.
    """
    return _solve(adjacency_from_edges(num_vertices, edges), budget)


def exact_fvs(
    g: BubbleSortStarGraph,
    budget: int | None = None,
    *,
    cap: int = DEFAULT_SOLVER_CAP,
    cap_override: bool = False,
) -> ExactResult:
    if g.num_vertices > cap and not cap_override:
        raise ResourceError(
            f"exact search on {g.num_vertices} vertices exceeds the solver cap of {cap}"
        )
    adj = {v: set(g.neighbors(v)) for v in range(g.num_vertices)}
    return _solve(adj, budget)


def read_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Parse ``"u v"`` lines; the vertex count is one past the largest id."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two vertex ids, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer vertex id in {line!r}") from exc
        if a < 0 or b < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        edges.append((a, b))
    num_vertices = 1 + max((max(e) for e in edges), default=-1)
    return num_vertices, edges
