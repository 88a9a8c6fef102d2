import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bsstar.decycle import lower_bound, verify_acyclic
from bsstar.errors import ParseError, ResourceError
from bsstar.exact import exact_fvs, exact_fvs_generic, read_edge_list, shortest_cycle

K4 = list(itertools.combinations(range(4), 2))
K33 = [(a, b) for a in range(3) for b in range(3, 6)]
C6 = [(i, (i + 1) % 6) for i in range(6)]
PETERSEN = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)] + [
    (5 + i, 5 + (i + 2) % 5) for i in range(5)
]
SYNTHETIC = {
    "K4": (4, K4),
    "K33": (6, K33),
    "C6": (6, C6),
    "path": (5, [(0, 1), (1, 2), (2, 3), (3, 4)]),
    "star_forest": (7, [(0, 1), (0, 2), (0, 3), (4, 5)]),
    "empty": (3, []),
    "K5": (5, list(itertools.combinations(range(5), 2))),
    "two_triangles_bridge": (6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]),
    "petersen": (10, PETERSEN),
    "wheel7": (7, [(0, i) for i in range(1, 7)] + [(i, i % 6 + 1) for i in range(1, 7)]),
    "cube": (8, [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1]),
}
EXPECTED = {"K4": 2, "K33": 2, "C6": 1, "path": 0, "star_forest": 0, "empty": 0}


def _is_fvs(num_vertices, edges, removed):
    adj = {v: set() for v in range(num_vertices)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return oracles.is_forest(adj, set(range(num_vertices)) - set(removed))


@pytest.mark.parametrize("name", sorted(SYNTHETIC))
def test_matches_brute_force(name):
    nv, edges = SYNTHETIC[name]
    res = exact_fvs_generic(nv, edges)
    truth = oracles.brute_force_fvs(nv, edges)
    assert res.optimum == truth == EXPECTED.get(name, truth)
    assert len(res.optimal_set) == res.optimum
    assert _is_fvs(nv, edges, res.optimal_set)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
))
def test_random_graphs_match_brute_force(case):
    nv, pairs = case
    edges = sorted({(min(a, b), max(a, b)) for a, b in pairs if a != b})
    res = exact_fvs_generic(nv, edges)
    assert res.optimum == oracles.brute_force_fvs(nv, edges)
    assert _is_fvs(nv, edges, res.optimal_set)


@pytest.mark.parametrize("n,optimum", [(3, 2), (4, 10)])
def test_bubble_sort_star(bs, n, optimum):
    g = bs(n)
    res = exact_fvs(g)
    assert res.optimum == optimum == lower_bound(n)
    assert verify_acyclic(g, res.optimal_set)
    # minimality: putting back any single vertex re-creates a cycle
    for v in res.optimal_set:
        assert not verify_acyclic(g, [w for w in res.optimal_set if w != v])


def test_solver_cap(bs):
    with pytest.raises(ResourceError):
        exact_fvs(bs(5))


def test_budget_exhausted():
    res = exact_fvs_generic(5, list(itertools.combinations(range(5), 2)), budget=2)
    assert res.optimum is None and not res.found and res.optimal_set == []
    assert exact_fvs_generic(5, list(itertools.combinations(range(5), 2)), budget=3).optimum == 3


def test_malformed_edges():
    with pytest.raises(ParseError):
        exact_fvs_generic(3, [(0, 3)])
    with pytest.raises(ParseError):
        exact_fvs_generic(3, [(1, 1)])
    with pytest.raises(ParseError):
        exact_fvs_generic(3, [(0, 1), (1, 0)])


def test_read_edge_list():
    nv, edges = read_edge_list("0 1\n1 2\n\n# comment\n2 0\n")
    assert nv == 3 and edges == [(0, 1), (1, 2), (2, 0)]
    assert exact_fvs_generic(nv, edges).optimum == 1
    for bad in ("0 1 2\n", "a b\n", "-1 2\n"):
        with pytest.raises(ParseError):
            read_edge_list(bad)


def test_shortest_cycle():
    adj = {v: set() for v in range(8)}
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (2, 6), (6, 7), (7, 3)]:
        adj[a].add(b)
        adj[b].add(a)
    cyc = shortest_cycle(adj)
    assert sorted(cyc) == [2, 3, 6, 7]
    assert shortest_cycle({0: {1}, 1: {0}}) is None
