import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bsstar.decycle import (
    DecyclingCertificate,
    Method,
    RemovalRule,
    bounds_report,
    construct,
    construct_general,
    construct_small,
    default_base,
    find_cycle,
    lower_bound,
    lower_bound_general,
    two_core,
    upper_bound,
    verify_acyclic,
    verify_certificate,
)
from bsstar.errors import DimensionError, ParityError, ParseError
from bsstar.metrics import is_distance_k_independent
from bsstar.perm import Parity, Permutation, o1_o2_sets, parity

P = Permutation.parse


def test_lower_bound_general_examples():
    assert lower_bound_general(24, 60, 5) == 10
    assert lower_bound_general(6, 9, 3) == 2
    assert lower_bound_general(10, 9, 3) == 0
    assert lower_bound_general(5, 0, 2) == 0
    with pytest.raises(ValueError):
        lower_bound_general(5, 4, 1)


@pytest.mark.parametrize("n,expected", [(3, 2), (4, 10), (5, 51), (6, 316), (7, 2269)])
def test_lower_bound(n, expected):
    assert lower_bound(n) == expected


@pytest.mark.parametrize("n", range(3, 21))
def test_lower_bound_agrees_with_general(n):
    f = math.factorial(n)
    assert lower_bound(n) == lower_bound_general(f, f * (2 * n - 3) // 2, 2 * n - 3)


@pytest.mark.parametrize("n,expected", [(3, 2), (4, 10), (5, 51), (6, 354), (7, 2509), (8, 20136), (9, 181393)])
def test_upper_bound(n, expected):
    assert upper_bound(n) == expected


@pytest.mark.parametrize("n", range(3, 21))
def test_bounds_sandwich(n):
    rep = bounds_report(n)
    assert rep.lower <= rep.upper_constructive <= rep.upper_trivial
    assert all(isinstance(x, int) for x in (rep.lower, rep.upper_constructive, rep.upper_trivial))
    assert (rep.exact is not None) == (n <= 5)


def test_default_base_is_smallest_odd():
    for n in range(3, 8):
        base = default_base(n)
        assert parity(base) is Parity.ODD
        from bsstar.perm import all_permutations

        assert base == next(p for p in all_permutations(n) if parity(p) is Parity.ODD)


def test_construct_small_n4_example():
    cert = construct_small(4, P("1243"))
    assert set(cert.reserved) == {P("1243"), P("4312")}
    assert cert.removed_count == 10
    assert cert.method is Method.SMALL_N4


def test_construct_small_n3_and_n5():
    c3 = construct_small(3)
    assert len(c3.reserved) == 1 and c3.removed_count == 2
    c5 = construct_small(5)
    assert len(c5.reserved) == 9 and c5.removed_count == 51
    o1, o2 = o1_o2_sets(c5.base)
    assert len(o1 | o2) == 10 and set(c5.reserved) < o1 | o2


def test_construct_rejects_even_base():
    with pytest.raises(ParityError):
        construct_small(4, P("1234"))
    with pytest.raises(ParityError):
        construct_general(6, P("123456"))


def test_construct_dispatch():
    assert construct_small(6).method is Method.PAIRED_BLOCKS
    with pytest.raises(DimensionError):
        construct_general(5)
    with pytest.raises(DimensionError):
        construct(6, P("12354"))


def test_construct_general_examples():
    c6 = construct_general(6, P("123465"))
    assert len(c6.reserved) == 6 and c6.removed_count == 354
    c7 = construct_general(7, P("1234576"))
    assert len(c7.reserved) == 11 and c7.removed_count == 2509


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_removed_count_equals_upper_bound(n):
    assert construct(n).removed_count == upper_bound(n)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_constructions_are_forests_by_oracle(bs, oracle_adj, n):
    g = bs(n)
    cert = construct(n)
    keep = [g.vertex(v).symbols for v in np.flatnonzero(~cert.removed_mask(g))]
    assert len(keep) == math.factorial(n) - cert.removed_count
    assert oracles.is_forest(oracle_adj(n), keep)
    assert verify_acyclic(g, cert.removed_mask(g))
    assert lower_bound(n) <= cert.removed_count
    if n <= 5:
        assert cert.removed_count == lower_bound(n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_constructions_for_every_odd_base(bs, n):
    g = bs(n)
    for v in g.odd_vertices()[:: max(1, len(g.odd_vertices()) // 12)]:
        cert = construct_small(n, g.vertex(int(v)))
        assert verify_certificate(g, cert).ok


def test_verify_acyclic_examples(bs):
    g = bs(3)
    assert verify_acyclic(g, range(6))
    assert verify_acyclic(g, g.odd_vertices())
    res = verify_acyclic(g, [])
    assert not res
    cycle = res.cycle
    assert len(cycle) == 4 and len(set(cycle)) == 4
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        assert b in g.neighbors(a)


def test_cycle_witness_random(bs):
    g = bs(5)
    rng = np.random.default_rng(11)
    for _ in range(40):
        alive = rng.random(120) < 0.45
        cycle = find_cycle(g, alive)
        if g.induced_is_forest(alive):
            assert cycle is None
            continue
        assert len(cycle) >= 4 and len(set(cycle)) == len(cycle)
        assert all(alive[v] for v in cycle)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            assert b in g.neighbors(a)


def test_all_odd_removal_is_forest_up_to_7(bs):
    for n in range(3, 8):
        g = bs(n)
        assert verify_acyclic(g, g.odd_mask())


def test_n5_fine_structure(bs):
    g = bs(5)
    base = default_base(5)
    o1, o2 = o1_o2_sets(base)
    ids1 = [g.index(p) for p in o1]
    ids2 = [g.index(p) for p in o2]
    for a in ids1:
        dist = g.bfs_distances(a)
        assert sorted(int(dist[b]) for b in ids2) == [2, 2, 4, 4, 4]
    # all ten reserved: exactly one cycle, of length 20
    alive = ~g.odd_mask()
    alive[ids1 + ids2] = True
    core = two_core(g, alive)
    assert core.sum() == 20
    assert all(sum(core[w] for w in g.neighbors(v)) == 2 for v in np.flatnonzero(core))
    edges = g.edge_array()
    inside = alive[edges[:, 0]] & alive[edges[:, 1]]
    assert inside.sum() - alive.sum() + 1 == 1  # cyclomatic number of a connected graph
    cycle = find_cycle(g, alive)
    assert len(cycle) == 20
    for v in ids1 + ids2:
        alive_drop = alive.copy()
        alive_drop[v] = False
        assert g.induced_is_forest(alive_drop)


@pytest.mark.parametrize("n", [6, 7])
def test_forest_and_independence_with_injected_vertex(bs, n):
    g = bs(n)
    cert = construct(n)
    members = [g.index(p) for p in cert.reserved]
    alive = ~cert.removed_mask(g)
    assert g.induced_is_forest(alive)
    if n == 6:
        assert is_distance_k_independent(g, members, 4)
    rng = random.Random(n)
    odd = g.odd_mask()
    for anchor in rng.sample(members, min(3, len(members))):
        dist = g.bfs_distances(anchor, max_depth=2)
        near = set(g.neighbors(anchor))
        # a second odd vertex sharing two even neighbors closes a 4-cycle
        candidates = [
            int(v) for v in np.flatnonzero(dist == 2)
            if odd[v] and not alive[v] and len(near & set(g.neighbors(int(v)))) >= 2
        ]
        v = rng.choice(candidates)
        bigger = alive.copy()
        bigger[v] = True
        assert not g.induced_is_forest(bigger)
        res = verify_acyclic(g, ~bigger)
        assert not res and v in res.cycle


def test_distance2_odd_pair_with_all_evens_has_cycle(bs):
    g = bs(6)
    odd = g.odd_mask()
    u = int(g.odd_vertices()[0])
    dist = g.bfs_distances(u, max_depth=2)
    for v in np.flatnonzero(dist == 2):
        alive = ~odd
        alive[[u, int(v)]] = True
        common = len(set(g.neighbors(u)) & set(g.neighbors(int(v))))
        assert g.induced_is_forest(alive) == (common == 1)


def test_certificate_round_trip():
    for n in (3, 4, 5, 6, 7, 10):
        cert = construct(n)
        text = cert.to_json()
        again = DecyclingCertificate.from_json(text)
        assert again == cert
        assert again.to_json() == text
        assert list(cert.to_dict()) == ["n", "method", "base", "reserved", "removal_rule", "removed_count"]


def test_certificate_parse_errors():
    with pytest.raises(ParseError):
        DecyclingCertificate.from_json("{not json")
    with pytest.raises(ParseError):
        DecyclingCertificate.from_json('{"n": 4}')
    doc = construct(4).to_dict()
    doc["reserved"] = ["12345"]
    with pytest.raises(ParseError):
        DecyclingCertificate.from_dict(doc)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_verify_certificate_passes(bs, n):
    rep = verify_certificate(bs(n), construct(n))
    assert rep.ok, rep.lines()
    assert rep.optimal == (n <= 5)


def test_verify_even_vertex_swapped_in(bs):
    g = bs(5)
    cert = construct(5)
    swapped = (P("12345"),) + cert.reserved[1:]
    bad = DecyclingCertificate(5, cert.method, cert.base, swapped, cert.removal_rule, cert.removed_count)
    rep = verify_certificate(g, bad)
    failed = {c.name for c in rep.failures}
    assert "reserved_odd" in failed and not rep.ok


def test_verify_duplicate_reserved(bs):
    g = bs(4)
    cert = construct(4)
    dup = cert.reserved + cert.reserved[:1]
    bad = DecyclingCertificate(4, cert.method, cert.base, dup, cert.removal_rule, cert.removed_count - 1)
    rep = verify_certificate(g, bad)
    assert "reserved_distinct" in {c.name for c in rep.failures}


def test_verify_wrong_count_and_cycle(bs):
    g = bs(5)
    cert = construct(5)
    o1, o2 = o1_o2_sets(cert.base)
    full = tuple(sorted(o1 | o2))
    bad = DecyclingCertificate(5, Method.MANUAL, None, full, RemovalRule.ALL_ODD_EXCEPT_RESERVED, 51)
    failed = {c.name for c in verify_certificate(g, bad).failures}
    assert {"removed_count", "acyclic"} <= failed


def test_verify_explicit_list(bs):
    g = bs(4)
    cert = construct(4)
    removed = tuple(g.vertex(int(v)) for v in np.flatnonzero(cert.removed_mask(g)))
    explicit = DecyclingCertificate(4, Method.MANUAL, None, (), RemovalRule.EXPLICIT_LIST, 10, removed)
    rep = verify_certificate(g, explicit)
    assert rep.ok and rep.optimal
    assert DecyclingCertificate.from_json(explicit.to_json()) == explicit


def test_verify_dimension_mismatch(bs):
    with pytest.raises(DimensionError):
        verify_certificate(bs(4), construct(5))


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(1, 7)))
def test_general_construction_any_odd_base_n6(symbols):
    from conftest import cached_graph

    base = Permutation(tuple(symbols))
    if parity(base) is Parity.EVEN:
        with pytest.raises(ParityError):
            construct_general(6, base)
        return
    assert verify_certificate(cached_graph(6), construct_general(6, base)).ok


@pytest.mark.slow
def test_paired_set_n8_extended():
    from bsstar.graph import build

    g = build(8)
    cert = construct(8)
    assert len(cert.reserved) == 24 and cert.removed_count == 20136
    rep = verify_certificate(g, cert)
    assert rep.ok, rep.lines()
