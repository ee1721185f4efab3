import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from dirdiam import graph as G


def random_graph(rng, n, m, weighted=False, max_w=9):
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while v == u:
            v = rng.randrange(n)
        edges.append((u, v, rng.randint(1, max_w) if weighted else 1))
    return G.build_graph(n, edges, weighted=weighted)


def bellman_ford(g, source, direction="out"):
    """Reference SSSP: |V|-1 rounds of relaxation, no heap tricks."""
    adj = g.adjacency(direction)
    dist = [math.inf] * g.n
    dist[source] = 0
    for _ in range(g.n - 1):
        changed = False
        for u in range(g.n):
            if dist[u] == math.inf:
                continue
            for v, w in adj[u]:
                if dist[u] + w < dist[v]:
                    dist[v] = dist[u] + w
                    changed = True
        if not changed:
            break
    return dist


def test_sssp_matches_bellman_ford():
    rng = random.Random(0)
    for trial in range(40):
        weighted = trial % 2 == 0
        g = random_graph(rng, rng.randint(2, 14), rng.randint(1, 40), weighted)
        s = rng.randrange(g.n)
        for direction in ("out", "in"):
            assert G.sssp(g, s, direction) == bellman_ford(g, s, direction)


def test_sssp_in_is_reverse_out():
    rng = random.Random(1)
    g = random_graph(rng, 10, 30, weighted=True)
    rev = G.build_graph(g.n, [(v, u, w) for u, v, w in g.edges], weighted=True)
    for s in range(g.n):
        assert G.sssp(g, s, "in") == G.sssp(rev, s, "out")


def test_partial_search_settles_in_distance_order():
    rng = random.Random(2)
    g = random_graph(rng, 20, 80, weighted=True)
    full = G.sssp(g, 0)
    res = G.partial_search(g, 0, budget=7)
    assert len(res.settled) <= 7
    dists = list(res.settled.values())
    assert dists == sorted(dists)
    # settled distances are exact; frontier values are upper bounds
    for v, d in res.settled.items():
        assert d == full[v]
    for v, d in res.frontier.items():
        assert d >= full[v]


def test_partial_search_exhausted_flag():
    g = G.build_graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    res = G.partial_search(g, 0, budget=10)
    assert res.exhausted
    assert res.settled == {0: 0, 1: 1, 2: 2, 3: 3}
    res = G.partial_search(g, 0, budget=2)
    assert not res.exhausted


def test_ball_and_bounded_ball():
    g = G.build_graph(6, [(i, i + 1, 1) for i in range(5)])
    assert G.ball(g, 0, 2) == {0: 0, 1: 1, 2: 2}
    assert G.ball(g, 3, 2, "in") == {3: 0, 2: 1, 1: 2}
    b, res = G.bounded_ball(g, 0, 2, cap=3)
    assert b == {0: 0, 1: 1, 2: 2}
    b, res = G.bounded_ball(g, 0, 4, cap=3)
    assert b is None
    assert len(res.settled) == 4  # budget cap+1


def test_plus_closure_upper_bounds():
    rng = random.Random(3)
    for _ in range(20):
        g = random_graph(rng, 12, 36, weighted=True, max_w=5)
        full = G.sssp(g, 0)
        b, res = G.bounded_ball(g, 0, 6, cap=8)
        if b is None:
            continue
        plus = G.plus_closure(g, b, res)
        for v in b:
            assert plus[v] == full[v]
        for v, dhat in plus.items():
            assert dhat >= full[v]
            if v not in b:  # one-step neighbor of some ball member
                assert any(v == x for u in b for x, _ in g.out_adj[u])


def test_degree_reduction_preserves_distances():
    rng = random.Random(4)
    for trial in range(25):
        g = random_graph(rng, rng.randint(2, 10), rng.randint(1, 30),
                         weighted=trial % 2 == 0)
        rg, vm = degree_reduce_checked(g)
        for u in range(g.n):
            orig = G.sssp(g, u)
            red = G.sssp(rg, vm.representative(u))
            for v in range(g.n):
                assert red[vm.representative(v)] == orig[v]


def degree_reduce_checked(g):
    rg, vm = G.degree_reduce(g)
    degs = [len(rg.out_adj[v]) + len(rg.in_adj[v]) for v in range(rg.n)]
    assert max(degs, default=0) <= 3
    return rg, vm


def test_degree_reduction_edge_count():
    # every original edge survives and each vertex contributes a deg-cycle
    rng = random.Random(5)
    g = random_graph(rng, 8, 24)
    rg, _ = G.degree_reduce(g)
    total_deg = sum(len(g.out_adj[v]) + len(g.in_adj[v]) for v in range(g.n))
    assert rg.n == total_deg
    assert rg.m == g.m + total_deg


def test_strong_connectivity():
    cyc = G.build_graph(5, [(i, (i + 1) % 5, 1) for i in range(5)])
    assert G.is_strongly_connected(cyc)
    path = G.build_graph(3, [(0, 1, 1), (1, 2, 1)])
    assert not G.is_strongly_connected(path)
    assert G.is_strongly_connected(G.build_graph(1, []))


def test_eccentricity_infinite_when_unreachable():
    g = G.build_graph(3, [(0, 1, 1)])
    assert G.eccentricity(g, 0) == math.inf


edge_lists = st.integers(2, 12).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1),
                           st.integers(1, 50)), max_size=30),
        st.booleans()))


@given(edge_lists)
@settings(max_examples=60, deadline=None)
def test_edge_list_roundtrip(spec):
    n, raw, weighted = spec
    edges = [(u, v, w if weighted else 1) for u, v, w in raw if u != v]
    g = G.build_graph(n, edges, weighted=weighted)
    back = G.loads_edge_list(G.dumps_edge_list(g))
    assert back.n == g.n
    assert sorted(back.edges) == sorted(g.edges)
    assert back.weighted == g.weighted


def test_edge_list_comments_and_errors(tmp_path):
    text = "# a comment\n3 2 u\n0 1\n1 2  # trailing\n"
    g = G.loads_edge_list(text)
    assert g.n == 3 and g.m == 2
    p = tmp_path / "g.el"
    G.write_edge_list(g, p)
    assert G.read_edge_list(p).edges == g.edges
    with pytest.raises(G.GraphFormatError):
        G.loads_edge_list("3 2 u\n0 1\n")  # count mismatch
    with pytest.raises(G.GraphFormatError):
        G.loads_edge_list("3 1 x\n0 1\n")
    with pytest.raises(G.GraphFormatError):
        G.loads_edge_list("")
