import math
import random
from fractions import Fraction

import numpy as np
import pytest

from dirdiam import graph as G
from dirdiam import linfty as L
from dirdiam import oracles


def random_graph(rng, n, m, weighted=False):
    edges = []
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v, rng.randint(1, 7) if weighted else 1))
    return G.build_graph(n, edges, weighted=weighted)


def test_apsp_matches_floyd_warshall():
    rng = random.Random(0)
    for trial in range(30):
        g = random_graph(rng, rng.randint(2, 15), rng.randint(1, 45),
                         weighted=trial % 2 == 0)
        assert np.array_equal(oracles.apsp(g), oracles.apsp_floyd_warshall(g))


def test_apsp_matches_dijkstra_rows():
    rng = random.Random(1)
    g = random_graph(rng, 12, 40, weighted=True)
    d = oracles.apsp(g)
    for s in range(g.n):
        assert list(d[s]) == G.sssp(g, s)


def test_apsp_honors_zero_weight_edges():
    g = G.build_graph(3, [(0, 1, 0), (1, 2, 4)], weighted=True)
    d = oracles.apsp(g)
    assert d[0, 1] == 0 and d[0, 2] == 4


def test_apsp_sources_subset():
    rng = random.Random(2)
    g = random_graph(rng, 10, 30)
    full = oracles.apsp(g)
    part = oracles.apsp(g, sources=[3, 7])
    assert np.array_equal(part, full[[3, 7]])


def test_apsp_size_guard():
    g = G.build_graph(5, [(0, 1, 1)])
    with pytest.raises(ValueError):
        oracles.apsp(g, max_n=4)


def test_triangle_inequality():
    rng = random.Random(3)
    g = random_graph(rng, 12, 50, weighted=True)
    d = oracles.apsp(g)
    for u in range(g.n):
        for v in range(g.n):
            for w in range(g.n):
                assert d[u, v] <= d[u, w] + d[w, v] + 1e-9


def test_exact_diameters():
    cyc = G.build_graph(6, [(i, (i + 1) % 6, 1) for i in range(6)])
    assert oracles.exact_diameter(cyc) == 5
    assert oracles.exact_roundtrip_diameter(cyc) == 6
    path = G.build_graph(3, [(0, 1, 1), (1, 2, 1)])
    assert oracles.exact_diameter(path) == math.inf


def test_two_approx_bounds():
    rng = random.Random(4)
    checked = 0
    while checked < 25:
        g = random_graph(rng, rng.randint(2, 12), rng.randint(6, 40),
                         weighted=checked % 2 == 0)
        if not G.is_strongly_connected(g):
            continue
        checked += 1
        dstar = oracles.exact_diameter(g)
        est = oracles.two_approx(g)
        assert dstar / 2 <= est <= dstar
        rt = oracles.exact_roundtrip_diameter(g)
        rte = oracles.rt_two_approx(g)
        assert rt / 2 <= rte <= rt


def naive_linfty(vs):
    best = None
    for i in range(vs.n):
        for j in range(i + 1, vs.n):
            d = max(abs(vs.coord(i, x) - vs.coord(j, x)) for x in range(vs.d))
            if best is None or d < best[0]:
                best = (d, (i, j))
    return best


def test_brute_linfty():
    rng = random.Random(5)
    for _ in range(20):
        n, d = rng.randint(2, 8), rng.randint(1, 4)
        rows = [[Fraction(rng.randint(-20, 20), rng.randint(1, 5))
                 for _ in range(d)] for _ in range(n)]
        vs = L.VectorSet.from_fractions(rows)
        dist, pair = oracles.brute_linfty(vs)
        want_dist, _ = naive_linfty(vs)
        assert dist == want_dist
        assert isinstance(dist, Fraction)
        got = max(abs(vs.coord(pair[0], x) - vs.coord(pair[1], x))
                  for x in range(vs.d))
        assert got == dist
