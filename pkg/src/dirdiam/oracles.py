"""Exact reference algorithms and simple baselines.

These are the trusted side of every dual-route check in the test suite: the
approximation algorithms elsewhere in the package are always compared against
values computed here.
"""
from __future__ import annotations

from fractions import Fraction
from math import inf

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from . import graph as _graph

APSP_DEFAULT_LIMIT = 2000


def _to_csr(g):
    """CSR adjacency with parallel edges collapsed to their minimum weight."""
    best = {}
    for u, v, w in g.edges:
        key = (u, v)
        if w < best.get(key, inf):
            best[key] = w
    if best:
        rows, cols = zip(*best.keys())
        data = np.fromiter((best[k] for k in best), dtype=np.float64, count=len(best))
    else:
        rows = cols = ()
        data = np.zeros(0)
    return csr_matrix((data, (rows, cols)), shape=(g.n, g.n))


def apsp(g, max_n=APSP_DEFAULT_LIMIT, sources=None):
    """All-pairs (or multi-source) shortest path distance matrix.

    Returns a float ndarray with inf for unreachable pairs; entries are exact
    since all distances are integers well below 2**53.  Guarded by ``max_n``
    to catch accidental quadratic blowups; pass a larger value deliberately.
    """
    if g.n > max_n:
        raise ValueError(f"apsp on n={g.n} exceeds limit {max_n}; raise max_n to override")
    if g.n == 0:
        return np.zeros((0, 0))
    # zero-weight edges stay as explicit stored zeros, which csgraph
    # treats as real edges
    mat = _to_csr(g)
    if sources is None:
        return _csgraph_dijkstra(mat, directed=True)
    return _csgraph_dijkstra(mat, directed=True, indices=sources)


def apsp_floyd_warshall(g):
    """Hand-rolled Floyd-Warshall, used to cross-check apsp()."""
    d = [[inf] * g.n for _ in range(g.n)]
    for i in range(g.n):
        d[i][i] = 0
    for u, v, w in g.edges:
        if w < d[u][v]:
            d[u][v] = w
    for k in range(g.n):
        dk = d[k]
        for i in range(g.n):
            dik = d[i][k]
            if dik == inf:
                continue
            di = d[i]
            for j in range(g.n):
                via = dik + dk[j]
                if via < di[j]:
                    di[j] = via
    return d


def exact_diameter(g, max_n=APSP_DEFAULT_LIMIT):
    """max_{u,v} d(u, v); inf when not strongly connected; 0 for n <= 1."""
    if g.n <= 1:
        return 0
    d = apsp(g, max_n=max_n)
    val = float(np.max(d))
    return inf if val == inf else int(val)


def exact_roundtrip_diameter(g, max_n=APSP_DEFAULT_LIMIT):
    """max over pairs of d(u, v) + d(v, u); inf when not strongly connected."""
    if g.n <= 1:
        return 0
    d = apsp(g, max_n=max_n)
    with np.errstate(invalid="ignore"):
        rt = d + d.T  # inf + inf is fine; no inf - inf can occur (d >= 0)
    val = float(np.max(rt))
    return inf if val == inf else int(val)


def two_approx(g):
    """One-vertex diameter baseline: max(out-ecc(v0), in-ecc(v0)) for v0 = 0.

    Lies in [D*/2, D*] for strongly connected graphs (inf = inf otherwise).
    """
    if g.n == 0:
        return 0
    return max(_graph.eccentricity(g, 0, "out"), _graph.eccentricity(g, 0, "in"))


def rt_two_approx(g):
    """One-vertex roundtrip baseline: max_v d(v0, v) + d(v, v0) for v0 = 0.

    Lies in [RT*/2, RT*] for strongly connected graphs.
    """
    if g.n == 0:
        return 0
    d_out = _graph.sssp(g, 0, "out")
    d_in = _graph.sssp(g, 0, "in")
    return max(a + b for a, b in zip(d_out, d_in))


def brute_linfty(vs):
    """Exact closest pair under the L-infinity metric.

    Returns (distance, (i, j)) with i < j, distance a Fraction; (None, None)
    for fewer than two vectors.  Ties break to the lexicographically first
    pair.
    """
    if vs.n < 2:
        return None, None
    best = None
    best_pair = None
    vals = vs.values
    for i in range(vs.n):
        for j in range(i + 1, vs.n):
            dist = max(abs(a - b) for a, b in zip(vals[i], vals[j]))
            if best is None or dist < best:
                best = dist
                best_pair = (i, j)
    return Fraction(best, vs.scale), best_pair
