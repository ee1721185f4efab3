"""Directed graph core: adjacency storage, Dijkstra-style searches, balls,
eccentricities, degree reduction, and an edge-list file format.

Distances are nonnegative Python ints, with ``math.inf`` marking unreachable
vertices.  Search radii may be exact ``fractions.Fraction`` values; every
radius comparison is done exactly (int vs Fraction compares are exact in
Python, and inf compares correctly against both).

Tie-breaking is deterministic everywhere: among equal tentative distances the
smallest vertex id settles first.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import floor, inf


class GraphFormatError(ValueError):
    """Raised when an edge-list file or graph description is malformed."""


@dataclass(frozen=True)
class DirectedGraph:
    """Immutable directed graph with integer edge weights.

    ``weighted`` is a serialization hint: unweighted graphs have all weights
    equal to 1 and are written without a weight column.
    """

    n: int
    edges: tuple  # tuple of (u, v, w)
    weighted: bool
    out_adj: tuple = field(repr=False, default=())  # out_adj[u] = ((v, w), ...)
    in_adj: tuple = field(repr=False, default=())   # in_adj[v] = ((u, w), ...)

    @property
    def m(self):
        return len(self.edges)

    def adjacency(self, direction):
        if direction == "out":
            return self.out_adj
        if direction == "in":
            return self.in_adj
        raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")

    def total_weight(self):
        return sum(w for _, _, w in self.edges)


def build_graph(n, edges, weighted=None):
    """Construct a DirectedGraph from an edge iterable.

    ``edges`` yields (u, v) or (u, v, w) tuples; missing weights default to 1.
    Parallel edges and self-loops are permitted.  If ``weighted`` is None it
    is inferred (True iff any weight differs from 1).
    """
    if n < 0:
        raise GraphFormatError(f"vertex count must be nonnegative, got {n}")
    norm = []
    for e in edges:
        if len(e) == 2:
            u, v = e
            w = 1
        else:
            u, v, w = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
        if not isinstance(w, int) or w < 0:
            raise GraphFormatError(f"edge weight must be a nonnegative int, got {w!r}")
        norm.append((u, v, w))
    if weighted is None:
        weighted = any(w != 1 for _, _, w in norm)
    elif not weighted and any(w != 1 for _, _, w in norm):
        raise GraphFormatError("unweighted graph has an edge weight != 1")
    out = [[] for _ in range(n)]
    inn = [[] for _ in range(n)]
    for u, v, w in norm:
        out[u].append((v, w))
        inn[v].append((u, w))
    return DirectedGraph(
        n=n,
        edges=tuple(norm),
        weighted=weighted,
        out_adj=tuple(tuple(a) for a in out),
        in_adj=tuple(tuple(a) for a in inn),
    )


# ---------------------------------------------------------------------------
# degree reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexMap:
    """Mapping between original vertices and their cycle copies after
    degree reduction."""

    copies: tuple    # copies[orig] = tuple of new vertex ids
    origin: tuple    # origin[new] = original vertex id

    def representative(self, orig):
        return self.copies[orig][0]


def degree_reduce(g):
    """Replace every vertex by a cycle of zero-weight edges, one copy per
    incident edge, so the result has total degree <= 3 per vertex while all
    pairwise distances between (copies of) original vertices are preserved.

    Returns (reduced_graph, vertex_map).  A vertex of degree d becomes a
    d-cycle (degree-0 vertices keep a single copy); each original edge is
    attached to its own dedicated copy at both endpoints.
    """
    deg = [len(g.out_adj[v]) + len(g.in_adj[v]) for v in range(g.n)]
    copies = []
    origin = []
    start = []
    for v in range(g.n):
        c = max(deg[v], 1)
        start.append(len(origin))
        copies.append(tuple(range(len(origin), len(origin) + c)))
        origin.extend([v] * c)
    new_edges = []
    for v in range(g.n):
        c = len(copies[v])
        if c >= 2:
            for i in range(c):
                new_edges.append((start[v] + i, start[v] + (i + 1) % c, 0))
    cursor = [0] * g.n  # next free slot per original vertex
    for u, v, w in g.edges:
        su = start[u] + cursor[u]
        cursor[u] += 1
        tv = start[v] + cursor[v]
        cursor[v] += 1
        new_edges.append((su, tv, w))
    rg = build_graph(len(origin), new_edges,
                     weighted=g.weighted or any(c >= 2 for c in map(len, copies)))
    return rg, VertexMap(copies=tuple(copies), origin=tuple(origin))


# ---------------------------------------------------------------------------
# searches
# ---------------------------------------------------------------------------

def sssp(g, source, direction="out"):
    """Single-source shortest path distances as a list of length n.

    direction 'out' gives d(source, v); 'in' gives d(v, source).
    """
    adj = g.adjacency(direction)
    dist = [inf] * g.n
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


@dataclass(frozen=True)
class PartialSearchResult:
    """Outcome of a budget-limited Dijkstra.

    ``settled`` maps vertex -> exact distance for the vertices that were
    popped (at most ``budget`` of them, in nondecreasing distance order).
    ``frontier`` maps the remaining discovered vertices to their smallest
    tentative distance (an upper bound on the true distance).
    ``exhausted`` is True when the search ran out of reachable vertices
    before hitting the budget, i.e. ``settled`` is the whole reachable set.
    """

    settled: dict
    frontier: dict
    exhausted: bool


def partial_search(g, source, budget, direction="out"):
    """Dijkstra halted after ``budget`` vertices settle."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    adj = g.adjacency(direction)
    settled = {}
    tentative = {source: 0}
    heap = [(0, source)]
    while heap and len(settled) < budget:
        d, u = heapq.heappop(heap)
        if u in settled:
            continue
        settled[u] = d
        for v, w in adj[u]:
            nd = d + w
            if v not in settled and nd < tentative.get(v, inf):
                tentative[v] = nd
                heapq.heappush(heap, (nd, v))
    frontier = {v: d for v, d in tentative.items() if v not in settled}
    return PartialSearchResult(settled=settled, frontier=frontier,
                               exhausted=not frontier and not heap)


def ball(g, v, radius, direction="out"):
    """Exact ball {u : d <= radius} as a dict u -> distance.

    Runs Dijkstra but abandons the queue once the next distance exceeds
    ``radius`` (pops are nondecreasing, so the ball is then complete).
    """
    # distances are integers, so a fractional radius rounds down for free
    # (and int comparisons are far cheaper than Fraction ones)
    radius = floor(radius)
    adj = g.adjacency(direction)
    found = {}
    tentative = {v: 0}
    heap = [(0, v)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in found:
            continue
        if d > radius:
            break
        found[u] = d
        for x, w in adj[u]:
            nd = d + w
            if x not in found and nd < tentative.get(x, inf):
                tentative[x] = nd
                heapq.heappush(heap, (nd, x))
    return found


def bounded_ball(g, v, radius, cap, direction="out"):
    """Ball of given radius if it has at most ``cap`` vertices, else None.

    Also returns the underlying PartialSearchResult (budget cap+1) so callers
    can reuse its recorded distances.
    """
    radius = floor(radius)  # integer distances; see ball()
    res = partial_search(g, v, cap + 1, direction)
    b = {u: d for u, d in res.settled.items() if d <= radius}
    if len(b) > cap:
        return None, res
    return b, res


def plus_closure(g, core, res, direction="out"):
    """B+ = ball plus its one-step neighbors, with recorded distance
    estimates d-hat.

    Core members carry their exact distance; added neighbors get the best
    available upper bound: the search's settled/frontier value if recorded,
    else min over core members of core-distance + edge weight.  Estimates
    never fall below the true distance.
    """
    adj = g.adjacency(direction)
    dhat = dict(core)
    for u, d in core.items():
        for x, w in adj[u]:
            if x in core:
                continue
            cand = d + w
            prev = dhat.get(x)
            if prev is None:
                prev = res.settled.get(x, res.frontier.get(x, inf))
            dhat[x] = min(prev, cand)
    return dhat


def eccentricity(g, v, direction="out"):
    """max_u d(v, u) for 'out'; max_u d(u, v) for 'in'.  inf if some vertex
    is unreachable."""
    return max(sssp(g, v, direction))


def is_strongly_connected(g):
    if g.n <= 1:
        return True
    for direction in ("out", "in"):
        adj = g.adjacency(direction)
        seen = bytearray(g.n)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    stack.append(v)
        if count < g.n:
            return False
    return True


# ---------------------------------------------------------------------------
# edge-list serialization
#
# Header: "n m W" where W is 'w' (weighted, each edge line "u v w") or
# 'u' (unweighted, each edge line "u v").  '#' starts a comment.
# ---------------------------------------------------------------------------

def dumps_edge_list(g):
    lines = [f"{g.n} {g.m} {'w' if g.weighted else 'u'}"]
    if g.weighted:
        lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    else:
        lines.extend(f"{u} {v}" for u, v, _ in g.edges)
    return "\n".join(lines) + "\n"


def loads_edge_list(text):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphFormatError("empty edge list: missing header")
    _, header = rows[0]
    if len(header) != 3 or header[2] not in ("w", "u"):
        raise GraphFormatError(f"bad header {' '.join(header)!r}: want 'n m w|u'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise GraphFormatError(f"bad header counts: {exc}") from exc
    weighted = header[2] == "w"
    want = 3 if weighted else 2
    edges = []
    for lineno, parts in rows[1:]:
        if len(parts) != want:
            raise GraphFormatError(f"line {lineno}: expected {want} fields, got {len(parts)}")
        try:
            vals = [int(p) for p in parts]
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from exc
        edges.append(tuple(vals) if weighted else (vals[0], vals[1], 1))
    if len(edges) != m:
        raise GraphFormatError(f"header promises {m} edges, found {len(edges)}")
    return build_graph(n, edges, weighted=weighted)


def write_edge_list(g, path):
    with open(path, "w") as fh:
        fh.write(dumps_edge_list(g))


def read_edge_list(path):
    with open(path) as fh:
        return loads_edge_list(fh.read())
