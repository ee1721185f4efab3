"""L-infinity closest-pair machinery: domain flattening/folding and the two
reductions to roundtrip diameter.

Pipeline for deciding "is there a pair at distance <= 1" versus "all pairs
are >= alpha apart":

    flatten_coordinates -> bound_domain -> build_*_rt_graph -> rt solver

Flattening squashes each coordinate into [0, alpha*n] while preserving every
pairwise min(|gap|, alpha).  Folding (fold_once, iterated by bound_domain)
then repeatedly halves the domain, trading each coordinate for a short block
of clipped coordinates in [+-(0.5+eps)*alpha].  The graph constructions
finally turn a bounded instance into a directed graph whose roundtrip
diameter is large exactly when a close pair exists.

All arithmetic is exact (Fractions over an integer scale).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm

from . import artifact as _artifact
from . import graph as _graph


@dataclass(frozen=True)
class VectorSet:
    """n vectors of dimension d with rational coordinates value/scale."""

    n: int
    d: int
    scale: int
    values: tuple  # n tuples of d ints

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError("scale must be >= 1")
        if len(self.values) != self.n:
            raise ValueError("values row count != n")
        for row in self.values:
            if len(row) != self.d:
                raise ValueError("row length != d")

    def coord(self, i, x):
        return Fraction(self.values[i][x], self.scale)

    def row(self, i):
        return [Fraction(v, self.scale) for v in self.values[i]]

    @classmethod
    def from_fractions(cls, rows):
        rows = [[Fraction(v) for v in row] for row in rows]
        n = len(rows)
        d = len(rows[0]) if rows else 0
        scale = 1
        for row in rows:
            for v in row:
                scale = lcm(scale, v.denominator)
        values = tuple(tuple(int(v * scale) for v in row) for row in rows)
        return cls(n=n, d=d, scale=scale, values=values)


def dumps_vectors(vs):
    lines = [f"{vs.n} {vs.d} {vs.scale}"]
    lines.extend(" ".join(str(v) for v in row) for row in vs.values)
    return "\n".join(lines) + "\n"


def loads_vectors(text):
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError("empty vector file")
    try:
        n, d, scale = (int(v) for v in rows[0])
        values = tuple(tuple(int(v) for v in r) for r in rows[1:])
    except ValueError as exc:
        raise ValueError(f"bad vector file: {exc}") from exc
    if len(values) != n:
        raise ValueError(f"header promises {n} rows, found {len(values)}")
    return VectorSet(n=n, d=d, scale=scale, values=values)


def read_vectors(path):
    with open(path) as fh:
        return loads_vectors(fh.read())


def write_vectors(vs, path):
    with open(path, "w") as fh:
        fh.write(dumps_vectors(vs))


# ---------------------------------------------------------------------------
# domain reduction
# ---------------------------------------------------------------------------

def flatten_coordinates(vs, alpha):
    """Per coordinate, replace values by prefix sums of alpha-clipped gaps.

    Output coordinates lie in [0, alpha*n]; for every pair both the
    "<= 1 apart" and ">= alpha apart" relations are preserved per
    coordinate (in fact min(gap, alpha) is preserved exactly, and smaller
    gaps never grow).
    """
    alpha = Fraction(alpha)
    out = [[None] * vs.d for _ in range(vs.n)]
    for x in range(vs.d):
        order = sorted(range(vs.n), key=lambda i: vs.values[i][x])
        acc = Fraction(0)
        prev = None
        for i in order:
            val = vs.coord(i, x)
            if prev is not None:
                acc += min(alpha, val - prev)
            out[i][x] = acc
            prev = val
    return VectorSet.from_fractions(out)


def fold_once(a, M, alpha, eps):
    """One folding step: map a in [0, M] to (g, h) with g a vector of
    2*ceil(1/eps)+1 clipped coordinates in [+-(0.5+eps)*alpha] and
    h = |a - M/2| in [0, M/2], such that for any a, b in [0, M]:
    min(|a-b|, alpha) == min(max-norm of (g,h)(a)-(g,h)(b), alpha).
    """
    a, M, alpha, eps = (Fraction(v) for v in (a, M, alpha, eps))
    if not 0 <= a <= M:
        raise ValueError(f"a={a} outside [0, {M}]")
    if not 0 < eps < Fraction(1, 2):
        raise ValueError("eps must lie in (0, 1/2)")
    big = ceil(1 / eps)
    clip = (Fraction(1, 2) + eps) * alpha
    half = M / 2

    def f(z):
        return max(-clip, min(clip, a - z))

    # grid points z = M/2 + (i / 2E) * alpha for i = -E..E
    g = tuple(f(half + Fraction(i, 2 * big) * alpha)
              for i in range(-big, big + 1))
    return g, abs(a - half)


def bound_domain(vs, alpha, eps):
    """Fold every coordinate from [0, alpha*n] down to the bounded range
    [+-(0.5+eps)*alpha], exactly preserving min(pairwise gap, alpha).

    Output dimension is 4*d*ceil(1/eps)*L with L = max(1, ceil(log2 n)),
    zero-padded.
    """
    alpha, eps = Fraction(alpha), Fraction(eps)
    levels = max(1, (vs.n - 1).bit_length()) if vs.n > 1 else 1
    big = ceil(1 / eps)
    block = 4 * big * levels  # padded length per original coordinate
    bound = alpha * vs.n
    rows = []
    for i in range(vs.n):
        row = []
        for x in range(vs.d):
            a = vs.coord(i, x)
            if not 0 <= a <= bound:
                raise ValueError(
                    f"coordinate ({i},{x})={a} outside [0, {bound}]; "
                    "apply flatten_coordinates first")
            m_cur = bound
            seq = []
            for _ in range(levels):
                g, a = fold_once(a, m_cur, alpha, eps)
                seq.extend(g)
                m_cur /= 2
            seq.append(a - alpha / 2)
            assert len(seq) <= block
            seq.extend([Fraction(0)] * (block - len(seq)))
            row.extend(seq)
        rows.append(row)
    return VectorSet.from_fractions(rows)


# ---------------------------------------------------------------------------
# graph constructions
# ---------------------------------------------------------------------------

def build_weighted_rt_graph(vs, alpha, eps=None):
    """Weighted gap graph: n vector vertices plus two coordinate columns
    X1, X2; a close pair forces roundtrip diameter >= 4*alpha - 2 while an
    all-far instance keeps it <= 2*alpha (both times the integer scale).
    """
    alpha = Fraction(alpha)
    eps = Fraction(1, 4) / alpha if eps is None else Fraction(eps)
    clip = (Fraction(1, 2) + eps) * alpha
    for i in range(vs.n):
        for x in range(vs.d):
            if abs(vs.coord(i, x)) > clip:
                raise ValueError(
                    f"coordinate ({i},{x}) exceeds the (0.5+eps)*alpha bound")
    scale = lcm(vs.scale, alpha.denominator)

    def w(value):
        out = value * scale
        assert out.denominator == 1
        return int(out)

    n, d = vs.n, vs.d
    x1 = [n + x for x in range(d)]
    x2 = [n + d + x for x in range(d)]
    edges = []
    for i in range(n):
        for x in range(d):
            v = vs.coord(i, x)
            edges.append((i, x1[x], w(alpha + v)))
            edges.append((x1[x], i, w(alpha - v)))
            edges.append((i, x2[x], w(alpha - v)))
            edges.append((x2[x], i, w(alpha + v)))
    columns = x1 + x2
    for a in columns:
        for b in columns:
            if a != b:
                edges.append((a, b, w(alpha)))
    g = _graph.build_graph(n + 2 * d, edges, weighted=True)
    return _artifact.ReductionArtifact(
        graph=g,
        kind="linfty-weighted",
        yes_threshold=w(4 * alpha - 2),
        no_threshold=w(2 * alpha),
        interesting_pairs=tuple((i, j) for i in range(n)
                                for j in range(i + 1, n)),
        metadata={"alpha": str(alpha), "eps": str(eps), "scale": scale,
                  "n": n, "d": d},
    )


def build_unweighted_rt_graph(vs, alpha, M):
    """Unweighted gap graph: each vector vertex becomes a small subgraph of
    forward/backward paths whose attachment depths encode (integerized)
    coordinates.  Close pair => roundtrip diameter >= 4*beta - 2*M; all-far
    => <= 2*beta + 8, where beta = floor(M*alpha - 1).
    """
    alpha = Fraction(alpha)
    if not (isinstance(M, int) and M >= 1):
        raise ValueError("M must be a positive integer")
    m_alpha = M * alpha
    beta = floor(m_alpha - 1)
    if m_alpha - floor(m_alpha) >= Fraction(1, 2):
        raise ValueError("need fractional part of M*alpha below 1/2")
    if not 4 * beta - 2 * M > 2 * beta + 8:
        raise ValueError(f"M={M} too small for a gap: beta={beta}")
    eps = Fraction(1, 4 * beta + 6)
    u = []
    for i in range(vs.n):
        row = [floor(M * vs.coord(i, x)) for x in range(vs.d)]
        for x, val in enumerate(row):
            if abs(val) > Fraction(beta, 2) + 2:
                raise ValueError(
                    f"integerized coordinate ({i},{x})={val} exceeds beta/2+2")
        u.append(row)

    n, d = vs.n, vs.d
    nid = 0

    def alloc(count):
        nonlocal nid
        ids = list(range(nid, nid + count))
        nid += count
        return ids

    roots, fwd, bwd, pp = [], [], [], []
    for i in range(n):
        star = max(range(d), key=lambda x: (abs(u[i][x]), -x))  # ties: low x
        depth = beta + abs(u[i][star]) - 1
        roots.append(alloc(1)[0])
        fwd.append(alloc(depth))   # i^f_1 .. i^f_depth
        bwd.append(alloc(depth))
        pp.append(alloc(beta + 1))
    x1 = alloc(d)
    x2 = alloc(d)

    edges = []
    for i in range(n):
        f_path = [roots[i]] + fwd[i]     # index j -> i^f_j
        b_path = [roots[i]] + bwd[i]
        for j in range(len(f_path) - 1):
            edges.append((f_path[j], f_path[j + 1]))
            edges.append((b_path[j + 1], b_path[j]))
        for j in range(beta):
            edges.append((pp[i][j], pp[i][j + 1]))
        for j in range(1, len(b_path)):
            edges.append((b_path[j], pp[i][0]))
            edges.append((pp[i][beta], f_path[j]))
        top = len(f_path) - 1
        for x in range(d):
            for j in range(max(0, beta + u[i][x] - 1), top + 1):
                edges.append((f_path[j], x1[x]))
                edges.append((x2[x], b_path[j]))
            for j in range(max(0, beta - u[i][x] - 1), top + 1):
                edges.append((x1[x], b_path[j]))
                edges.append((f_path[j], x2[x]))
    g = _graph.build_graph(nid, edges, weighted=False)
    return _artifact.ReductionArtifact(
        graph=g,
        kind="linfty-unweighted",
        yes_threshold=4 * beta - 2 * M,
        no_threshold=2 * beta + 8,
        interesting_pairs=tuple((roots[i], roots[j]) for i in range(n)
                                for j in range(i + 1, n)),
        metadata={"alpha": str(alpha), "M": M, "beta": beta,
                  "eps": str(eps), "n": n, "d": d},
    )


def solve_linfty_via_rt(vs, alpha, rt_solver, unweighted=False, M=None):
    """Classify a promise instance (closest pair <= 1 vs all pairs >= alpha)
    through the full reduction pipeline and an external roundtrip-diameter
    solver.  Non-promise instances get an unspecified answer.
    """
    if vs.n < 2:
        return "NO"
    alpha = Fraction(alpha)
    flat = flatten_coordinates(vs, alpha)
    if unweighted:
        if M is None:
            raise ValueError("unweighted route needs M")
        beta = floor(M * alpha - 1)
        eps = Fraction(1, 4 * beta + 6)
        bounded = bound_domain(flat, alpha, eps)
        art = build_unweighted_rt_graph(bounded, alpha, M)
    else:
        eps = Fraction(1, 4) / alpha
        bounded = bound_domain(flat, alpha, eps)
        art = build_weighted_rt_graph(bounded, alpha, eps)
    rt = rt_solver(art.graph)
    return "YES" if rt > art.no_threshold else "NO"
