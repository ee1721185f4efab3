"""All-Nodes k-Cycle instances and their reductions to roundtrip diameter.

An instance is a k-layered digraph (edges only from layer i to layer
i+1 mod k); the question is whether *every* layer-0 node lies on a k-cycle
through all layers.  Both constructions here build a graph whose roundtrip
diameter is at most roughly 6t when all nodes are covered, but at least 10t
between the two copies of any uncovered node.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import artifact as _artifact
from . import graph as _graph

@dataclass(frozen=True)
class LayeredCycleInstance:
    """k disjoint layers; edges[(i, u, v)] goes from node u of layer i to
    node v of layer (i+1) % k.  Layers are 0-indexed internally."""

    k: int
    sizes: tuple
    edges: tuple

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("need k >= 3 layers")
        if len(self.sizes) != self.k or any(s < 1 for s in self.sizes):
            raise ValueError("need one positive size per layer")
        for i, u, v in self.edges:
            if not 0 <= i < self.k:
                raise ValueError(f"bad layer index {i}")
            if not (0 <= u < self.sizes[i] and 0 <= v < self.sizes[(i + 1) % self.k]):
                raise ValueError(f"edge ({i},{u},{v}) out of range")

    def layer_adj(self, i):
        """Adjacency u -> [v, ...] for edges from layer i to layer i+1."""
        adj = [[] for _ in range(self.sizes[i])]
        for j, u, v in self.edges:
            if j == i:
                adj[u].append(v)
        return adj


def dumps_instance(inst):
    lines = [" ".join(str(v) for v in (inst.k, *inst.sizes))]
    k = inst.k
    lines.extend(f"{i + 1} {u} {(i % k) + 2 if i < k - 1 else 1} {v}"
                 for i, u, v in inst.edges)
    return "\n".join(lines) + "\n"


def loads_instance(text):
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError("empty instance file")
    try:
        head = [int(v) for v in rows[0]]
        k = head[0]
        sizes = tuple(head[1:])
        edges = []
        for r in rows[1:]:
            i, u, j, v = (int(x) for x in r)
            if j != (i % k) + 1:
                raise ValueError(f"edge layers {i}->{j} not adjacent")
            edges.append((i - 1, u, v))
    except (ValueError, IndexError) as exc:
        raise ValueError(f"bad instance file: {exc}") from exc
    return LayeredCycleInstance(k=k, sizes=sizes, edges=tuple(edges))


def read_instance(path):
    with open(path) as fh:
        return loads_instance(fh.read())


def write_instance(inst, path):
    with open(path, "w") as fh:
        fh.write(dumps_instance(inst))


# ---------------------------------------------------------------------------
# identifiers and the brute-force reference
# ---------------------------------------------------------------------------

def make_identifiers(n):
    """Bit identifiers: binary name, then its complement, then a 0 and a 1.

    Any two distinct identifiers disagree in both directions (a coordinate
    that is 1 in one and 0 in the other, and vice versa), and every
    identifier contains both a 1 and a 0 in a shared position with any other.
    Length d = 2*max(1, ceil(log2 n)) + 2.
    """
    bits = max(1, (n - 1).bit_length())
    ids = []
    for a in range(n):
        b = [(a >> (bits - 1 - i)) & 1 for i in range(bits)]
        ids.append(tuple(b + [1 - x for x in b] + [0, 1]))
    return ids


def all_nodes_k_cycle_brute(inst):
    """(covered, uncovered) where covered is True iff every layer-0 node
    lies on a cycle through all k layers; uncovered lists the violators."""
    adjs = [inst.layer_adj(i) for i in range(inst.k)]
    uncovered = []
    for a in range(inst.sizes[0]):
        reach = {a}
        for i in range(inst.k):
            reach = {v for u in reach for v in adjs[i][u]}
            if not reach:
                break
        if a not in reach:
            uncovered.append(a)
    return not uncovered, tuple(uncovered)


# ---------------------------------------------------------------------------
# weighted construction
# ---------------------------------------------------------------------------

def build_weighted_ankc_graph(inst, t):
    """Weighted gap graph with thresholds no = 6t+2k, yes = 10t.

    Layer 0 gets source/sink copies S and T (the interesting pairs), layers
    2..k get forward and backward copies, four omni nodes route everything
    at calibrated weights, and a log-sized bit gadget J pulls same-side
    pairs together without shortening any (a, a') roundtrip.
    """
    k = inst.k
    if not t > 2 * k:
        raise ValueError("need t > 2k")
    n1 = inst.sizes[0]
    ids = make_identifiers(n1)
    d = len(ids[0])

    nid = 0

    def alloc(count):
        nonlocal nid
        out = list(range(nid, nid + count))
        nid += count
        return out

    s_nodes = alloc(n1)
    t_nodes = alloc(n1)
    fwd = {i: alloc(inst.sizes[i]) for i in range(1, k)}  # V_{i+1}^fwd
    bwd = {i: alloc(inst.sizes[i]) for i in range(1, k)}
    o1, o2, o3, o4 = alloc(4)
    gj = alloc(d)

    edges = []
    for i, u, v in inst.edges:
        if i == 0:
            edges.append((s_nodes[u], fwd[1][v], 3 * t + 1))
            edges.append((bwd[1][v], s_nodes[u], 1))
        elif i == k - 1:
            edges.append((fwd[k - 1][u], t_nodes[v], 3 * t + 1))
            edges.append((t_nodes[v], bwd[k - 1][u], 1))
        else:
            edges.append((fwd[i][u], fwd[i + 1][v], 1))
            edges.append((bwd[i + 1][v], bwd[i][u], 1))

    all_fwd = [x for i in range(1, k) for x in fwd[i]]
    all_bwd = [x for i in range(1, k) for x in bwd[i]]
    for a in range(n1):
        edges.append((s_nodes[a], o1, 5 * t + 1))
        edges.append((t_nodes[a], o1, t + 1))
        edges.append((o2, s_nodes[a], t + 1))
        edges.append((o2, t_nodes[a], 5 * t + 1))
        edges.append((t_nodes[a], o3, 2 * t + 1))
        edges.append((s_nodes[a], o3, 4 * t + 1))
        edges.append((o4, t_nodes[a], 4 * t + 1))
        edges.append((o4, s_nodes[a], 2 * t + 1))
    for v in all_fwd:
        edges.append((o1, v, 1))
        edges.append((v, o2, 1))
    for v in all_bwd:
        edges.append((o3, v, 1))
        edges.append((v, o4, 1))
    omni = (o1, o2, o3, o4)
    for x in omni:
        for y in omni:
            if x != y:
                edges.append((x, y, 3 * t))

    for a in range(n1):
        for j in range(d):
            bit = ids[a][j]
            edges.append((s_nodes[a], gj[j], 3 * t + 1 if bit else 5 * t + 1))
            edges.append((gj[j], s_nodes[a], 2 * t + 1 if bit else 1))
            edges.append((gj[j], t_nodes[a], 5 * t + 1 if bit else 3 * t + 1))
            edges.append((t_nodes[a], gj[j], 1 if bit else 2 * t + 1))
    # the covered-case distance bounds need the bit gadget and the omni
    # nodes to form a clique at weight ~3t
    for g in gj:
        for x in omni:
            edges.append((g, x, 3 * t + 1))
            edges.append((x, g, 3 * t + 1))
    for g in gj:
        for h in gj:
            if g != h:
                edges.append((g, h, 3 * t + 1))

    g = _graph.build_graph(nid, edges, weighted=True)
    return _artifact.ReductionArtifact(
        graph=g,
        kind="ankc-weighted",
        yes_threshold=10 * t,
        no_threshold=6 * t + 2 * k,
        interesting_pairs=tuple(zip(s_nodes, t_nodes)),
        metadata={"t": t, "k": k, "d": d, "n1": n1},
    )


# ---------------------------------------------------------------------------
# unweighted construction
# ---------------------------------------------------------------------------

def build_unweighted_ankc_graph(inst, t):
    """Unweighted variant: every layer-0 copy is stretched into chains of
    5t forward and 2t backward copies per side, so unit-length hops
    reproduce the weighted construction's calibrated weights.

    Thresholds: yes = 10t, no = 6t + 2k, identical to the weighted variant
    (the unit-hop chains simulate its weights exactly).  Liberties the
    construction takes relative to the weighted one (extra unconditioned
    bit-gadget and omni attachments that cannot shorten the uncovered
    pair's roundtrip) are flagged in metadata.
    """
    k = inst.k
    if not t > 2 * k:
        raise ValueError("need t > 2k")
    n1 = inst.sizes[0]
    ids = make_identifiers(n1)
    d = len(ids[0])

    nid = 0

    def alloc(count):
        nonlocal nid
        out = list(range(nid, nid + count))
        nid += count
        return out

    # chains: sf[i] for i = 0..5t (sf[0] is S itself), sb[i] for i = 1..2t
    sf = [alloc(n1) for _ in range(5 * t + 1)]
    sb = [None] + [alloc(n1) for _ in range(2 * t)]
    tf = [alloc(n1) for _ in range(5 * t + 1)]
    tb = [None] + [alloc(n1) for _ in range(2 * t)]
    fwd = {i: alloc(inst.sizes[i]) for i in range(1, k)}
    bwd = {i: alloc(inst.sizes[i]) for i in range(1, k)}
    o1, o2, o3, o4 = alloc(4)
    gj = alloc(d)

    edges = []
    for a in range(n1):
        for i in range(5 * t):
            edges.append((sf[i][a], sf[i + 1][a]))      # S -> ... -> S_5t^f
            edges.append((tf[i + 1][a], tf[i][a]))      # T_5t^f -> ... -> T
        edges.append((sb[1][a], sf[0][a]))              # S_1^b -> S
        edges.append((tf[0][a], tb[1][a]))              # T -> T_1^b
        for i in range(1, 2 * t):
            edges.append((sb[i + 1][a], sb[i][a]))
            edges.append((tb[i][a], tb[i + 1][a]))
        # shortcut edges keeping same-side copies close
        for src in (sb[1][a], sb[t + 1][a]):
            for dst in (sf[2 * t + 1][a], sf[3 * t + 1][a]):
                edges.append((src, dst))
        for src in (tf[2 * t + 1][a], tf[3 * t + 1][a]):
            for dst in (tb[1][a], tb[t + 1][a]):
                edges.append((src, dst))

    for i, u, v in inst.edges:
        if i == 0:
            edges.append((sf[3 * t][u], fwd[1][v]))
            edges.append((bwd[1][v], sf[0][u]))
        elif i == k - 1:
            edges.append((fwd[k - 1][u], tf[3 * t][v]))
            edges.append((tf[0][v], bwd[k - 1][u]))
        else:
            edges.append((fwd[i][u], fwd[i + 1][v]))
            edges.append((bwd[i + 1][v], bwd[i][u]))

    all_fwd = [x for i in range(1, k) for x in fwd[i]]
    all_bwd = [x for i in range(1, k) for x in bwd[i]]
    for a in range(n1):
        edges.append((sf[5 * t][a], o1))
        edges.append((sf[4 * t][a], o3))
        edges.append((sf[5 * t][a], o3))
        edges.append((o2, sb[2 * t][a]))
        edges.append((o2, sb[t][a]))
        edges.append((o4, sb[2 * t][a]))
        edges.append((o2, tf[5 * t][a]))
        edges.append((o4, tf[4 * t][a]))
        edges.append((o4, tf[5 * t][a]))
        edges.append((tb[2 * t][a], o1))
        edges.append((tb[t][a], o1))
        edges.append((tb[2 * t][a], o3))
    for v in all_fwd:
        edges.append((o1, v))
        edges.append((v, o2))
    for v in all_bwd:
        edges.append((o3, v))
        edges.append((v, o4))

    for a in range(n1):
        for j in range(d):
            edges.append((sf[5 * t][a], gj[j]))
            edges.append((gj[j], sb[2 * t][a]))
            edges.append((gj[j], tf[5 * t][a]))
            edges.append((tb[2 * t][a], gj[j]))
            if ids[a][j] == 1:
                edges.append((sf[3 * t][a], gj[j]))
                edges.append((tf[0][a], gj[j]))
            else:
                edges.append((gj[j], sf[0][a]))
                edges.append((gj[j], tf[3 * t][a]))

    g = _graph.build_graph(nid, edges, weighted=False)
    return _artifact.ReductionArtifact(
        graph=g,
        kind="ankc-unweighted",
        yes_threshold=10 * t,
        no_threshold=6 * t + 2 * k,
        interesting_pairs=tuple((sf[0][a], tf[0][a]) for a in range(n1)),
        metadata={"t": t, "k": k, "d": d, "n1": n1,
                  "liberties": ["unconditioned S_5t^f x J and J x S_2t^b "
                                "edges (and T mirrors)",
                                "S_5t^f attached to o_3 alongside S_4t^f "
                                "(and T mirror)"]},
    )


def decide_ankc_via_rt(inst, t, rt_solver, unweighted=False):
    """True iff every layer-0 node is covered, judged by an external
    roundtrip-diameter solver on the reduction graph."""
    build = build_unweighted_ankc_graph if unweighted else build_weighted_ankc_graph
    art = build(inst, t)
    rt = rt_solver(art.graph)
    return rt <= art.no_threshold
