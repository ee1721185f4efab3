"""Randomized diameter decision procedures and the binary-search estimator.

Two deciders share one engine:

* ``decide_74`` -- the 7/4-approximation special case for unweighted graphs
  (eccentricity sampling, small-ball scans, one sparse boolean product).
* ``decide_general`` -- the (2 - 1/k + eps)-approximation family for weighted
  graphs, looping over ball scales i = 0..t with a bank of thresholded
  boolean products per scale.

Both accept (w.h.p. over the seed) when the diameter is at least D and reject
(always, for every seed) when the diameter is below their respective
thresholds; in between the verdict is unconstrained.  All thresholds are
compared in exact rational arithmetic.

The decision runs on a degree-reduced copy of the input (every vertex blown
up into a zero-weight cycle, max total degree 3), which preserves all
original distances; ``m`` in every budget/sample-size formula is the edge
count of that reduced graph and ``log`` is natural.
"""
from __future__ import annotations

from array import array
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, inf, log

import numpy as np
from numpy.random import SeedSequence, default_rng

from . import boolmat as _bm
from . import graph as _graph
from . import oracles as _oracles

OMEGA_DEFAULT = 2.3728596

# above this many reduced vertices, eccentricity scans go through scipy
SCIPY_ECC_CUTOFF = 3000
_ECC_CHUNK = 128


# ---------------------------------------------------------------------------
# alpha schedule
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaSchedule:
    """Exponent schedule alpha_0 > alpha_1 > ... > alpha_{t+1} = alpha.

    Stored as exact Fractions.  Satisfies 2*alpha = alpha_i +
    (1 - alpha_{i+1})*(omega-1)/2 for every i, alpha_0 = 1 - alpha, and
    alpha >= 2/(7-omega).  At omega = 3 the schedule degenerates to the
    constant 1/2 and the decrease is non-strict.
    """

    t: int
    omega: float
    k: int
    alpha: Fraction
    alphas: tuple


def alpha_schedule(t, omega=OMEGA_DEFAULT):
    if t < 0:
        raise ValueError("t must be >= 0")
    if not 2 <= omega <= 3:
        raise ValueError("omega must lie in [2, 3]")
    w = Fraction(omega)
    r = 2 / (w - 1)
    s = 4 / (w - 1)
    # alpha_i = beta_i - gamma_i * alpha; alpha_0 = 1 - alpha
    beta, gamma = Fraction(1), Fraction(1)
    for _ in range(t + 1):
        beta = r * beta + 1
        gamma = r * gamma + s
    alpha = beta / (1 + gamma)  # from alpha_{t+1} = alpha
    alphas = [1 - alpha]
    for _ in range(t + 1):
        alphas.append(r * alphas[-1] + 1 - s * alpha)
    assert alphas[-1] == alpha
    if alpha < 2 / (7 - w):
        raise AssertionError("schedule invariant alpha >= 2/(7-omega) failed")
    for a, b in zip(alphas, alphas[1:]):
        if a < b or (a == b and omega < 3):
            raise AssertionError("alpha schedule is not decreasing")
    return AlphaSchedule(t=t, omega=float(omega), k=2 ** (t + 2),
                         alpha=alpha, alphas=tuple(alphas))


# ---------------------------------------------------------------------------
# config / verdict plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeciderConfig:
    D: int
    t: int = 0
    epsilon: Fraction = Fraction(1, 10)
    seed: int = 0
    omega: float = OMEGA_DEFAULT
    integer_weight_mode: bool = False
    max_weight: int = None  # C, required when integer_weight_mode

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("D must be >= 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.integer_weight_mode and self.max_weight is None:
            raise ValueError("integer_weight_mode requires max_weight")


@dataclass(frozen=True)
class Decision:
    accept: bool
    step: str
    trace: dict = field(default_factory=dict)

    @property
    def verdict(self):
        return "Accept" if self.accept else "Reject"

    def __bool__(self):
        return self.accept


def _sample_size(m, expo):
    return max(1, ceil(4 * m ** float(expo) * log(m)))


def _ball_cap(m, expo):
    """Largest integer ball size still counted as 'small' for threshold
    m**expo."""
    cap = floor(m ** float(expo))
    # guard against float roundoff at integer powers
    while (cap + 1) ** (1 / float(expo)) <= m:
        cap += 1
    return max(cap, 1)


class _EccEngine:
    """Batched in/out eccentricities on the reduced graph.

    Below the cutoff this is a plain Dijkstra loop; above it, chunked calls
    into scipy's csgraph Dijkstra (optionally across a thread pool).  Both
    paths return identical integers.
    """

    def __init__(self, rg, cutoff=SCIPY_ECC_CUTOFF, threads=1):
        self.rg = rg
        self.threads = max(1, threads)
        self.use_scipy = rg.n > cutoff
        self._csr = {}

    def _matrix(self, direction):
        if direction not in self._csr:
            mat = _oracles._to_csr(self.rg)
            self._csr["out"] = mat.tocsr()
            self._csr["in"] = mat.T.tocsr()
        return self._csr[direction]

    def _chunk_ecc(self, direction, chunk):
        from scipy.sparse.csgraph import dijkstra
        d = dijkstra(self._matrix(direction), directed=True, indices=chunk)
        return np.max(d, axis=1)

    def eccentricities(self, vertices, direction):
        """Yield (v, eccentricity) pairs; inf when v reaches/sees less than
        the whole graph."""
        vertices = list(vertices)
        if not self.use_scipy:
            for v in vertices:
                yield v, _graph.eccentricity(self.rg, v, direction)
            return
        chunks = [vertices[i:i + _ECC_CHUNK]
                  for i in range(0, len(vertices), _ECC_CHUNK)]
        if self.threads > 1 and len(chunks) > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(self.threads) as pool:
                results = list(pool.map(
                    lambda c: self._chunk_ecc(direction, c), chunks))
        else:
            results = [self._chunk_ecc(direction, c) for c in chunks]
        for chunk, eccs in zip(chunks, results):
            for v, e in zip(chunk, eccs):
                yield v, (inf if e == inf else int(e))


# ---------------------------------------------------------------------------
# shared decision steps
# ---------------------------------------------------------------------------

def _dedup_sample(rng, n, size):
    """Uniform-with-replacement sample, deduplicated preserving first
    occurrence (the verdict only depends on the set)."""
    draws = rng.integers(0, n, size=size)
    return list(dict.fromkeys(int(v) for v in draws))


def _ecc_probe(engine, vertices, threshold):
    """True iff any vertex has in- or out-eccentricity >= threshold."""
    threshold = ceil(threshold)  # eccentricities are integers (or inf)
    for direction in ("out", "in"):
        for _, ecc in engine.eccentricities(vertices, direction):
            if ecc >= threshold:
                return True
    return False


def _first_small_ball(rg, radius, cap, direction):
    for v in range(rg.n):
        b, res = _graph.bounded_ball(rg, v, radius, cap, direction)
        if b is not None:
            return v, b, res
    return None, None, None


def _pack_recording(rec):
    """dict v -> d-hat as parallel arrays sorted by d-hat, so a distance
    threshold becomes a bisect plus an array slice."""
    items = sorted(rec.items(), key=lambda kv: kv[1])
    return (array("q", (dh for _, dh in items)),
            array("q", (v for v, _ in items)))


def _collect_side(rg, rng, sample_expo, m, radius, cap, direction):
    """Sample vertices, keep those whose ball of the given radius is small,
    and record d-hat over the B+ closure of each kept vertex."""
    sample = _dedup_sample(rng, rg.n, _sample_size(m, sample_expo))
    members = []
    recordings = {}
    for s in sample:
        b, res = _graph.bounded_ball(rg, s, radius, cap, direction)
        if b is None:
            continue
        members.append(s)
        recordings[s] = _pack_recording(
            _graph.plus_closure(rg, b, res, direction))
    return members, recordings


def _merge_min(dst, src):
    for s, rec in src.items():
        if s not in dst:
            dst[s] = rec
            continue
        merged = dict(zip(dst[s][1], dst[s][0]))
        for v, val in zip(rec[1], rec[0]):
            if val < merged.get(v, inf):
                merged[v] = val
        dst[s] = _pack_recording(merged)
    return dst


def _recorded_within(rec, thresh):
    """Vertices of a packed recording with d-hat <= thresh."""
    return rec[1][:bisect_right(rec[0], thresh)]


# ---------------------------------------------------------------------------
# the 7/4 decider
# ---------------------------------------------------------------------------

def decide_74(g, D, seed, omega=OMEGA_DEFAULT, scipy_cutoff=SCIPY_ECC_CUTOFF,
              threads=1):
    """Accept w.h.p. if diameter(g) >= D; always reject if diameter < 4D/7.

    Unweighted graphs only.
    """
    if g.weighted:
        raise ValueError("decide_74 handles unweighted graphs only")
    if D < 1:
        raise ValueError("D must be >= 1")
    sched = alpha_schedule(0, omega)
    rg, _ = _graph.degree_reduce(g)
    m = rg.m
    trace = {"m": m, "D": D}
    if m == 0:
        # isolated vertices only: diameter is 0 (n <= 1) or infinite
        return Decision(g.n > 1, "degenerate", trace)
    ss = seed if isinstance(seed, SeedSequence) else SeedSequence(seed)
    rng1, rng4 = (default_rng(c) for c in ss.spawn(2))
    engine = _EccEngine(rg, cutoff=scipy_cutoff, threads=threads)
    ecc_thresh = Fraction(4 * D, 7)

    # Step 1: eccentricities of a random sample
    sample = _dedup_sample(rng1, rg.n, _sample_size(m, sched.alpha))
    trace["step1_sample"] = len(sample)
    if _ecc_probe(engine, sample, ecc_thresh):
        return Decision(True, "step1", trace)

    # Steps 2-3: a single small ball of radius D/7, then eccentricities of
    # its one-step closure
    cap_small = _ball_cap(m, sched.alpha)
    for direction in ("out", "in"):
        v, b, res = _first_small_ball(rg, Fraction(D, 7), cap_small, direction)
        if v is None:
            continue
        plus = _graph.plus_closure(rg, b, res, direction)
        trace[f"small_ball_{direction}"] = (v, len(b), len(plus))
        if _ecc_probe(engine, plus.keys(), ecc_thresh):
            return Decision(True, f"step23_{direction}", trace)

    # Steps 4-5: sampled 2D/7 balls on both sides, one boolean product
    radius = Fraction(2 * D, 7)
    cap_big = _ball_cap(m, 1 - sched.alpha)
    sample = _dedup_sample(rng4, rg.n, _sample_size(m, 1 - sched.alpha))
    s_out, s_in = [], []          # member vertices
    balls_out, plus_in = {}, {}
    for s in sample:
        b, res = _graph.bounded_ball(rg, s, radius, cap_big, "out")
        if b is not None:
            s_out.append(s)
            balls_out[s] = b
        b, res = _graph.bounded_ball(rg, s, radius, cap_big, "in")
        if b is not None:
            s_in.append(s)
            plus_in[s] = (b, _graph.plus_closure(rg, b, res, "in"))
    trace["s_out"] = len(s_out)
    trace["s_in"] = len(s_in)
    # membership side of the product follows the proof's parity split
    use_plus = floor(Fraction(4 * D, 7)) != 2 * floor(Fraction(2 * D, 7))
    a_out = _bm.SparseBoolMatrix.from_rows(
        len(s_out), rg.n, (balls_out[s].keys() for s in s_out))
    col_of = {s: i for i, s in enumerate(s_in)}
    in_rows = [[] for _ in range(rg.n)]
    for s in s_in:
        members = plus_in[s][1] if use_plus else plus_in[s][0]
        for v in members:
            in_rows[v].append(col_of[s])
    a_in = _bm.SparseBoolMatrix.from_rows(rg.n, len(s_in), in_rows)
    hit = _bm.find_zero_entry(_bm.product(a_out, a_in),
                              row_labels=s_out, col_labels=s_in)
    if hit is not None:
        trace["witness"] = hit
        return Decision(True, "step5", trace)
    return Decision(False, "step5", trace)


# ---------------------------------------------------------------------------
# the general decider
# ---------------------------------------------------------------------------

def _j_values(eps, D, k, i, integer_weight_mode, C):
    """The j grid for the thresholded products at scale i."""
    jmax = floor(Fraction(k, 2 * k - 1) / eps)
    if not integer_weight_mode:
        return list(range(jmax + 1))
    # integer weights, eps = 1/D: only j near (2^{i+1}/(2k-1)) D can matter,
    # within the maximum edge weight C
    x = Fraction(2 ** (i + 1), 2 * k - 1) * D
    lo = max(0, ceil(x - C))
    hi = min(jmax, floor(x) + C)
    if lo > hi:
        lo = hi = min(jmax, floor(x))
    return list(range(lo, hi + 1))


def decide_general(g, cfg, scipy_cutoff=SCIPY_ECC_CUTOFF, threads=1):
    """Accept w.h.p. if diameter(g) >= cfg.D; always reject if
    diameter < (k/(2k-1) - eps) * cfg.D, where k = 2^(t+2)."""
    sched = alpha_schedule(cfg.t, cfg.omega)
    rg, _ = _graph.degree_reduce(g)
    return _decide_general_reduced(rg, g.n, sched, cfg, cfg.seed,
                                   scipy_cutoff, threads)


def _decide_general_reduced(rg, orig_n, sched, cfg, seed, scipy_cutoff,
                            threads):
    k = sched.k
    D = cfg.D
    eps = Fraction(1, D) if cfg.integer_weight_mode else Fraction(cfg.epsilon)
    m = rg.m
    trace = {"m": m, "D": D, "k": k}
    if m == 0:
        return Decision(orig_n > 1, "degenerate", trace)
    ss = seed if isinstance(seed, SeedSequence) else SeedSequence(seed)
    children = ss.spawn(2 + 2 * (cfg.t + 1))
    engine = _EccEngine(rg, cutoff=scipy_cutoff, threads=threads)
    ecc_thresh = Fraction(k, 2 * k - 1) * D

    # Step 1
    sample = _dedup_sample(default_rng(children[0]), rg.n,
                           _sample_size(m, sched.alpha))
    trace["step1_sample"] = len(sample)
    if _ecc_probe(engine, sample, ecc_thresh):
        return Decision(True, "step1", trace)

    # Steps 2-3: small ball of radius D/(2k-1); scan the ball itself
    cap_small = _ball_cap(m, sched.alpha)
    for direction in ("out", "in"):
        v, b, _res = _first_small_ball(rg, Fraction(D, 2 * k - 1), cap_small,
                                       direction)
        if v is None:
            continue
        trace[f"small_ball_{direction}"] = (v, len(b))
        if _ecc_probe(engine, b.keys(), ecc_thresh):
            return Decision(True, f"step23_{direction}", trace)

    # Step 4: scales i = 0..t
    scales = []
    for i in range(cfg.t + 1):
        rng_s = default_rng(children[2 + 2 * i])
        rng_t = default_rng(children[3 + 2 * i])
        cap_i = _ball_cap(m, sched.alphas[i])
        r_s = Fraction(2 ** (i + 1), 2 * k - 1) * D
        r_t = Fraction(k - 2 ** (i + 1), 2 * k - 1) * D
        sides = {}
        for direction in ("out", "in"):
            s_members, s_rec = _collect_side(
                rg, rng_s, 1 - sched.alphas[i + 1], m, r_s, cap_i, direction)
            t_members, t_rec = _collect_side(
                rg, rng_t, 1 - sched.alpha, m, r_t, cap_i, direction)
            # a vertex sampled on both sides keeps the smaller recording
            rec = _merge_min({}, s_rec)
            rec = _merge_min(rec, t_rec)
            sides[direction] = (s_members, t_members, rec)
        scales.append((i, sides))
        trace[f"scale{i}"] = {
            d: (len(sides[d][0]), len(sides[d][1])) for d in sides}

    for i, sides in scales:
        js = _j_values(eps, D, k, i, cfg.integer_weight_mode, cfg.max_weight)
        s_out, t_out, rec_out = sides["out"]
        s_in, t_in, rec_in = sides["in"]
        for near, far in ((s_out, t_in), (t_out, s_in)):
            pairs = []
            for j in js:
                # distances are integers, so exact rational thresholds
                # round down for free
                near_thresh = floor(j * eps * D)
                far_thresh = floor((Fraction(k, 2 * k - 1) - j * eps) * D)
                left = _bm.SparseBoolMatrix.from_rows(
                    len(near), rg.n,
                    (_recorded_within(rec_out[s], near_thresh)
                     for s in near))
                rows = [[] for _ in range(rg.n)]
                for c, s in enumerate(far):
                    for v in _recorded_within(rec_in[s], far_thresh):
                        rows[v].append(c)
                right = _bm.SparseBoolMatrix.from_rows(rg.n, len(far), rows)
                pairs.append((left, right))
            if not _bm.all_pairs_witnessed(pairs):
                trace["accept_scale"] = i
                return Decision(True, "step4c", trace)
    return Decision(False, "step4c", trace)


# ---------------------------------------------------------------------------
# baselines and the estimator
# ---------------------------------------------------------------------------

def exact_diameter(g, max_n=_oracles.APSP_DEFAULT_LIMIT):
    """max_{u,v} d(u, v); inf when not strongly connected."""
    return _oracles.exact_diameter(g, max_n=max_n)


def two_approx(g):
    """One-vertex baseline in [D*/2, D*]."""
    return _oracles.two_approx(g)


def estimate_diameter(g, t=0, epsilon=Fraction(1, 10), seed=0,
                      omega=OMEGA_DEFAULT, scipy_cutoff=SCIPY_ECC_CUTOFF,
                      threads=1):
    """Binary-searched diameter estimate.

    Returns inf for graphs that are not strongly connected; otherwise an
    integer in [D*, (2 - 1/k + 4*eps) * D*] w.h.p., where k = 2^(t+2).
    """
    if not _graph.is_strongly_connected(g):
        return inf
    if g.n <= 1:
        return 0
    sched = alpha_schedule(t, omega)
    rg, _ = _graph.degree_reduce(g)
    hi = 1 + g.total_weight() if g.weighted else g.n
    lo = 0
    ss = SeedSequence(seed) if not isinstance(seed, SeedSequence) else seed
    children = iter(ss.spawn(max(1, hi.bit_length() + 2)))
    while hi - lo > 1:
        mid = (hi + lo) // 2
        cfg = DeciderConfig(D=mid, t=t, epsilon=Fraction(epsilon), seed=0,
                            omega=omega)
        verdict = _decide_general_reduced(rg, g.n, sched, cfg, next(children),
                                          scipy_cutoff, threads)
        if verdict.accept:
            lo = mid
        else:
            hi = mid
    return lo
