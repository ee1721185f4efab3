"""Command-line front end.

Subcommands cover the full artifact surface: ``gen`` (seeded random
graphs), ``diameter`` / ``rt-diameter`` (approximate and exact solvers),
``reduce`` (hardness-gadget generators), ``verify-gap`` (checks a reduction
against the exact oracle), ``oracle`` (brute-force answers) and ``bench``
(runtime-scaling rows).  Everything is deterministic given flags + --seed.

Exit codes: 0 on success, 1 when a verification/assertion fails, 2 on I/O
or parse errors.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from fractions import Fraction

from . import ankc as _ankc
from . import artifact as _artifact
from . import diameter as _diameter
from . import graph as _graph
from . import linfty as _linfty
from . import oracles as _oracles

META_PREFIX = "# meta "


class VerificationError(AssertionError):
    """A gap/threshold check failed (exit code 1)."""


# ---------------------------------------------------------------------------
# random instance generator
# ---------------------------------------------------------------------------

def generate_random_graph(n, m, max_weight=0, seed=0,
                          ensure_strongly_connected=True):
    """Seeded random digraph; with ``ensure_strongly_connected`` the first n
    edges form a Hamiltonian cycle over a random vertex permutation and the
    remaining m - n edges are uniform random non-parallel extras.

    ``max_weight`` <= 1 produces an unweighted graph, otherwise weights are
    uniform in [1, max_weight].
    """
    if n < 1:
        raise ValueError("need n >= 1")
    cap = n * (n - 1)
    if m > cap:
        raise ValueError(f"m={m} exceeds {cap} simple directed edges")
    rng = random.Random(seed)
    weighted = max_weight > 1

    def wt():
        return rng.randint(1, max_weight) if weighted else 1

    pairs = []
    seen = set()
    if ensure_strongly_connected:
        if m < n:
            raise ValueError("strong connectivity needs m >= n")
        if n == 1:
            raise ValueError("a single vertex admits no backbone cycle")
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(n):
            pairs.append((perm[i], perm[(i + 1) % n]))
        seen.update(pairs)
    while len(pairs) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v and (u, v) not in seen:
            seen.add((u, v))
            pairs.append((u, v))
    edges = [(u, v, wt()) for u, v in pairs]
    return _graph.build_graph(n, edges, weighted=weighted)


# ---------------------------------------------------------------------------
# small I/O helpers
# ---------------------------------------------------------------------------

def _read_text(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write_text(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_graph(path):
    return _graph.loads_edge_list(_read_text(path))


def _emit_report(args, report):
    """One JSON object per run under --stats json, plain text otherwise."""
    if getattr(args, "stats", None) == "json":
        print(json.dumps(report, default=str))
    else:
        verdict = report.get("estimate", report.get("verdict"))
        print(f"{'estimate' if 'estimate' in report else 'verdict'}={verdict}")


def _fmt_number(x):
    if x == math.inf:
        return "inf"
    return int(x) if float(x) == int(x) else float(x)


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def _cmd_gen(args):
    g = generate_random_graph(args.n, args.m, max_weight=args.max_weight,
                              seed=args.seed,
                              ensure_strongly_connected=not args.no_strong)
    _write_text(_graph.dumps_edge_list(g), args.output)
    return 0


def _cmd_diameter(args):
    g = _load_graph(args.input)
    t0 = time.perf_counter()
    if args.algo == "exact":
        est = _diameter.exact_diameter(g)
    elif args.algo == "two":
        est = _diameter.two_approx(g)
    else:
        est = _diameter.estimate_diameter(
            g, t=args.t, epsilon=Fraction(args.eps).limit_denominator(10**6),
            seed=args.seed, omega=args.omega, threads=args.threads)
    elapsed = time.perf_counter() - t0
    report = {
        "command": "diameter",
        "parameters": {"algo": args.algo, "t": args.t, "eps": args.eps,
                       "omega": args.omega},
        "seed": args.seed,
        "wall_time": {"total": elapsed},
        "estimate": _fmt_number(est),
    }
    if args.compare_oracle:
        exact = _diameter.exact_diameter(g)
        report["oracle"] = {"exact": _fmt_number(exact)}
    _emit_report(args, report)
    return 0


def _cmd_rt_diameter(args):
    g = _load_graph(args.input)
    t0 = time.perf_counter()
    if args.algo == "exact":
        est = _oracles.exact_roundtrip_diameter(g)
    else:
        est = _oracles.rt_two_approx(g)
    report = {
        "command": "rt-diameter",
        "parameters": {"algo": args.algo},
        "seed": args.seed,
        "wall_time": {"total": time.perf_counter() - t0},
        "estimate": _fmt_number(est),
    }
    _emit_report(args, report)
    return 0


def _build_reduction(args):
    if args.family == "linfty":
        vs = _linfty.loads_vectors(_read_text(args.input))
        alpha = Fraction(args.alpha)
        flat = _linfty.flatten_coordinates(vs, alpha)
        if args.unweighted:
            if args.M is None:
                raise ValueError("unweighted linfty reduce needs --M")
            beta = math.floor(args.M * alpha - 1)
            eps = Fraction(1, 4 * beta + 6)
            bounded = _linfty.bound_domain(flat, alpha, eps)
            return _linfty.build_unweighted_rt_graph(bounded, alpha, args.M)
        eps = Fraction(1, 4) / alpha
        bounded = _linfty.bound_domain(flat, alpha, eps)
        return _linfty.build_weighted_rt_graph(bounded, alpha, eps)
    inst = _ankc.loads_instance(_read_text(args.input))
    build = (_ankc.build_unweighted_ankc_graph if args.unweighted
             else _ankc.build_weighted_ankc_graph)
    return build(inst, args.t)


def _cmd_reduce(args):
    art = _build_reduction(args)
    meta_line = META_PREFIX + json.dumps(art.meta_dict()) + "\n"
    if args.output is None and args.meta is None:
        # pipe-friendly: one stream, meta riding along as a comment
        sys.stdout.write(meta_line + _graph.dumps_edge_list(art.graph))
        return 0
    if args.output is None or args.meta is None:
        raise ValueError("--output and --meta must be given together")
    art.write(args.output, args.meta)
    return 0


def _split_artifact_stream(text):
    meta = None
    for raw in text.splitlines():
        if raw.startswith(META_PREFIX):
            meta = json.loads(raw[len(META_PREFIX):])
            meta["interesting_pairs"] = [tuple(p)
                                         for p in meta["interesting_pairs"]]
            break
    return _graph.loads_edge_list(text), meta


def _cmd_verify_gap(args):
    if args.meta is not None:
        g = _load_graph(args.graph)
        meta = _artifact.read_meta(args.meta)
    else:
        g, meta = _split_artifact_stream(_read_text(args.graph))
        if meta is None:
            raise _graph.GraphFormatError(
                "no embedded meta line; pass --meta explicitly")
    rt = _oracles.exact_roundtrip_diameter(g, max_n=g.n)
    side = ("no" if rt <= meta["no_threshold"]
            else "yes" if rt >= meta["yes_threshold"] else "gap")
    report = {
        "command": "verify-gap",
        "parameters": {"kind": meta["kind"],
                       "yes_threshold": meta["yes_threshold"],
                       "no_threshold": meta["no_threshold"]},
        "seed": None,
        "wall_time": {},
        "rt_diameter": _fmt_number(rt),
        "verdict": side,
    }
    _emit_report(args, report)
    if side == "gap":
        raise VerificationError(
            f"roundtrip diameter {rt} falls inside the forbidden gap "
            f"({meta['no_threshold']}, {meta['yes_threshold']})")
    if args.expect and side != args.expect:
        raise VerificationError(f"expected {args.expect} side, measured {side}")
    return 0


def _cmd_oracle(args):
    g = _load_graph(args.input)
    if args.what == "diameter":
        est = _oracles.exact_diameter(g, max_n=g.n)
    else:
        est = _oracles.exact_roundtrip_diameter(g, max_n=g.n)
    report = {"command": "oracle", "parameters": {"what": args.what},
              "seed": None, "wall_time": {}, "estimate": _fmt_number(est)}
    _emit_report(args, report)
    return 0


def _cmd_bench(args):
    """Per-size timing rows for the scaling check.

    The oracle column times APSP from ``--sources`` sampled sources and
    scales linearly to all n sources (per-source cost is uniform), keeping
    the benchmark itself fast while preserving the fitted exponent.
    """
    rows = []
    for exp in range(args.min_exp, args.max_exp + 1):
        m = 2 ** exp
        n = max(4, m // 4)
        g = generate_random_graph(n, m, seed=args.seed + exp)
        t0 = time.perf_counter()
        cfg = _diameter.DeciderConfig(D=2 * n, t=args.t, seed=args.seed)
        _diameter.decide_general(g, cfg, threads=args.threads)
        decide_s = time.perf_counter() - t0
        sources = min(n, args.sources)
        t0 = time.perf_counter()
        _oracles.apsp(g, max_n=n, sources=range(sources))
        apsp_s = (time.perf_counter() - t0) * n / sources
        row = {"m": m, "n": n, "decide_s": round(decide_s, 4),
               "apsp_scaled_s": round(apsp_s, 4)}
        rows.append(row)
        if args.stats == "json":
            print(json.dumps({"command": "bench", "seed": args.seed,
                              **row}))
        else:
            print(f"m={m} n={n} decide_s={row['decide_s']} "
                  f"apsp_scaled_s={row['apsp_scaled_s']}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stats", choices=("json",), default=None,
                   help="emit a JSON-lines run report instead of plain text")
    p.add_argument("--threads", type=int, default=1)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dirdiam",
        description="directed diameter approximation + roundtrip-diameter "
                    "hardness reductions")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="seeded random digraph to stdout")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-weight", type=int, default=0)
    p.add_argument("--no-strong", action="store_true",
                   help="skip the strongly-connecting backbone cycle")
    p.add_argument("--output", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("diameter", help="diameter of an edge-list graph")
    p.add_argument("--algo", choices=("exact", "two", "approx"),
                   default="approx")
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.05)
    p.add_argument("--omega", type=float, default=_diameter.OMEGA_DEFAULT)
    p.add_argument("--input", default=None, help="edge list (default stdin)")
    p.add_argument("--compare-oracle", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_diameter)

    p = sub.add_parser("rt-diameter", help="roundtrip diameter")
    p.add_argument("--algo", choices=("exact", "two"), default="exact")
    p.add_argument("--input", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_rt_diameter)

    p = sub.add_parser("reduce", help="emit a hardness-reduction graph")
    p.add_argument("family", choices=("linfty", "ankc"))
    p.add_argument("--input", default=None,
                   help="vector set / layered instance (default stdin)")
    p.add_argument("--unweighted", action="store_true")
    p.add_argument("--alpha", default="2", help="linfty gap parameter")
    p.add_argument("--M", type=int, default=None,
                   help="integerization scale for unweighted linfty")
    p.add_argument("--t", type=int, default=7, help="ankc chain parameter")
    p.add_argument("--output", default=None, help="graph edge-list path")
    p.add_argument("--meta", default=None, help="threshold JSON path")
    _add_common(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify-gap",
                       help="assert a reduction's thresholds via the oracle")
    p.add_argument("--graph", default=None,
                   help="edge list, possibly with embedded '# meta' line "
                        "(default stdin)")
    p.add_argument("--meta", default=None)
    p.add_argument("--expect", choices=("yes", "no"), default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_verify_gap)

    p = sub.add_parser("oracle", help="brute-force reference answers")
    p.add_argument("--what", choices=("diameter", "rt-diameter"),
                   default="diameter")
    p.add_argument("--input", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bench", help="runtime-scaling rows, m = 2^min..2^max")
    p.add_argument("--min-exp", type=int, default=12)
    p.add_argument("--max-exp", type=int, default=16)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--sources", type=int, default=64,
                   help="sampled APSP sources (scaled up linearly)")
    _add_common(p)
    p.set_defaults(func=_cmd_bench)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (VerificationError,) as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1
    except (_graph.GraphFormatError, json.JSONDecodeError, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
