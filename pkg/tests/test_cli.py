import json

import pytest

from dirdiam import graph as G
from dirdiam import oracles
from dirdiam.cli import generate_random_graph, main


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# generator
# ---------------------------------------------------------------------------

def test_gen_minimal_is_backbone_cycle():
    g = generate_random_graph(5, 5, seed=1)
    assert g.n == 5 and g.m == 5
    assert G.is_strongly_connected(g)
    assert all(len(g.out_adj[v]) == 1 for v in range(5))


def test_gen_seed_determinism():
    a = generate_random_graph(10, 30, seed=3)
    b = generate_random_graph(10, 30, seed=3)
    assert a.edges == b.edges
    c = generate_random_graph(10, 30, seed=4)
    assert a.edges != c.edges


def test_gen_strong_connectivity():
    for seed in range(5):
        g = generate_random_graph(12, 25, seed=seed)
        assert G.is_strongly_connected(g)


def test_gen_weighted():
    g = generate_random_graph(6, 12, max_weight=9, seed=0)
    assert g.weighted
    assert all(1 <= w <= 9 for _, _, w in g.edges)


def test_gen_infeasible():
    with pytest.raises(ValueError):
        generate_random_graph(5, 4)  # m < n with connectivity
    with pytest.raises(ValueError):
        generate_random_graph(3, 7)  # more than n(n-1) simple edges


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def test_gen_pipe_diameter(capsys, monkeypatch):
    code, out, _ = run(capsys, ["gen", "--n", "8", "--m", "16", "--seed", "1"])
    assert code == 0
    graph_text = out
    back = G.loads_edge_list(graph_text)
    assert back.n == 8 and back.m == 16
    code, out, _ = run(capsys, ["diameter", "--algo", "exact"],
                       stdin=graph_text, monkeypatch=monkeypatch)
    assert code == 0
    est = out.strip().split("=")[1]
    assert int(est) == oracles.exact_diameter(back)


def test_diameter_approx_deterministic(capsys, monkeypatch, tmp_path):
    g = generate_random_graph(10, 25, seed=2)
    p = tmp_path / "g.el"
    G.write_edge_list(g, p)
    args = ["diameter", "--algo", "approx", "--t", "0", "--eps", "0.05",
            "--seed", "3", "--input", str(p)]
    _, out1, _ = run(capsys, args)
    _, out2, _ = run(capsys, args)
    assert out1 == out2
    assert out1.startswith("estimate=")


def test_diameter_stats_json(capsys, tmp_path):
    g = generate_random_graph(8, 20, seed=5)
    p = tmp_path / "g.el"
    G.write_edge_list(g, p)
    code, out, _ = run(capsys, ["diameter", "--algo", "approx", "--input",
                                str(p), "--stats", "json",
                                "--compare-oracle"])
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "diameter"
    assert report["estimate"] >= report["oracle"]["exact"]
    assert "wall_time" in report


def test_rt_diameter(capsys, tmp_path):
    g = G.build_graph(4, [(i, (i + 1) % 4, 1) for i in range(4)])
    p = tmp_path / "c4.el"
    G.write_edge_list(g, p)
    code, out, _ = run(capsys, ["rt-diameter", "--input", str(p)])
    assert code == 0
    assert out.strip() == "estimate=4"


def test_oracle_subcommand(capsys, tmp_path):
    g = G.build_graph(4, [(i, (i + 1) % 4, 1) for i in range(4)])
    p = tmp_path / "c4.el"
    G.write_edge_list(g, p)
    code, out, _ = run(capsys, ["oracle", "--what", "diameter",
                                "--input", str(p)])
    assert code == 0 and out.strip() == "estimate=3"


TRI = "3 1 1 1\n1 0 2 0\n2 0 3 0\n3 0 1 0\n"


def test_reduce_verify_pipe(capsys, monkeypatch, tmp_path):
    inst = tmp_path / "tri.lk"
    inst.write_text(TRI)
    code, out, _ = run(capsys, ["reduce", "ankc", "--t", "7",
                                "--input", str(inst)])
    assert code == 0
    code, out2, _ = run(capsys, ["verify-gap", "--expect", "no"],
                        stdin=out, monkeypatch=monkeypatch)
    assert code == 0
    assert "verdict=no" in out2


def test_reduce_to_files_and_verify(capsys, tmp_path):
    inst = tmp_path / "tri.lk"
    inst.write_text(TRI)
    gp, mp = tmp_path / "g.el", tmp_path / "g.json"
    code, _, _ = run(capsys, ["reduce", "ankc", "--t", "7", "--unweighted",
                              "--input", str(inst), "--output", str(gp),
                              "--meta", str(mp)])
    assert code == 0
    meta = json.loads(mp.read_text())
    assert meta["kind"] == "ankc-unweighted"
    code, out, _ = run(capsys, ["verify-gap", "--graph", str(gp),
                                "--meta", str(mp), "--stats", "json"])
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "no"
    assert report["rt_diameter"] == meta["no_threshold"]


def test_reduce_linfty_pipe(capsys, monkeypatch, tmp_path):
    vecs = tmp_path / "v.vec"
    vecs.write_text("2 1 1\n0\n3\n")  # far pair at distance 3 >= alpha
    code, out, _ = run(capsys, ["reduce", "linfty", "--alpha", "2",
                                "--input", str(vecs)])
    assert code == 0
    code, out2, _ = run(capsys, ["verify-gap", "--expect", "no"],
                        stdin=out, monkeypatch=monkeypatch)
    assert code == 0


def test_verify_gap_wrong_expectation_fails(capsys, monkeypatch, tmp_path):
    inst = tmp_path / "tri.lk"
    inst.write_text(TRI)
    _, out, _ = run(capsys, ["reduce", "ankc", "--t", "7",
                             "--input", str(inst)])
    code, _, err = run(capsys, ["verify-gap", "--expect", "yes"],
                       stdin=out, monkeypatch=monkeypatch)
    assert code == 1
    assert "FAIL" in err


def test_parse_error_exit_code(capsys, monkeypatch):
    code, _, err = run(capsys, ["diameter", "--algo", "exact"],
                       stdin="not a graph\n", monkeypatch=monkeypatch)
    assert code == 2
    assert "error" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, ["diameter", "--input", "/nonexistent.el"])
    assert code == 2


def test_bench_rows(capsys):
    code, out, _ = run(capsys, ["bench", "--min-exp", "6", "--max-exp", "7",
                                "--stats", "json", "--sources", "8"])
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["m"] for r in rows] == [64, 128]
    assert all(r["decide_s"] > 0 and r["apsp_scaled_s"] > 0 for r in rows)
