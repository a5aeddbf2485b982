import json
import os
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "convexa"]


def run(*args, env=None, cwd=None):
    e = dict(os.environ)
    if env:
        e.update(env)
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, env=e, cwd=cwd
    )


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    r = run(
        "generate", "--kind", "tree_of_cliques", "--cliques", "8",
        "--seed", "1", "--output", str(d / "toc.tsv"),
    )
    assert r.returncode == 0, r.stderr
    (d / "tree.tsv").write_text("a\tb\nb\tc\nb\td\n")
    (d / "c4.tsv").write_text("a\tb\nb\tc\nc\td\na\td\n")
    (d / "papers.csv").write_text(
        "paper_id,author_id\np1,a\np1,b\np1,c\np2,a\np2,b\np3,d\n"
    )
    (d / "paper_meta.csv").write_text("paper_id,year\np1,2001\np2,1998\np3,2010\n")
    (d / "authors.csv").write_text(
        "author_id,birth_year,gender\na,1960,F\nb,1980,F\nc,1975,M\nd,1990,M\n"
    )
    return d


def test_convexity_tree(workdir):
    out = workdir / "conv_tree.csv"
    r = run("convexity", "--input", str(workdir / "tree.tsv"), "--runs", "100",
            "--seed", "7", "--output", str(out))
    assert r.returncode == 0
    assert "X = 1" in r.stdout
    assert out.read_text().startswith("t,s_t\n0,0.25\n")
    meta = json.loads((workdir / "conv_tree.csv.meta.json").read_text())
    assert meta["config"]["x"] == 1.0
    assert meta["config"]["seed"] == 7


def test_convexity_c4(workdir):
    r = run("convexity", "--input", str(workdir / "c4.tsv"),
            "--output", str(workdir / "conv_c4.csv"))
    assert r.returncode == 0
    assert "X = 0.75" in r.stdout


def test_missing_input_exit_2(workdir):
    r = run("convexity", "--input", str(workdir / "nope.tsv"),
            "--output", str(workdir / "x.csv"))
    assert r.returncode == 2
    assert "nope.tsv" in r.stderr


def test_disconnected_skeleton_exit_3(workdir):
    p = workdir / "disc.tsv"
    p.write_text("a\tb\nc\td\n")
    r = run("skeleton", "--input", str(p), "--output", str(workdir / "y.tsv"))
    assert r.returncode == 3


def test_skeleton_outputs(workdir):
    out = workdir / "sk.tsv"
    r = run("skeleton", "--input", str(workdir / "toc.tsv"), "--runs", "10",
            "--seed", "1", "--output", str(out),
            "--removal-log", str(workdir / "rm.csv"))
    assert r.returncode == 0, r.stderr
    lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert all(l.split("\t")[3] in "01" for l in lines)
    assert (workdir / "rm.csv").read_text().startswith("step,u,v,objective")


def test_compare_tree_columns_match(workdir):
    d = workdir / "cmp_tree"
    r = run("compare", "--input", str(workdir / "tree.tsv"), "--runs", "10",
            "--seed", "2", "--backbones", "skeleton,mst",
            "--output-dir", str(d))
    assert r.returncode == 0, r.stderr
    rows = (d / "stats.csv").read_text().splitlines()
    header = rows[0].split(",")
    inet, imst = header.index("network"), header.index("mst")
    for row in rows[1:]:
        cells = row.split(",")
        assert cells[inet] == cells[imst]  # a tree is its own MST


def test_compare_correlation_diagonal(workdir):
    d = workdir / "cmp_toc"
    r = run("compare", "--input", str(workdir / "toc.tsv"), "--runs", "10",
            "--seed", "2", "--backbones", "skeleton", "--output-dir", str(d))
    assert r.returncode == 0, r.stderr
    # the skeleton of a tree of cliques is the whole graph -> unit diagonal
    for line in (d / "corr_skeleton.csv").read_text().splitlines()[1:]:
        rm, cm, rho, tau = line.split(",")
        if rm == cm:
            assert float(rho) == 1.0 and float(tau) == 1.0


def test_rank_limits_rows(workdir):
    out = workdir / "rank.csv"
    r = run("rank", "--input", str(workdir / "toc.tsv"), "--measure", "pagerank",
            "--top", "20", "--output", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "rank,node,value"
    assert len(lines) <= 21


def test_centrality_all_measures(workdir):
    out = workdir / "cent.csv"
    r = run("centrality", "--input", str(workdir / "tree.tsv"), "--output", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "node,degree,pagerank,betweenness,closeness"
    assert len(lines) == 5


def test_buildnet_fractional_toy(workdir):
    out = workdir / "net.tsv"
    r = run("buildnet", "--papers", str(workdir / "papers.csv"),
            "--paper-meta", str(workdir / "paper_meta.csv"),
            "--scheme", "fractional", "--output", str(out))
    assert r.returncode == 0, r.stderr
    rows = {}
    for line in out.read_text().splitlines():
        u, v, w = line.split("\t")
        rows[(u, v)] = float(w)
    # p1 {a,b,c} fractional 0.5 each pair; p2 {a,b} adds 1.0; p3 solo
    assert rows == {("a", "b"): 1.5, ("a", "c"): 0.5, ("b", "c"): 0.5}


def test_buildnet_year_filter(workdir):
    out = workdir / "net2.tsv"
    r = run("buildnet", "--papers", str(workdir / "papers.csv"),
            "--paper-meta", str(workdir / "paper_meta.csv"),
            "--scheme", "full", "--year-min", "2000", "--output", str(out))
    assert r.returncode == 0
    rows = [l.split("\t") for l in out.read_text().splitlines()]
    assert len(rows) == 3 and all(r[2] == "1" for r in rows)  # only p1 kept


def test_distributions_pipeline(workdir):
    out = workdir / "dist.csv"
    r = run("distributions", "--input", str(workdir / "net.tsv")
            if (workdir / "net.tsv").exists() else str(workdir / "tree.tsv"),
            "--authors", str(workdir / "authors.csv"),
            "--expr", "ABS_DIFF(birth_year)", "--bin-width", "10",
            "--output", str(out))
    assert r.returncode == 0, r.stderr
    assert out.read_text().startswith("bin_low,bin_high,skeleton_weight,remainder_weight")


def test_distributions_same_category(workdir):
    out = workdir / "dist_same.csv"
    r = run("distributions", "--input", str(workdir / "tree.tsv"),
            "--authors", str(workdir / "authors.csv"),
            "--expr", "SAME(gender)", "--output", str(out))
    assert r.returncode == 0, r.stderr
    assert out.read_text().startswith("category,skeleton_weight,remainder_weight")


def test_generate_deterministic_bytes(workdir):
    a, b = workdir / "g1.tsv", workdir / "g2.tsv"
    for out in (a, b):
        r = run("generate", "--kind", "tree_of_cliques", "--cliques", "5",
                "--seed", "1", "--output", str(out))
        assert r.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_env_seed_override(workdir):
    out1, out2 = workdir / "e1.csv", workdir / "e2.csv"
    r = run("convexity", "--input", str(workdir / "toc.tsv"), "--runs", "5",
            "--output", str(out1), env={"CONVEXA_SEED": "123"})
    assert r.returncode == 0
    meta = json.loads((workdir / "e1.csv.meta.json").read_text())
    assert meta["config"]["seed"] == 123
    # explicit flag beats the env var
    r = run("convexity", "--input", str(workdir / "toc.tsv"), "--runs", "5",
            "--seed", "9", "--output", str(out2), env={"CONVEXA_SEED": "123"})
    meta = json.loads((workdir / "e2.csv.meta.json").read_text())
    assert meta["config"]["seed"] == 9


def test_json_format(workdir):
    out = workdir / "conv.json"
    r = run("convexity", "--input", str(workdir / "c4.tsv"), "--format", "json",
            "--output", str(out))
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["x"] == 0.75
    assert len(doc["profile"]) == 4


def test_stats_subcommand(workdir):
    out = workdir / "stats.csv"
    r = run("stats", "--input", str(workdir / "c4.tsv"), "--runs", "20",
            "--seed", "3", "--output", str(out))
    assert r.returncode == 0
    text = out.read_text()
    assert "convexity,0.75" in text
    assert "assortativity,NA" in text


def test_backbone_subcommand(workdir):
    out = workdir / "bb.tsv"
    r = run("backbone", "--input", str(workdir / "toc.tsv"), "--kind", "mst",
            "--output", str(out))
    assert r.returncode == 0
    flagged = [l for l in out.read_text().splitlines() if l.endswith("\t1")]
    meta = json.loads((workdir / "bb.tsv.meta.json").read_text())
    assert len(flagged) == meta["config"]["m"]
