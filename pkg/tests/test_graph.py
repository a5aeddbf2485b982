import math

import numpy as np
import pytest

from convexa import (
    UNREACHABLE,
    InputError,
    bfs_distances,
    biconnected_components,
    build_graph,
    connected_components,
    is_bridge,
    read_edge_tsv,
    write_edge_tsv,
)
from oracles import random_graph


def test_duplicate_records_merge_by_weight_sum():
    g = build_graph([("a", "b"), ("b", "a")])
    assert g.m == 1
    assert g.weights[0] == 2.0


def test_self_loops_dropped_with_count():
    g = build_graph([("a", "a")])
    assert g.m == 0
    assert g.n == 1
    assert g.self_loops_dropped == 1


def test_weighted_construction():
    g = build_graph([("a", "b", 0.5), ("b", "c", 1.5)])
    assert g.n == 3 and g.m == 2
    assert g.total_weight == 2.0


def test_nonpositive_weight_rejected_naming_record():
    with pytest.raises(InputError, match="'a'.*'b'"):
        build_graph([("a", "b", 0.0)])
    with pytest.raises(InputError):
        build_graph([("x", "y", -2.0)])


def test_isolated_nodes_included():
    g = build_graph([("a", "b")], isolated_nodes=["z"])
    assert set(g.ids) == {"a", "b", "z"}


def test_bfs_path():
    g = build_graph([("a", "b"), ("b", "c")])
    assert bfs_distances(g, "a").dist == {"a": 0, "b": 1, "c": 2}


def test_bfs_clique():
    g = build_graph([(u, v) for u in "abcd" for v in "abcd" if u < v])
    row = bfs_distances(g, "c").dist
    assert row == {"a": 1, "b": 1, "c": 0, "d": 1}


def test_bfs_unreachable():
    g = build_graph([("a", "b"), ("c", "d")])
    row = bfs_distances(g, "a").dist
    assert row["c"] is UNREACHABLE and row["d"] is UNREACHABLE


def test_bfs_unknown_source():
    g = build_graph([("a", "b")])
    with pytest.raises(InputError):
        bfs_distances(g, "zzz")


def test_components_ordering():
    g = build_graph([("a", "b"), ("b", "c")])
    assert connected_components(g) == [{"a", "b", "c"}]
    g2 = build_graph([("a", "b"), ("c", "d")])
    assert connected_components(g2) == [{"a", "b"}, {"c", "d"}]
    g3 = build_graph([], isolated_nodes="pqrst")
    comps = connected_components(g3)
    assert len(comps) == 5 and all(len(c) == 1 for c in comps)
    # ties broken by smallest member
    assert comps[0] == {"p"}


def test_biconnected_cycle_single_block():
    c4 = build_graph([("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
    blocks = biconnected_components(c4)
    assert len(blocks) == 1 and len(blocks[0]) == 4


def test_biconnected_path_singletons():
    g = build_graph([("a", "b"), ("b", "c")])
    blocks = biconnected_components(g)
    assert sorted(len(b) for b in blocks) == [1, 1]


def test_biconnected_triangle_with_pendant():
    g = build_graph([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    blocks = sorted(biconnected_components(g), key=len)
    assert blocks[0] == frozenset({("c", "d")})
    assert blocks[1] == frozenset({("a", "b"), ("b", "c"), ("a", "c")})
    # cut vertices found by exhaustive node removal agree: only c
    for drop in "abd":
        rest = [e for e in [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")] if drop not in e]
        kept_nodes = set("abcd") - {drop}
        sub = build_graph(rest, isolated_nodes=kept_nodes)
        assert len(connected_components(sub)) == 1
    sub = build_graph([("a", "b")], isolated_nodes={"a", "b", "d"})
    assert len(connected_components(sub)) == 2  # removing c disconnects


def test_is_bridge():
    path = build_graph([("a", "b"), ("b", "c")])
    assert is_bridge(path, ("a", "b"))
    c4 = build_graph([("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
    assert not any(is_bridge(c4, c4.edge_ids(e)) for e in range(c4.m))
    paw = build_graph([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    assert is_bridge(paw, ("c", "d"))
    with pytest.raises(InputError):
        is_bridge(paw, ("a", "d"))


def test_block_edge_counts_partition_edges():
    rng = np.random.default_rng(7)
    for _ in range(25):
        g = random_graph(rng, int(rng.integers(2, 15)), 0.3)
        blocks = biconnected_components(g)
        assert sum(len(b) for b in blocks) == g.m
        # a bridge is exactly a singleton block
        singles = {next(iter(b)) for b in blocks if len(b) == 1}
        for e in range(g.m):
            assert is_bridge(g, g.edge_ids(e)) == (g.edge_ids(e) in singles)


def test_bfs_triangle_inequality_sampled():
    rng = np.random.default_rng(3)
    g = random_graph(rng, 12, 0.3, connected=True)
    rows = {v: bfs_distances(g, v).dist for v in g.ids}
    ids = list(g.ids)
    for _ in range(200):
        a, b, c = rng.choice(ids, 3)
        assert rows[a][c] <= rows[a][b] + rows[b][c]


def test_component_sizes_sum_to_n():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = random_graph(rng, int(rng.integers(1, 20)), 0.15)
        assert sum(len(c) for c in connected_components(g)) == g.n


def test_tsv_round_trip(tmp_path):
    g = build_graph([("a", "b", 2.5), ("b", "c")])
    p = tmp_path / "net.tsv"
    import io

    buf = io.StringIO()
    write_edge_tsv(g, buf)
    p.write_text("# comment line\n" + buf.getvalue())
    g2 = read_edge_tsv(p)
    assert g2.ids == g.ids
    assert np.array_equal(g2.edge_idx, g.edge_idx)
    assert np.array_equal(g2.weights, g.weights)


def test_tsv_bad_weight(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("a\tb\tnotanumber\n")
    with pytest.raises(InputError):
        read_edge_tsv(p)
