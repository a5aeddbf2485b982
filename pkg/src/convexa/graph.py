"""Immutable undirected graph with BFS, component and block primitives.

Node identifiers are opaque strings mapped once to dense integer indices
in sorted-identifier order, so index order doubles as the lexicographic
tie-break order used throughout the library.  Edges are canonical
(smaller-index, larger-index) pairs; duplicate records merge by summing
weights and self-loops are dropped (counted).
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import InputError

log = logging.getLogger(__name__)

#: distance value for nodes not reachable from the source
UNREACHABLE = math.inf


@dataclass(frozen=True)
class DistanceRow:
    source: str
    dist: dict  # node id -> int hop count, or UNREACHABLE


@dataclass(frozen=True)
class Graph:
    ids: tuple  # node identifiers, sorted
    edge_idx: np.ndarray  # (m, 2) int32, u < v, lexsorted
    weights: np.ndarray  # (m,) float64, all > 0
    self_loops_dropped: int = 0

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self):
        return len(self.ids)

    @property
    def m(self):
        return len(self.edge_idx)

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.ids)}

    @cached_property
    def edge_lookup(self):
        """(u_idx, v_idx) with u < v -> edge position."""
        return {(int(u), int(v)): e for e, (u, v) in enumerate(self.edge_idx)}

    def edge_ids(self, e):
        """Edge position -> (u_id, v_id)."""
        u, v = self.edge_idx[e]
        return self.ids[u], self.ids[v]

    def edge_pos(self, u, v):
        """Node-identifier pair -> edge position (raises on unknown edge)."""
        try:
            iu, iv = self.index[u], self.index[v]
        except KeyError as exc:
            raise InputError(f"unknown node {exc.args[0]!r}") from None
        key = (iu, iv) if iu < iv else (iv, iu)
        if key not in self.edge_lookup:
            raise InputError(f"unknown edge ({u!r}, {v!r})")
        return self.edge_lookup[key]

    @cached_property
    def degrees(self):
        return np.bincount(self.edge_idx.ravel(), minlength=self.n).astype(np.int64)

    @cached_property
    def csr(self):
        """(indptr, indices, edge_id) adjacency; indices sorted per node."""
        return build_csr(self.n, self.edge_idx)

    @cached_property
    def dist_matrix(self):
        """All-pairs hop distances, int32, -1 for unreachable."""
        indptr, indices, _ = self.csr
        return _kernels.bfs_all(indptr, indices, self.n)

    @cached_property
    def total_weight(self):
        return float(self.weights.sum())

    def subgraph_with_edges(self, edge_positions):
        """Same node universe, restricted edge set, original weights."""
        pos = np.asarray(sorted(edge_positions), dtype=np.int64)
        return Graph(self.ids, self.edge_idx[pos].copy(), self.weights[pos].copy())


def build_csr(n, edge_idx):
    m = len(edge_idx)
    if m == 0:
        return (np.zeros(n + 1, np.int64), np.empty(0, np.int32), np.empty(0, np.int32))
    heads = np.concatenate([edge_idx[:, 0], edge_idx[:, 1]])
    tails = np.concatenate([edge_idx[:, 1], edge_idx[:, 0]])
    eids = np.concatenate([np.arange(m), np.arange(m)])
    order = np.lexsort((tails, heads))
    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(heads, minlength=n), out=indptr[1:])
    return indptr, tails[order].astype(np.int32), eids[order].astype(np.int32)


def build_graph(edge_records, isolated_nodes=()):
    """Build a graph from (u, v) or (u, v, weight) records.

    Self-loops are dropped (with a warning), duplicate pairs merge by
    summing weights, and nonpositive weights are rejected.
    """
    nodes = set(str(x) for x in isolated_nodes)
    merged = {}
    loops = 0
    for rec in edge_records:
        if len(rec) == 3:
            u, v, w = rec
            w = float(w)
        else:
            u, v = rec
            w = 1.0
        u, v = str(u), str(v)
        if w <= 0 or not math.isfinite(w):
            raise InputError(f"nonpositive weight in edge record ({u!r}, {v!r}, {w})")
        nodes.add(u)
        nodes.add(v)
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        merged[key] = merged.get(key, 0.0) + w
    if loops:
        log.warning("dropped %d self-loop record(s)", loops)
    ids = tuple(sorted(nodes))
    index = {v: i for i, v in enumerate(ids)}
    if merged:
        pairs = np.array(
            [(index[u], index[v]) for u, v in merged], dtype=np.int32
        )
        weights = np.array(list(merged.values()), dtype=np.float64)
        order = np.lexsort((pairs[:, 1], pairs[:, 0]))
        pairs, weights = pairs[order], weights[order]
    else:
        pairs = np.empty((0, 2), np.int32)
        weights = np.empty(0, np.float64)
    return Graph(ids, pairs, weights, self_loops_dropped=loops)


# ---------------------------------------------------------------------------
# traversal / decomposition

def bfs_distances(g, source):
    if source not in g.index:
        raise InputError(f"unknown source node {source!r}")
    indptr, indices, _ = g.csr
    dist = _kernels.bfs_one(indptr, indices, g.n, g.index[source])
    return DistanceRow(
        source=source,
        dist={
            g.ids[i]: (int(dist[i]) if dist[i] >= 0 else UNREACHABLE)
            for i in range(g.n)
        },
    )


def connected_components(g):
    """Node partition, largest component first, ties by smallest member id."""
    labels = component_labels(g)
    comps = {}
    for i, lab in enumerate(labels):
        comps.setdefault(lab, set()).add(g.ids[i])
    return sorted(comps.values(), key=lambda c: (-len(c), min(c)))


def component_labels(g):
    """Array of component labels (root index), via union-find over edges."""
    parent = np.arange(g.n)

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for u, v in g.edge_idx:
        ru, rv = find(int(u)), find(int(v))
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return np.array([find(i) for i in range(g.n)])


def is_connected(g):
    return g.n <= 1 or len(np.unique(component_labels(g))) == 1


def biconnected_edge_blocks(n, edge_idx):
    """Blocks (biconnected components) as lists of edge positions.

    Iterative Hopcroft-Tarjan; every edge lands in exactly one block,
    bridges become singleton blocks.
    """
    m = len(edge_idx)
    adj = [[] for _ in range(n)]
    for e in range(m):
        u, v = int(edge_idx[e, 0]), int(edge_idx[e, 1])
        adj[u].append((v, e))
        adj[v].append((u, e))
    disc = [-1] * n
    low = [0] * n
    blocks = []
    estack = []
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent_eid, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == parent_eid:
                    continue
                if disc[w] == -1:
                    estack.append(eid)
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                elif disc[w] < disc[v]:
                    estack.append(eid)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    if low[v] >= disc[u]:
                        block = []
                        while True:
                            eid = estack.pop()
                            block.append(eid)
                            if eid == parent_eid:
                                break
                        blocks.append(block)
                    if low[v] < low[u]:
                        low[stack[-1][0]] = low[v]
    return blocks


def biconnected_components(g):
    """Blocks as frozensets of (u_id, v_id) edges."""
    blocks = biconnected_edge_blocks(g.n, g.edge_idx)
    return [frozenset(g.edge_ids(e) for e in blk) for blk in blocks]


def bridges(g):
    """Edge positions of all bridges (singleton blocks)."""
    return {blk[0] for blk in biconnected_edge_blocks(g.n, g.edge_idx) if len(blk) == 1}


def is_bridge(g, edge):
    """True iff removing the edge increases the component count."""
    u, v = edge
    e = g.edge_pos(u, v)
    return e in bridges(g)


# ---------------------------------------------------------------------------
# edge-list TSV I/O

def read_edge_tsv(path):
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) == 2:
                records.append((parts[0], parts[1]))
            elif len(parts) == 3:
                try:
                    w = float(parts[2])
                except ValueError:
                    raise InputError(f"{path}:{lineno}: bad weight {parts[2]!r}")
                records.append((parts[0], parts[1], w))
            else:
                raise InputError(f"{path}:{lineno}: expected 2 or 3 tab-separated fields")
    return build_graph(records)


def format_weight(w):
    return repr(w) if w != int(w) else str(int(w))


def write_edge_tsv(g, fh, flags=None, flag_name="in_backbone"):
    """Write `u\tv\tweight` lines; with `flags` adds a 0/1 membership column."""
    if flags is not None:
        fh.write(f"# u\tv\tweight\t{flag_name}\n")
    for e in range(g.m):
        u, v = g.edge_ids(e)
        w = format_weight(float(g.weights[e]))
        if flags is None:
            fh.write(f"{u}\t{v}\t{w}\n")
        else:
            fh.write(f"{u}\t{v}\t{w}\t{1 if e in flags else 0}\n")
