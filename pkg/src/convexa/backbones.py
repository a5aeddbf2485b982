"""Rival backbones: maximum spanning tree, top-m betweenness / embeddedness.

Backbones are edge subsets over the original node universe; the top-m
variants may be disconnected (their %LCC is part of the reported stats).
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import ConvexaError, DisconnectedError, InputError
from .graph import Graph, is_connected
from .skeleton import TieBreak


class BackboneKind(Enum):
    MAX_SPANNING_TREE = "max_spanning_tree"
    HIGH_BETWEENNESS = "high_betweenness"
    HIGH_EMBEDDEDNESS = "high_embeddedness"
    CONVEX_SKELETON = "convex_skeleton"


@dataclass(frozen=True)
class Backbone:
    kind: BackboneKind
    edges: frozenset  # edge positions in the source graph


def maximum_spanning_tree(
    g: Graph, tie_break: TieBreak = TieBreak.LEX_SMALLEST, seed: int = 0
) -> Backbone:
    """Kruskal over edges sorted by descending weight, cycle-skipping."""
    if not is_connected(g):
        raise DisconnectedError("spanning tree requires a connected graph")
    if tie_break is TieBreak.RANDOM:
        # random order within equal-weight groups
        rng = np.random.default_rng(seed)
        perm = rng.permutation(g.m)
        order = perm[np.argsort(-g.weights[perm], kind="stable")]
    else:
        order = np.lexsort((g.edge_idx[:, 1], g.edge_idx[:, 0], -g.weights))
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for e in order:
        u, v = int(g.edge_idx[e, 0]), int(g.edge_idx[e, 1])
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append(int(e))
            if len(chosen) == g.n - 1:
                break
    return Backbone(BackboneKind.MAX_SPANNING_TREE, frozenset(chosen))


def edge_betweenness(g: Graph) -> dict:
    """Exact geodesic betweenness per edge, unordered pairs, per component."""
    indptr, indices, edge_id = g.csr
    scores = _kernels.brandes_edge(indptr, indices, edge_id, g.n, g.m)
    return {g.edge_ids(e): float(scores[e]) for e in range(g.m)}


def embeddedness(g: Graph, edge) -> float:
    """Neighborhood-overlap tie strength |N(u) ∩ N(v)| / |N(u) ∪ N(v) − {u,v}|."""
    u, v = edge
    e = g.edge_pos(u, v)
    return float(_embeddedness_all(g)[e])


def _embeddedness_all(g: Graph) -> np.ndarray:
    indptr, indices, _ = g.csr
    eu = g.edge_idx[:, 0].astype(np.int32)
    ev = g.edge_idx[:, 1].astype(np.int32)
    cn = _kernels.common_neighbors(indptr, indices, eu, ev)
    deg = g.degrees
    # |N(u) ∪ N(v) − {u,v}| = deg(u) + deg(v) − 2 − cn
    denom = deg[eu] + deg[ev] - 2 - cn
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(denom > 0, cn / denom, 0.0)


def embeddedness_scores(g: Graph) -> dict:
    vals = _embeddedness_all(g)
    return {g.edge_ids(e): float(vals[e]) for e in range(g.m)}


def top_m_edge_backbone(
    g: Graph,
    scores: dict,
    m: int,
    kind: BackboneKind = BackboneKind.HIGH_BETWEENNESS,
    tie_break: TieBreak = TieBreak.LEX_SMALLEST,
    seed: int = 0,
) -> Backbone:
    """The m highest-scoring edges; ties broken lexicographically or at random."""
    if m < 1 or m > g.m:
        raise ConvexaError(f"m = {m} out of range 1 .. {g.m}")
    vals = np.empty(g.m)
    for edge, s in scores.items():
        vals[g.edge_pos(*edge)] = s
    if len(scores) != g.m:
        raise InputError("scores must cover every edge exactly once")
    if tie_break is TieBreak.RANDOM:
        rng = np.random.default_rng(seed)
        jitter = rng.permutation(g.m)
        order = np.lexsort((jitter, -vals))
    else:
        order = np.lexsort((g.edge_idx[:, 1], g.edge_idx[:, 0], -vals))
    return Backbone(kind, frozenset(int(e) for e in order[:m]))


def backbone_graph(g: Graph, b: Backbone) -> Graph:
    return g.subgraph_with_edges(b.edges)
