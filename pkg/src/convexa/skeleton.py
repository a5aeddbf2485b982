"""Greedy convex-skeleton extraction by clustering-maximizing edge removal.

One edge is removed per iteration: among all non-bridge edges, the one
whose hypothetical removal maximizes the chosen clustering objective
(ties broken lexicographically by default).  The loop stops as soon as
every biconnected block is a clique; a spanning tree is always reachable,
so termination is guaranteed.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import ConvexaError, DisconnectedError, InputError
from .graph import Graph, biconnected_edge_blocks, build_csr, is_connected


class Objective(Enum):
    GLOBAL_TRANSITIVITY = "global_transitivity"
    AVERAGE_LOCAL = "average_local"


class TieBreak(Enum):
    LEX_SMALLEST = "lex_smallest"
    RANDOM = "random"


@dataclass(frozen=True)
class SkeletonResult:
    kept: frozenset  # edge positions in the source graph
    removed: tuple  # ordered ((u_id, v_id), objective value after removal)
    objective: Objective
    source_m: int  # edge count of the graph the skeleton was extracted from


def _blocks_info(n, edge_idx, alive_pos):
    """Bridges among alive edges and whether every block is a clique."""
    sub = edge_idx[alive_pos]
    blocks = biconnected_edge_blocks(n, sub)
    bridge = set()
    all_cliques = True
    for blk in blocks:
        if len(blk) == 1:
            bridge.add(int(alive_pos[blk[0]]))
            continue
        nodes = set()
        for e in blk:
            nodes.add(int(sub[e, 0]))
            nodes.add(int(sub[e, 1]))
        k = len(nodes)
        if len(blk) != k * (k - 1) // 2:
            all_cliques = False
    return bridge, all_cliques


def _objective_after_removal(n, edge_idx, alive_pos, objective):
    """Objective value of the graph after removing each alive edge."""
    sub = edge_idx[alive_pos]
    indptr, indices, _ = build_csr(n, sub)
    deg = np.bincount(sub.ravel(), minlength=n).astype(np.int64)
    eu = sub[:, 0].astype(np.int32)
    ev = sub[:, 1].astype(np.int32)
    cn = _kernels.common_neighbors(indptr, indices, eu, ev)
    if objective is Objective.GLOBAL_TRANSITIVITY:
        tri3 = int(cn.sum())  # 3 * number of triangles
        triples = int((deg * (deg - 1) // 2).sum())
        new_tri3 = tri3 - 3 * cn
        new_triples = triples - (deg[eu] - 1) - (deg[ev] - 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.where(new_triples > 0, new_tri3 / new_triples, 0.0)
        return vals
    # AVERAGE_LOCAL: mean over all nodes of 2*t_x / (d_x (d_x - 1))
    pairs = deg * (deg - 1) / 2.0
    inv_pairs = np.where(pairs > 0, 1.0 / np.where(pairs > 0, pairs, 1.0), 0.0)
    tri_node = np.zeros(n)  # triangles incident to each node
    np.add.at(tri_node, eu, cn)
    np.add.at(tri_node, ev, cn)
    tri_node /= 2.0
    local = tri_node * inv_pairs
    total = local.sum()
    # removing (u,v): u and v lose cn triangles and one degree; each common
    # neighbor w loses one triangle
    w_loss = _kernels.local_weight_sums(indptr, indices, inv_pairs, eu, ev)
    du, dv = deg[eu], deg[ev]
    tu = tri_node[eu] - cn
    tv = tri_node[ev] - cn
    denom_u = np.maximum((du - 1) * (du - 2) / 2.0, 1.0)
    denom_v = np.maximum((dv - 1) * (dv - 2) / 2.0, 1.0)
    new_u = np.where(du - 1 >= 2, tu / denom_u, 0.0)
    new_v = np.where(dv - 1 >= 2, tv / denom_v, 0.0)
    vals = total - local[eu] - local[ev] - w_loss + new_u + new_v
    return vals / n


def extract_convex_skeleton(
    g: Graph,
    objective: Objective = Objective.GLOBAL_TRANSITIVITY,
    tie_break: TieBreak = TieBreak.LEX_SMALLEST,
    seed: int = 0,
) -> SkeletonResult:
    if not is_connected(g):
        raise DisconnectedError("skeleton extraction requires a connected graph")
    rng = np.random.default_rng(seed) if tie_break is TieBreak.RANDOM else None
    alive = np.ones(g.m, dtype=bool)
    removed = []
    while True:
        alive_pos = np.flatnonzero(alive)
        bridge, all_cliques = _blocks_info(g.n, g.edge_idx, alive_pos)
        if all_cliques:
            break
        vals = _objective_after_removal(g.n, g.edge_idx, alive_pos, objective)
        removable = np.array([int(p) not in bridge for p in alive_pos])
        vals = np.where(removable, vals, -np.inf)
        best = vals.max()
        if rng is None:
            pick = int(np.argmax(vals))  # first max = lexicographically smallest edge
        else:
            cands = np.flatnonzero(vals == best)
            pick = int(cands[rng.integers(len(cands))])
        pos = int(alive_pos[pick])
        alive[pos] = False
        removed.append((g.edge_ids(pos), float(best)))
    return SkeletonResult(
        kept=frozenset(int(p) for p in np.flatnonzero(alive)),
        removed=tuple(removed),
        objective=objective,
        source_m=g.m,
    )


def _check_match(g, sk):
    if sk.source_m != g.m or len(sk.kept) + len(sk.removed) != g.m:
        raise InputError("skeleton does not match this graph")
    for p in sk.kept:
        if not 0 <= p < g.m:
            raise InputError("skeleton does not match this graph")


def skeleton_graph(g: Graph, sk: SkeletonResult) -> Graph:
    _check_match(g, sk)
    return g.subgraph_with_edges(sk.kept)


def remainder(g: Graph, sk: SkeletonResult) -> Graph:
    """Original nodes with exactly the removed edges (original weights)."""
    _check_match(g, sk)
    return g.subgraph_with_edges(set(range(g.m)) - sk.kept)


def retained_weight_fraction(g: Graph, sk: SkeletonResult):
    """(kept-edge fraction, kept-weight fraction)."""
    _check_match(g, sk)
    if g.m == 0:
        raise ConvexaError("graph has no edges")
    kept = sorted(sk.kept)
    return len(kept) / g.m, float(g.weights[kept].sum()) / g.total_weight
