"""Descriptive network statistics and rank correlations between centralities."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import rankdata

from . import _kernels
from .backbones import Backbone, backbone_graph
from .centrality import Measure, compute
from .convexity import convexity
from .errors import ConvexaError, InputError
from .graph import Graph, component_labels


@dataclass(frozen=True)
class StatsRecord:
    nodes: int
    edges: int
    pct_lcc: float
    mean_degree: float
    mean_distance: float  # within the largest connected component
    assortativity: Optional[float]  # None when undefined (zero degree variance)
    clustering: float
    convexity: float


@dataclass(frozen=True)
class CorrelationCell:
    row_measure: Measure
    col_measure: Measure
    rho: float
    tau: float


MEASURES = (Measure.DEGREE, Measure.PAGERANK, Measure.BETWEENNESS, Measure.CLOSENESS)


def clustering_global(g: Graph) -> float:
    """Transitivity: 3 * triangles / connected triples (0 when no triples)."""
    if g.m == 0:
        return 0.0
    indptr, indices, _ = g.csr
    cn = _kernels.common_neighbors(
        indptr, indices, g.edge_idx[:, 0].astype(np.int32), g.edge_idx[:, 1].astype(np.int32)
    )
    deg = g.degrees
    triples = int((deg * (deg - 1) // 2).sum())
    return float(cn.sum()) / triples if triples else 0.0


def clustering_avg_local(g: Graph) -> float:
    """Mean local clustering over all nodes; degree-<2 nodes contribute 0."""
    if g.n == 0:
        return 0.0
    if g.m == 0:
        return 0.0
    indptr, indices, _ = g.csr
    eu = g.edge_idx[:, 0].astype(np.int32)
    ev = g.edge_idx[:, 1].astype(np.int32)
    cn = _kernels.common_neighbors(indptr, indices, eu, ev)
    tri = np.zeros(g.n)
    np.add.at(tri, eu, cn)
    np.add.at(tri, ev, cn)
    tri /= 2.0
    deg = g.degrees
    pairs = deg * (deg - 1) / 2.0
    local = np.where(pairs > 0, tri / np.where(pairs > 0, pairs, 1.0), 0.0)
    return float(local.mean())


def assortativity(g: Graph) -> Optional[float]:
    """Pearson correlation of endpoint degrees over both edge orientations."""
    if g.m == 0:
        raise ConvexaError("assortativity is undefined on an edgeless graph")
    deg = g.degrees
    x = np.concatenate([deg[g.edge_idx[:, 0]], deg[g.edge_idx[:, 1]]]).astype(float)
    y = np.concatenate([deg[g.edge_idx[:, 1]], deg[g.edge_idx[:, 0]]]).astype(float)
    if np.ptp(x) == 0:
        return None
    return float(np.corrcoef(x, y)[0, 1])


def largest_component_graph(g: Graph):
    """(subgraph induced on the LCC, LCC node fraction)."""
    labels = component_labels(g)
    vals, counts = np.unique(labels, return_counts=True)
    best = counts.max()
    # ties: smallest member id = smallest root index (ids are sorted)
    lab = min(int(v) for v, c in zip(vals, counts) if c == best)
    keep = np.flatnonzero(labels == lab)
    remap = {int(old): new for new, old in enumerate(keep)}
    keep_set = set(remap)
    sub_edges = []
    sub_w = []
    for e in range(g.m):
        u, v = int(g.edge_idx[e, 0]), int(g.edge_idx[e, 1])
        if u in keep_set:
            sub_edges.append((remap[u], remap[v]))
            sub_w.append(g.weights[e])
    ids = tuple(g.ids[i] for i in keep)
    edge_idx = (
        np.array(sub_edges, np.int32) if sub_edges else np.empty((0, 2), np.int32)
    )
    sub = Graph(ids, edge_idx, np.array(sub_w, np.float64))
    return sub, len(keep) / g.n


def mean_distance_lcc(g: Graph) -> float:
    lcc, _ = largest_component_graph(g)
    if lcc.n < 2:
        return 0.0
    D = lcc.dist_matrix
    iu = np.triu_indices(lcc.n, k=1)
    return float(D[iu].mean())


def descriptive_stats(g: Graph, convexity_runs: int = 100, *, seed: int = 0) -> StatsRecord:
    lcc, frac = largest_component_graph(g)
    if lcc.n >= 2:
        conv = convexity(lcc, runs=convexity_runs, seed=seed).x
    else:
        conv = 1.0
    try:
        assort = assortativity(g)
    except ConvexaError:
        assort = None
    return StatsRecord(
        nodes=g.n,
        edges=g.m,
        pct_lcc=100.0 * frac,
        mean_degree=2.0 * g.m / g.n if g.n else 0.0,
        mean_distance=mean_distance_lcc(g),
        assortativity=assort,
        clustering=clustering_global(g),
        convexity=conv,
    )


def _paired_arrays(x: dict, y: dict):
    if set(x) != set(y):
        raise InputError("value mappings must have identical key sets")
    if len(x) < 2:
        raise ConvexaError("need at least 2 keys for rank correlation")
    keys = sorted(x)
    return (
        np.array([x[k] for k in keys], float),
        np.array([y[k] for k in keys], float),
    )


def spearman_rho(x: dict, y: dict) -> float:
    """Pearson correlation of average ranks (mean ranks for ties).

    Without ties the classical 1 - 6*sum(d^2)/(n(n^2-1)) form is used with
    integer arithmetic, so perfect agreement/reversal score exactly +/-1.
    """
    a, b = _paired_arrays(x, y)
    if np.ptp(a) == 0 or np.ptp(b) == 0:
        raise ConvexaError("rank correlation undefined: zero rank variance")
    ra, rb = rankdata(a), rankdata(b)
    n = len(a)
    if len(np.unique(a)) == n and len(np.unique(b)) == n:
        d2 = int(((ra - rb).astype(np.int64) ** 2).sum())
        return 1.0 - 6.0 * d2 / (n * (n * n - 1))
    return float(np.corrcoef(ra, rb)[0, 1])


def kendall_tau(x: dict, y: dict) -> float:
    """Tau-b (tie-corrected), by exact integer concordance counting."""
    a, b = _paired_arrays(x, y)
    if np.ptp(a) == 0 or np.ptp(b) == 0:
        raise ConvexaError("rank correlation undefined: zero rank variance")
    i, j = np.triu_indices(len(a), k=1)
    da = np.sign(a[i] - a[j])
    db = np.sign(b[i] - b[j])
    prod = da * db
    concordant = int((prod > 0).sum())
    discordant = int((prod < 0).sum())
    n0 = len(i)
    tied_a = int((da == 0).sum())
    tied_b = int((db == 0).sum())
    return (concordant - discordant) / math.sqrt((n0 - tied_a) * (n0 - tied_b))


def correlation_matrix(g: Graph, b: Backbone):
    """4x4 grid: rows = measures on the full graph, columns = on the backbone."""
    sub = backbone_graph(g, b)
    if tuple(sub.ids) != tuple(g.ids):
        raise InputError("backbone node universe must equal the graph's")
    row_vecs = {m: compute(g, m).values for m in MEASURES}
    col_vecs = {m: compute(sub, m).values for m in MEASURES}
    grid = []
    for rm in MEASURES:
        row = []
        for cm in MEASURES:
            row.append(
                CorrelationCell(
                    rm,
                    cm,
                    rho=spearman_rho(row_vecs[rm], col_vecs[cm]),
                    tau=kendall_tau(row_vecs[rm], col_vecs[cm]),
                )
            )
        grid.append(row)
    return grid
