"""Node centralities: degree, PageRank, betweenness, closeness; top-k lists.

All measures are unweighted and work per component, so they stay defined
on disconnected backbones.  PageRank follows the bidirected-edge
construction with uniform teleport; closeness uses the reachable-set
corrected form, which reduces to classical closeness on connected graphs.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .errors import ConvergenceError
from .graph import Graph


class Measure(Enum):
    DEGREE = "degree"
    PAGERANK = "pagerank"
    BETWEENNESS = "betweenness"
    CLOSENESS = "closeness"


@dataclass(frozen=True)
class CentralityVector:
    measure: Measure
    values: dict  # node id -> value
    params: dict = field(default_factory=dict)


def degree_centrality(g: Graph) -> CentralityVector:
    deg = g.degrees
    return CentralityVector(
        Measure.DEGREE, {g.ids[i]: float(deg[i]) for i in range(g.n)}
    )


def pagerank(
    g: Graph, damping: float = 0.85, tol: float = 1e-10, max_iter: int = 1000
) -> CentralityVector:
    """Power iteration on the bidirected graph, dangling mass spread uniformly."""
    n = g.n
    if n == 0:
        return CentralityVector(Measure.PAGERANK, {}, {"damping": damping})
    deg = g.degrees.astype(np.float64)
    dangling = deg == 0
    if g.m:
        eu, ev = g.edge_idx[:, 0], g.edge_idx[:, 1]
        A = sp.csr_matrix(
            (np.ones(2 * g.m), (np.concatenate([eu, ev]), np.concatenate([ev, eu]))),
            shape=(n, n),
        )
    else:
        A = sp.csr_matrix((n, n))
    p = np.full(n, 1.0 / n)
    inv_deg = np.where(dangling, 0.0, 1.0 / np.where(dangling, 1.0, deg))
    residual = None
    for _ in range(max_iter):
        spread = p * inv_deg
        new = (1.0 - damping) / n + damping * (A @ spread + p[dangling].sum() / n)
        residual = float(np.abs(new - p).sum())
        p = new
        if residual < tol:
            return CentralityVector(
                Measure.PAGERANK,
                {g.ids[i]: float(p[i]) for i in range(n)},
                {"damping": damping, "tol": tol},
            )
    raise ConvergenceError(
        f"PageRank did not converge in {max_iter} iterations (residual {residual:g})",
        residual=residual,
    )


def betweenness(g: Graph) -> CentralityVector:
    """Exact Brandes betweenness, unnormalized, unordered pairs, per component."""
    indptr, indices, _ = g.csr
    vals = _kernels.brandes_node(indptr, indices, g.n)
    return CentralityVector(
        Measure.BETWEENNESS, {g.ids[i]: float(vals[i]) for i in range(g.n)}
    )


def closeness(g: Graph) -> CentralityVector:
    """Reachable-set corrected closeness: ((r-1)/(n-1)) * ((r-1)/sum of distances)."""
    n = g.n
    D = g.dist_matrix
    values = {}
    for i in range(n):
        row = D[i]
        reach = row >= 0
        r = int(reach.sum())  # includes i itself
        if r <= 1 or n <= 1:
            values[g.ids[i]] = 0.0
            continue
        total = int(row[reach].sum())
        values[g.ids[i]] = ((r - 1) / (n - 1)) * ((r - 1) / total)
    return CentralityVector(Measure.CLOSENESS, values)


def top_k(vec: CentralityVector, k: int):
    """k highest-valued (node, value) pairs, ties by smallest identifier."""
    if k < 1:
        raise ValueError("k must be positive")
    ranked = sorted(vec.values.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


_MEASURE_FN = {
    Measure.DEGREE: degree_centrality,
    Measure.PAGERANK: pagerank,
    Measure.BETWEENNESS: betweenness,
    Measure.CLOSENESS: closeness,
}


def compute(g: Graph, measure: Measure) -> CentralityVector:
    return _MEASURE_FN[measure](g)
