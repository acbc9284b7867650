"""Centrality and community-quality measures: Katz, modularity, Jaccard"""
from typing import Iterable, Sequence

import numpy as np

from src.models.graph import Graph, node_set
from src.models.partition import Partition
from src.models.results import KatzParams
from src.utils.errors import NumericalError, ValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Fraction of 1/lambda_max an attenuation factor may reach
ALPHA_SAFETY = 0.9
# Jaccard rows evaluated per sparse product
JACCARD_CHUNK = 512


def estimate_spectral_radius(g: Graph, max_iter: int = 2000, tol: float = 1e-12) -> float:
    """
    Largest adjacency eigenvalue by power iteration on A + I

    The shift makes the iteration matrix primitive on every component, so the
    bipartite +/- lambda pairing cannot stall convergence.
    """
    if g.edge_count == 0:
        return 0.0
    a = g.adjacency.astype(float)
    x = np.ones(g.node_count) / np.sqrt(g.node_count)
    estimate = 0.0
    for _ in range(max_iter):
        y = a @ x + x
        rayleigh = float(x @ y)
        x = y / np.linalg.norm(y)
        if abs(rayleigh - estimate) < tol * max(1.0, rayleigh):
            estimate = rayleigh
            break
        estimate = rayleigh
    return estimate - 1.0


def effective_alpha(g: Graph, requested: float) -> float:
    """min(requested, 0.9 / lambda_max(A)); the clamp is logged"""
    radius = estimate_spectral_radius(g)
    if radius <= 0:
        return requested
    ceiling = ALPHA_SAFETY / radius
    if requested > ceiling:
        logger.info(
            f"Katz alpha {requested:g} infeasible for lambda_max ~ {radius:.6g}; "
            f"clamped to {ceiling:.6g}"
        )
        return ceiling
    return requested


def katz_centrality(g: Graph, params: KatzParams = KatzParams()) -> np.ndarray:
    """
    Katz centrality sum_k alpha^k (A^k 1), by fixed-point iteration c <- alpha A (c + 1)

    Args:
        g: Graph
        params: attenuation, iteration cap and max-norm tolerance

    Returns:
        Non-negative centrality per vertex

    Raises:
        NumericalError: no convergence within max_iter (carries the last residual)
    """
    n = g.node_count
    c = np.zeros(n)
    if g.edge_count == 0:
        return c
    alpha = effective_alpha(g, params.alpha)
    a = g.adjacency.astype(float)
    residual = np.inf
    for _ in range(params.max_iter):
        nxt = alpha * (a @ (c + 1.0))
        residual = float(np.max(np.abs(nxt - c)))
        c = nxt
        if residual < params.tol:
            return c
    raise NumericalError(
        f"Katz centrality did not converge in {params.max_iter} iterations "
        f"(residual {residual:.3e})",
        residual=residual
    )


def modularity(g: Graph, p: Partition) -> float:
    """
    Newman modularity Q = sum_c [ L_c / m - (d_c / 2m)^2 ]

    Equal to (1/2m) sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j).
    """
    if g.edge_count == 0:
        raise ValidationError("Modularity is undefined for a graph without edges")
    p.validate(g.node_count)
    m = g.edge_count
    labels = p.labels(g.node_count)
    edges = g.edge_array
    lu, lv = labels[edges[:, 0]], labels[edges[:, 1]]
    internal = np.bincount(lu[lu == lv], minlength=len(p)).astype(float)
    degree_sums = np.bincount(labels, weights=g.degrees.astype(float), minlength=len(p))
    return float(np.sum(internal / m - (degree_sums / (2.0 * m)) ** 2))


def modularity_contribution(g: Graph, nodes: Iterable[int]) -> float:
    """Term L_c / m - (d_c / 2m)^2 of one community, for incremental tracking"""
    if g.edge_count == 0:
        raise ValidationError("Modularity is undefined for a graph without edges")
    mask = np.zeros(g.node_count, dtype=bool)
    mask[list(nodes)] = True
    m = g.edge_count
    edges = g.edge_array
    internal = float(np.count_nonzero(mask[edges[:, 0]] & mask[edges[:, 1]]))
    degree_sum = float(g.degrees[mask].sum())
    return internal / m - (degree_sum / (2.0 * m)) ** 2


def jaccard_nodes(g: Graph, u: int, v: int) -> float:
    """|N(u) & N(v)| / |N(u) | N(v)|, open neighbourhoods; 0 when both are empty"""
    nu, nv = set(g.neighbors[u]), set(g.neighbors[v])
    union = len(nu | nv)
    if union == 0:
        return 0.0
    return len(nu & nv) / union


def jaccard_communities(g: Graph, U: Sequence[int], V: Sequence[int]) -> float:
    """Mean node Jaccard index over all |U| * |V| ordered pairs"""
    U, V = list(node_set(U, g.node_count)), list(node_set(V, g.node_count))
    if not U or not V:
        raise ValidationError("Jaccard similarity of communities requires nonempty sets")
    a = g.adjacency
    deg = g.degrees.astype(float)
    a_v_t = a[V].T.tocsc()
    dv = deg[V]
    total = 0.0
    for start in range(0, len(U), JACCARD_CHUNK):
        rows = U[start:start + JACCARD_CHUNK]
        inter = (a[rows] @ a_v_t).toarray().astype(float)
        union = deg[rows][:, None] + dv[None, :] - inter
        ratio = np.divide(inter, union, out=np.zeros_like(inter), where=union > 0)
        total += float(ratio.sum())
    return total / (len(U) * len(V))
