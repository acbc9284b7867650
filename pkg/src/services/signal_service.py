"""Sample selection, synthetic test signals and flow-measurement ingestion"""
from typing import Optional

import numpy as np
import pandas as pd
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from src.config.settings import config
from src.models.graph import Graph, NodeSet, largest_component, node_set
from src.models.results import FlowSlice
from src.services.kernel_service import laplacian_spectrum
from src.utils.errors import DisconnectedGraphError, NumericalError, ValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)

FLOW_COLUMNS = ("node", "timestamp", "flow")
# Slack on the frequency cutoff so the zero eigenvalue survives rounding
CUTOFF_TOL = 1e-9


def sample_vertices(n: int, count: int, seed: int) -> NodeSet:
    """Uniform draw of `count` distinct vertices, reproducible from `seed`"""
    if not 1 <= count <= n:
        raise ValidationError(f"Cannot draw {count} samples from {n} vertices")
    rng = np.random.default_rng(seed)
    return node_set(rng.choice(n, size=count, replace=False))


def low_pass_signal(g: Graph, f) -> np.ndarray:
    """x = (I + L)^-1 f"""
    f = np.asarray(f, dtype=float)
    if f.shape != (g.node_count,):
        raise ValidationError(f"Input of shape {f.shape} does not match {g.node_count} vertices")
    system = (sp.identity(g.node_count, format="csc") + g.laplacian().astype(float)).tocsc()
    return splu(system).solve(f)


def band_limit(g: Graph, f, cutoff: float) -> np.ndarray:
    """Projection of f onto the Laplacian eigenvectors with eigenvalue <= cutoff"""
    if g.node_count > config.DENSE_EIGEN_LIMIT:
        raise NumericalError(
            f"Band limiting {g.node_count} vertices exceeds the dense eigensolver limit "
            f"({config.DENSE_EIGEN_LIMIT})"
        )
    spec = laplacian_spectrum(g.laplacian())
    u = spec.eigenvectors[:, spec.eigenvalues <= cutoff + CUTOFF_TOL]
    logger.debug(f"Band limit {cutoff:g}: keeping {u.shape[1]} of {spec.size} frequencies")
    return u @ (u.T @ np.asarray(f, dtype=float))


def synthetic_signal(g: Graph, seed: int, cutoff: Optional[float] = None) -> np.ndarray:
    """
    Smooth test signal from seeded unit-variance noise

    Args:
        g: Connected graph
        seed: Noise seed
        cutoff: Optional Laplacian frequency; the noise is band limited to it first

    Returns:
        x = (I + L)^-1 f normalized to max|x| = 1
    """
    if not g.is_connected():
        raise DisconnectedGraphError("Synthetic signals require a connected graph")
    f = np.random.default_rng(seed).standard_normal(g.node_count)
    if cutoff is not None:
        if cutoff < 0:
            raise ValidationError(f"Cutoff must be non-negative, got {cutoff}")
        f = band_limit(g, f, cutoff)
    x = low_pass_signal(g, f)
    peak = float(np.max(np.abs(x)))
    if peak == 0.0:
        raise NumericalError("Synthetic signal vanished; cannot normalize")
    return x / peak


def _resolve_nodes(g: Graph, raw: pd.Series) -> np.ndarray:
    if g.labels is not None:
        index = {label: i for i, label in enumerate(g.labels)}
        unknown = [v for v in raw if v not in index]
        if unknown:
            raise ValidationError(f"Unknown node id '{unknown[0]}' in flow data")
        return np.fromiter((index[v] for v in raw), dtype=np.int64, count=len(raw))
    ids = pd.to_numeric(raw, errors="coerce")
    bad = ids.isna() | (ids % 1 != 0)
    if bad.any():
        raise ValidationError(f"Malformed node id '{raw[bad].iloc[0]}' in flow data")
    ids = ids.astype(np.int64).to_numpy()
    out_of_range = (ids < 0) | (ids >= g.node_count)
    if out_of_range.any():
        raise ValidationError(f"Unknown node id {ids[out_of_range][0]} in flow data")
    return ids


def ingest_flow(g: Graph, csv_path: str, timestamp: str) -> FlowSlice:
    """
    Extract the flow measurements of one timestamp from a `node,timestamp,flow` CSV

    The measured vertices are restricted to the largest connected component of
    the subgraph they induce.

    Raises:
        ValidationError: missing columns, malformed rows, unknown or repeated node ids,
            or no row at the requested timestamp
    """
    frame = pd.read_csv(csv_path, dtype=str, comment="#", skipinitialspace=True)
    frame.columns = [c.strip() for c in frame.columns]
    missing = [c for c in FLOW_COLUMNS if c not in frame.columns]
    if missing:
        raise ValidationError(f"Flow CSV is missing column(s): {', '.join(missing)}")
    if frame[list(FLOW_COLUMNS)].isna().any().any():
        row = int(frame[list(FLOW_COLUMNS)].isna().any(axis=1).to_numpy().argmax())
        raise ValidationError(f"Malformed flow row {row + 1}: empty field")

    flows = pd.to_numeric(frame["flow"], errors="coerce")
    if flows.isna().any():
        row = int(flows.isna().to_numpy().argmax())
        raise ValidationError(f"Malformed flow value '{frame['flow'].iloc[row]}' in row {row + 1}")
    nodes = _resolve_nodes(g, frame["node"].str.strip())

    selected = (frame["timestamp"].str.strip() == str(timestamp).strip()).to_numpy()
    if not selected.any():
        raise ValidationError(f"No flow rows at timestamp '{timestamp}'")
    slice_nodes = nodes[selected]
    slice_values = flows.to_numpy(dtype=float)[selected]
    if len(np.unique(slice_nodes)) != len(slice_nodes):
        raise ValidationError(f"Repeated node id in flow rows at timestamp '{timestamp}'")

    order = np.argsort(slice_nodes)
    measured = tuple(int(v) for v in slice_nodes[order])
    values = slice_values[order]

    sub, mapping = g.induced_subgraph(measured)
    components = sub.connected_components()
    largest = largest_component(sub)
    component = mapping.to_global(largest)
    logger.info(
        f"Flow slice '{timestamp}': {len(measured)} measured vertices in {len(components)} "
        f"component(s); largest holds {len(component)} (sizes {sorted(map(len, components), reverse=True)})"
    )
    return FlowSlice(timestamp=str(timestamp), nodes=measured, values=values, component=component)
