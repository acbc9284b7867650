"""File readers and writers: edge lists, signals, node-id lists, JSON and plot data"""
import json
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.models.graph import Graph, NodeSet, node_set
from src.models.partition import ExpandedPartition
from src.utils.errors import ValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)

SIGNAL_COLUMNS = ("node", "value")
# Round-trip precision for float columns
FLOAT_FORMAT = "%.17g"


def ensure_directory(directory: str) -> None:
    """Ensure directory exists, create if it doesn't"""
    if directory and not os.path.exists(directory):
        os.makedirs(directory, exist_ok=True)
        logger.info(f"Created directory: {directory}")


def _ensure_parent(path: str) -> None:
    ensure_directory(os.path.dirname(os.path.abspath(path)))


def _is_int(token: str) -> bool:
    try:
        int(token)
        return True
    except ValueError:
        return False


def _data_lines(path: str) -> Iterable[Tuple[int, List[str]]]:
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            yield number, stripped.split()


def read_edge_list(path: str, n: Optional[int] = None) -> Graph:
    """
    Read a whitespace-separated `u v` edge list

    Integer ids are used as they are. If any endpoint is not an integer, every
    endpoint is treated as a label and mapped to a dense id in order of first
    appearance; the labels are kept on the graph. A third column is accepted
    only when it is the unit weight 1.

    Args:
        path: Edge-list file
        n: Vertex count; max id + 1 when omitted

    Returns:
        Graph instance
    """
    rows: List[Tuple[str, str]] = []
    for number, tokens in _data_lines(path):
        if len(tokens) not in (2, 3):
            raise ValidationError(f"{path}:{number}: expected 'u v', got {len(tokens)} field(s)")
        if len(tokens) == 3:
            try:
                weight = float(tokens[2])
            except ValueError:
                raise ValidationError(f"{path}:{number}: malformed weight '{tokens[2]}'")
            if weight != 1.0:
                raise ValidationError(f"{path}:{number}: weighted edges are not supported (weight {tokens[2]})")
        rows.append((tokens[0], tokens[1]))

    if all(_is_int(u) and _is_int(v) for u, v in rows):
        g = Graph.from_edge_list(((int(u), int(v)) for u, v in rows), n)
    else:
        if n is not None:
            raise ValidationError("A vertex count cannot be given for a labelled edge list")
        index: Dict[str, int] = {}
        for u, v in rows:
            index.setdefault(u, len(index))
            index.setdefault(v, len(index))
        g = Graph.from_edge_list(((index[u], index[v]) for u, v in rows), len(index), labels=list(index))
    logger.info(f"Loaded graph from {path}: {g.node_count} vertices, {g.edge_count} edges")
    return g


def write_edge_list(g: Graph, path: str, header: Optional[str] = None) -> None:
    """Write each edge once as `u v` (labels when the graph carries them)"""
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        if header:
            f.write(f"# {header}\n")
        for u, v in g.edges():
            if g.labels:
                f.write(f"{g.labels[u]} {g.labels[v]}\n")
            else:
                f.write(f"{u} {v}\n")


def read_signal(path: str, n: Optional[int] = None) -> Tuple[NodeSet, np.ndarray]:
    """
    Read a `node,value` CSV

    Returns:
        Tuple (sorted node ids, values aligned with them)
    """
    frame = pd.read_csv(path, comment="#")
    frame.columns = [str(c).strip() for c in frame.columns]
    if tuple(frame.columns[:2]) != SIGNAL_COLUMNS:
        raise ValidationError(f"{path}: expected header 'node,value'")
    nodes = pd.to_numeric(frame["node"], errors="coerce")
    values = pd.to_numeric(frame["value"], errors="coerce")
    bad = nodes.isna() | values.isna() | (nodes % 1 != 0)
    if bad.any():
        raise ValidationError(f"{path}: malformed row {int(bad.to_numpy().argmax()) + 1}")
    ids = nodes.astype(np.int64).to_numpy()
    if len(np.unique(ids)) != len(ids):
        raise ValidationError(f"{path}: repeated node id")
    order = np.argsort(ids)
    return node_set(ids, n), values.to_numpy(dtype=float)[order]


def read_full_signal(path: str, n: int) -> np.ndarray:
    """Read a signal that must assign a value to every vertex 0..n-1"""
    nodes, values = read_signal(path, n)
    if len(nodes) != n:
        raise ValidationError(f"{path}: signal covers {len(nodes)} of {n} vertices")
    return values


def write_signal(path: str, values: Sequence[float], nodes: Optional[Sequence[int]] = None) -> None:
    """Write a `node,value` CSV; nodes default to 0..len(values)-1"""
    values = np.asarray(values, dtype=float)
    nodes = np.arange(len(values)) if nodes is None else np.asarray(nodes, dtype=np.int64)
    if nodes.shape != values.shape:
        raise ValidationError("Signal nodes and values differ in length")
    _ensure_parent(path)
    pd.DataFrame({"node": nodes, "value": values}).to_csv(path, index=False, float_format=FLOAT_FORMAT)


def read_node_ids(path: str, n: Optional[int] = None) -> NodeSet:
    """Read vertex ids, whitespace or newline separated, `#` comments ignored"""
    ids: List[int] = []
    for number, tokens in _data_lines(path):
        for token in tokens:
            if not _is_int(token):
                raise ValidationError(f"{path}:{number}: malformed vertex id '{token}'")
            ids.append(int(token))
    return node_set(ids, n)


def write_node_ids(path: str, nodes: Iterable[int]) -> None:
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        for v in nodes:
            f.write(f"{v}\n")


def read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def write_json(path: str, data: Any) -> None:
    """Deterministic JSON dump (sorted keys, fixed indentation)"""
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def write_plot_data(path: str, ep: ExpandedPartition, n: int) -> None:
    """`node,community,expanded_memberships` CSV; memberships are ';'-joined indices"""
    labels = ep.origin.labels(n)
    memberships = ep.memberships(n)
    _ensure_parent(path)
    pd.DataFrame({
        "node": np.arange(n),
        "community": labels,
        "expanded_memberships": [";".join(str(j) for j in cover) for cover in memberships]
    }).to_csv(path, index=False)


def write_table(path: str, rows: List[Dict[str, Any]]) -> None:
    """Write result rows as CSV"""
    _ensure_parent(path)
    pd.DataFrame(rows).to_csv(path, index=False, float_format=FLOAT_FORMAT)
