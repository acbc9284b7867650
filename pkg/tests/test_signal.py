"""Tests for sampling, synthetic signals and flow ingestion"""
import numpy as np
import pytest

from src.models.graph import Graph, path_graph
from src.services.signal_service import (
    band_limit,
    ingest_flow,
    low_pass_signal,
    sample_vertices,
    synthetic_signal,
)
from src.utils.errors import DisconnectedGraphError, ValidationError


def roughness(g: Graph, x: np.ndarray) -> float:
    return float(np.linalg.norm(g.laplacian() @ x) / np.linalg.norm(x))


def test_sampling_is_seeded_and_sorted():
    first = sample_vertices(100, 20, 7)
    assert first == sample_vertices(100, 20, 7)
    assert list(first) == sorted(set(first))
    assert len(first) == 20
    assert first != sample_vertices(100, 20, 8)
    with pytest.raises(ValidationError):
        sample_vertices(10, 11, 0)


def test_synthetic_signal_deterministic_and_normalized(grid10):
    x = synthetic_signal(grid10, seed=3)
    assert np.array_equal(x, synthetic_signal(grid10, seed=3))
    assert np.max(np.abs(x)) == pytest.approx(1.0)


def test_low_pass_smooths(grid10, rng):
    f = rng.standard_normal(100)
    x = low_pass_signal(grid10, f)
    assert roughness(grid10, x) < roughness(grid10, f)


def test_low_pass_keeps_constants(karate):
    assert np.allclose(low_pass_signal(karate, np.full(34, 2.5)), 2.5, atol=1e-12)


def test_band_limited_signal_has_no_high_frequencies(grid10):
    x = synthetic_signal(grid10, seed=4, cutoff=0.5)
    w, u = np.linalg.eigh(grid10.laplacian().toarray().astype(float))
    spectrum = u.T @ x
    assert np.allclose(spectrum[w > 0.5 + 1e-9], 0.0, atol=1e-10)
    assert np.abs(spectrum[w <= 0.5]).max() > 0


def test_cutoff_zero_leaves_the_constant(path5, rng):
    f = rng.standard_normal(5)
    assert np.allclose(band_limit(path5, f, 0.0), f.mean(), atol=1e-12)


def test_synthetic_signal_needs_connected_graph():
    with pytest.raises(DisconnectedGraphError):
        synthetic_signal(Graph.from_edge_list([(0, 1), (2, 3)], 4), seed=1)


def write_csv(tmp_path, text, name="flow.csv"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_flow_single_timestamp(tmp_path):
    g = path_graph(3)
    csv = write_csv(tmp_path, "node,timestamp,flow\n2,08:00,5.5\n0,08:00,1.0\n1,08:00,2.0\n")
    flow = ingest_flow(g, csv, "08:00")
    assert flow.nodes == (0, 1, 2)
    assert flow.values.tolist() == [1.0, 2.0, 5.5]
    assert flow.component == (0, 1, 2)


def test_flow_selects_requested_timestamp(tmp_path):
    g = path_graph(3)
    csv = write_csv(tmp_path, "node,timestamp,flow\n0,t1,1\n1,t1,2\n0,t2,10\n2,t2,30\n")
    flow = ingest_flow(g, csv, "t2")
    assert flow.nodes == (0, 2)
    assert flow.values.tolist() == [10.0, 30.0]


def test_flow_largest_component(tmp_path, caplog):
    g = path_graph(8)
    rows = "".join(f"{v},t,{v}\n" for v in (0, 1, 4, 5, 6))
    csv = write_csv(tmp_path, "node,timestamp,flow\n" + rows)
    with caplog.at_level("INFO", logger="gbfpum"):
        flow = ingest_flow(g, csv, "t")
    assert flow.component == (4, 5, 6)
    assert flow.component_values().tolist() == [4.0, 5.0, 6.0]
    assert "largest holds 3" in caplog.text


def test_flow_labelled_graph(tmp_path):
    g = Graph.from_edge_list([(0, 1), (1, 2)], 3, labels=["A", "B", "C"])
    csv = write_csv(tmp_path, "node,timestamp,flow\nC,t,3\nA,t,1\n")
    flow = ingest_flow(g, csv, "t")
    assert flow.nodes == (0, 2)
    assert flow.component == (0,)


@pytest.mark.parametrize("text,match", [
    ("node,flow\n0,1\n", "missing column"),
    ("node,timestamp,flow\n0,t,abc\n", "Malformed flow value"),
    ("node,timestamp,flow\nx,t,1\n", "Malformed node id"),
    ("node,timestamp,flow\n9,t,1\n", "Unknown node id"),
    ("node,timestamp,flow\n0,t,1\n0,t,2\n", "Repeated node id"),
    ("node,timestamp,flow\n0,t,1\n", "No flow rows"),
])
def test_flow_errors(tmp_path, text, match):
    csv = write_csv(tmp_path, text)
    timestamp = "other" if match == "No flow rows" else "t"
    with pytest.raises(ValidationError, match=match):
        ingest_flow(path_graph(3), csv, timestamp)
