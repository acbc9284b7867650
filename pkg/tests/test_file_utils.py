"""Tests for edge-list, signal, node-id, JSON and plot-data files"""
import numpy as np
import pandas as pd
import pytest

from src.models.graph import path_graph
from src.models.partition import ExpandedPartition, Partition
from src.utils.errors import ValidationError
from src.utils.file_utils import (
    read_edge_list,
    read_full_signal,
    read_json,
    read_node_ids,
    read_signal,
    write_edge_list,
    write_json,
    write_node_ids,
    write_plot_data,
    write_signal,
)


def write_text(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_integer_edge_list_with_comments(tmp_path):
    path = write_text(tmp_path, "g.txt", "# header\n0 1\n\n1 2 1\n2 0\n")
    g = read_edge_list(path)
    assert g.node_count == 3
    assert g.edge_count == 3
    assert g.labels is None


def test_edge_list_vertex_count(tmp_path):
    path = write_text(tmp_path, "g.txt", "0 1\n")
    assert read_edge_list(path, n=5).node_count == 5
    with pytest.raises(ValidationError):
        read_edge_list(path, n=1)


def test_labelled_edge_list(tmp_path):
    path = write_text(tmp_path, "g.txt", "paris lyon\nlyon nice\nnice paris\nnice 7\n")
    g = read_edge_list(path)
    assert g.labels == ("paris", "lyon", "nice", "7")
    assert g.neighbors[2] == (0, 1, 3)


@pytest.mark.parametrize("text", ["0 1 2\n", "0 1 x\n", "0\n", "0 1 1 1\n", "0 0\n"])
def test_edge_list_errors(tmp_path, text):
    with pytest.raises(ValidationError):
        read_edge_list(write_text(tmp_path, "g.txt", text))


def test_edge_list_write_read(tmp_path, karate):
    path = str(tmp_path / "out" / "karate.txt")
    write_edge_list(karate, path, header="karate")
    assert read_edge_list(path) == karate


def test_signal_file(tmp_path):
    path = str(tmp_path / "x.csv")
    write_signal(path, [0.1, 2.0 / 3.0], nodes=[7, 2])
    nodes, values = read_signal(path)
    assert nodes == (2, 7)
    assert values.tolist() == [2.0 / 3.0, 0.1]


def test_full_signal_must_cover_every_vertex(tmp_path):
    path = str(tmp_path / "x.csv")
    write_signal(path, [1.0, 2.0, 3.0])
    assert read_full_signal(path, 3).tolist() == [1.0, 2.0, 3.0]
    with pytest.raises(ValidationError, match="covers 3 of 4"):
        read_full_signal(path, 4)


@pytest.mark.parametrize("text", ["id,value\n0,1\n", "node,value\n0,abc\n", "node,value\n0,1\n0,2\n"])
def test_signal_errors(tmp_path, text):
    with pytest.raises(ValidationError):
        read_signal(write_text(tmp_path, "x.csv", text))


def test_node_ids(tmp_path):
    path = str(tmp_path / "w.txt")
    write_node_ids(path, [5, 1, 3])
    assert read_node_ids(path) == (1, 3, 5)
    assert read_node_ids(write_text(tmp_path, "v.txt", "# samples\n4 2\n2\n")) == (2, 4)
    with pytest.raises(ValidationError):
        read_node_ids(path, n=4)
    with pytest.raises(ValidationError):
        read_node_ids(write_text(tmp_path, "bad.txt", "1 two\n"))


def test_json_is_deterministic(tmp_path):
    first, second = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    write_json(first, {"b": [1, 2], "a": 0.5})
    write_json(second, {"a": 0.5, "b": [1, 2]})
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert read_json(first) == {"a": 0.5, "b": [1, 2]}


def test_plot_data(tmp_path):
    p = Partition.of([[0, 1, 2], [3, 4, 5]])
    ep = ExpandedPartition([(0, 1, 2, 3), (2, 3, 4, 5)], p)
    path = str(tmp_path / "plot.csv")
    write_plot_data(path, ep, 6)
    frame = pd.read_csv(path, dtype=str)
    assert list(frame.columns) == ["node", "community", "expanded_memberships"]
    assert frame["community"].tolist() == ["0", "0", "0", "1", "1", "1"]
    assert frame["expanded_memberships"].tolist() == ["0", "0", "0;1", "0;1", "1", "1"]


def test_write_signal_length_mismatch(tmp_path):
    with pytest.raises(ValidationError):
        write_signal(str(tmp_path / "x.csv"), np.ones(3), nodes=[0, 1])


def test_path_graph_round_trip_keeps_isolated_tail(tmp_path):
    g = path_graph(4)
    path = str(tmp_path / "p.txt")
    write_edge_list(g, path)
    assert read_edge_list(path, n=6).node_count == 6
