"""Tests for partition-of-unity weights, global assembly and error metrics"""
import logging
from fractions import Fraction

import numpy as np
import pytest

from src.models.graph import grid_graph, path_graph
from src.models.kernel import KernelParams
from src.models.partition import ExpandedPartition, Partition
from src.services.community_service import CommunityService
from src.services.kernel_service import KernelService
from src.services.pipeline_service import PipelineService
from src.services.pum_service import PumService, build_pu_weights, compute_errors
from src.services.signal_service import sample_vertices, synthetic_signal
from src.utils.errors import NumericalError, ValidationError


def overlapping_path_partition():
    p = Partition.of([[0, 1, 2], [3, 4, 5]])
    return ExpandedPartition([(0, 1, 2, 3), (2, 3, 4, 5)], p)


@pytest.fixture
def pum():
    return PumService(max_workers=2)


# ---------- weights ----------

def test_weights_single_and_shared_membership():
    weights = build_pu_weights(overlapping_path_partition())
    assert weights.weights_at(0) == {0: Fraction(1)}
    assert weights.weights_at(5) == {1: Fraction(1)}
    assert weights.weights_at(2) == {0: Fraction(1, 2), 1: Fraction(1, 2)}


def test_community_weights_follow_member_order():
    weights = build_pu_weights(overlapping_path_partition())
    assert weights.community_weights(1, (2, 3, 4, 5)).tolist() == [0.5, 0.5, 1.0, 1.0]
    assert weights.community_weights(0, (3, 0)).tolist() == [0.5, 1.0]


def test_weights_sum_to_one_exactly(karate):
    service = CommunityService()
    _, expanded = service.detect_communities(karate, [0, 33])
    weights = build_pu_weights(expanded, 34)
    for v in range(34):
        assert sum(weights.weights_at(v).values()) == 1
        for j in weights.weights_at(v):
            assert v in expanded.communities[j]
    blended = np.zeros(34)
    for j, community in enumerate(expanded.communities):
        blended[list(community)] += weights.community_weights(j, community)
    assert np.allclose(blended, 1.0)


def test_weights_reject_uncovered_vertex():
    p = Partition.of([[0, 1], [2, 3]])
    broken = ExpandedPartition([(0, 1), (2,)], p)
    with pytest.raises(ValidationError, match="Vertex 3"):
        build_pu_weights(broken, 4)


# ---------- assembly ----------

def test_single_community_equals_plain_fit(pum, grid10, rng):
    W = sample_vertices(100, 20, 3)
    x_W = rng.standard_normal(20)
    single = Partition([tuple(range(100))])
    ep = ExpandedPartition([tuple(range(100))], single)
    params = KernelParams(gamma=1e-10)
    blended = pum.assemble_global(grid10, ep, W, x_W, params)
    plain = KernelService().fit_local(grid10, x_W, W, params).values()
    assert np.allclose(blended, plain, atol=1e-12, rtol=0)


def test_constant_signal_reproduced_at_samples(pum):
    g = path_graph(6)
    W = [0, 2, 3, 5]
    values = pum.assemble_global(g, overlapping_path_partition(), W, np.full(4, 3.0), KernelParams(gamma=0.0))
    assert np.allclose(values[W], 3.0, atol=1e-8)


def test_identical_local_models_blend_to_same_value(pum):
    g = path_graph(4)
    p = Partition.of([[0, 1], [2, 3]])
    ep = ExpandedPartition([(0, 1, 2, 3), (0, 1, 2, 3)], p)
    W = [0, 3]
    blended = pum.assemble_global(g, ep, W, [1.0, -1.0], KernelParams(gamma=0.0))
    plain = KernelService().fit_local(g, [1.0, -1.0], W, KernelParams(gamma=0.0)).values()
    assert np.allclose(blended, plain, atol=1e-12)


def test_sample_reproduction_on_grid(pum):
    g = grid_graph(15, 15)
    truth = synthetic_signal(g, seed=5)
    W = sample_vertices(g.node_count, 45, 11)
    _, ep = CommunityService().detect_communities(g, W)
    values = pum.assemble_global(g, ep, W, truth[list(W)], KernelParams(gamma=1e-10))
    assert np.max(np.abs(values[list(W)] - truth[list(W)])) / np.max(np.abs(truth)) < 1e-6


def test_locality_of_sample_perturbation(pum):
    g = path_graph(10)
    p = Partition.of([[0, 1, 2, 3, 4], [5, 6, 7, 8, 9]])
    ep = ExpandedPartition([(0, 1, 2, 3, 4, 5, 6), (4, 5, 6, 7, 8, 9)], p)
    W = [0, 3, 7, 9]
    x_W = np.array([1.0, 2.0, 3.0, 4.0])
    base = pum.assemble_global(g, ep, W, x_W, KernelParams())
    bumped = x_W.copy()
    bumped[0] += 1.0
    moved = pum.assemble_global(g, ep, W, bumped, KernelParams())
    changed = set(np.flatnonzero(np.abs(moved - base) > 0))
    assert changed <= set(ep.communities[0])
    assert np.array_equal(moved[7:], base[7:])


def test_empty_community_falls_back_to_zero(pum, caplog):
    g = path_graph(6)
    W = [0, 1]
    with caplog.at_level(logging.WARNING, logger="gbfpum"):
        result = pum.approximate(g, overlapping_path_partition(), W, [1.0, 1.0], KernelParams(gamma=0.0))
    assert result.empty_communities == [1]
    assert result.models[1] is None
    assert "holds no sample" in caplog.text
    assert result.values[5] == 0.0
    assert pum.check_sample_coverage(overlapping_path_partition(), W) == [1]


def test_parallel_fits_are_deterministic(grid10):
    W = sample_vertices(100, 30, 8)
    x_W = synthetic_signal(grid10, seed=2)[list(W)]
    _, ep = CommunityService().detect_communities(grid10, W)
    serial = PumService(max_workers=1).assemble_global(grid10, ep, W, x_W, KernelParams())
    parallel = PumService(max_workers=8).assemble_global(grid10, ep, W, x_W, KernelParams())
    assert np.array_equal(serial, parallel)


def test_sample_value_count_checked(pum):
    with pytest.raises(ValidationError):
        pum.fit_communities(path_graph(6), overlapping_path_partition(), [0, 3], [1.0], KernelParams())


def test_pipeline_checks_signal_lengths(grid10):
    pipeline = PipelineService()
    W = [0, 55, 99]
    with pytest.raises(ValidationError, match="does not match 3 vertices"):
        pipeline.run(grid10, W, [1.0, 2.0])
    with pytest.raises(ValidationError, match="does not match 100 vertices"):
        pipeline.run(grid10, W, [1.0, 2.0, 3.0], truth=np.ones(99))


# ---------- errors ----------

def test_errors_examples():
    exact = compute_errors([1.0, -2.0], [1.0, -2.0])
    assert exact.rmae == 0 and exact.rrmse == 0
    assert compute_errors([3.0, 4.0], [0.0, 0.0]).rrmse == pytest.approx(1.0)
    report = compute_errors([1.0, 2.0], [1.0, 1.0], elapsed=0.5)
    assert report.rmae == pytest.approx(0.5)
    assert report.rrmse == pytest.approx(1 / np.sqrt(5))
    assert report.to_dict()["time_s"] == 0.5


def test_errors_reject_zero_truth_and_mismatch():
    with pytest.raises(NumericalError):
        compute_errors([0.0, 0.0], [1.0, 1.0])
    with pytest.raises(ValidationError):
        compute_errors([1.0], [1.0, 2.0])
