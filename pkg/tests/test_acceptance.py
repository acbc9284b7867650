"""End-to-end accuracy, convergence and runtime checks on grids and the karate club"""
import time

import numpy as np
import pytest

from src.constants import karate_club
from src.models.graph import grid_graph
from src.models.kernel import KernelParams
from src.services.community_service import CommunityService
from src.services.pipeline_service import PipelineService
from src.services.signal_service import sample_vertices, synthetic_signal


def run_grid(g, truth, count, seed, params=KernelParams(gamma=1e-10)):
    W = sample_vertices(g.node_count, count, seed)
    return W, PipelineService(kernel=params).run(g, W, truth[list(W)], truth)


@pytest.mark.parametrize("samples, expected", [
    ((karate_club.INSTRUCTOR, karate_club.ADMINISTRATOR), 2),
    (karate_club.NO_SPLIT_PAIR, 1),
])
def test_karate_detection_is_fast(karate, samples, expected):
    started = time.perf_counter()
    partition, _ = CommunityService().detect_communities(karate, samples)
    assert time.perf_counter() - started < 1.0
    assert len(partition) == expected


def test_samples_reproduced_on_grid():
    g = grid_graph(30, 30)
    truth = synthetic_signal(g, seed=1)
    for seed in range(10):
        W, result = run_grid(g, truth, 90, seed)
        at_samples = result.approximation.values[list(W)] - truth[list(W)]
        assert np.max(np.abs(at_samples)) / np.max(np.abs(truth)) < 1e-6
        assert result.community_count <= 90


def test_error_falls_with_more_samples():
    g = grid_graph(30, 30)
    truth = synthetic_signal(g, seed=2)
    sparse = [run_grid(g, truth, 90, seed)[1].errors.rrmse for seed in range(3)]
    dense = [run_grid(g, truth, 225, seed)[1].errors.rrmse for seed in range(3)]
    assert np.mean(dense) < np.mean(sparse)


@pytest.mark.slow
def test_low_pass_convergence():
    g = grid_graph(50, 50)
    truth = synthetic_signal(g, seed=3, cutoff=0.2)
    params = KernelParams(epsilon=0.01, s=2.0, gamma=1e-10)
    started = time.perf_counter()
    coarse = run_grid(g, truth, 200, 4, params)[1].errors.rrmse
    fine = run_grid(g, truth, 1000, 4, params)[1].errors.rrmse
    assert fine * 5 < coarse
    assert time.perf_counter() - started < 120


@pytest.mark.slow
def test_band_limited_signal_converges():
    g = grid_graph(40, 40)
    truth = synthetic_signal(g, seed=5, cutoff=0.5)
    coarse = run_grid(g, truth, 160, 2)[1].errors.rrmse
    fine = run_grid(g, truth, 640, 2)[1].errors.rrmse
    assert fine < coarse


@pytest.mark.slow
def test_detection_scaling():
    elapsed = {}
    for side in (20, 40, 80):
        g = grid_graph(side, side)
        W = sample_vertices(g.node_count, g.node_count // 10, 1)
        started = time.perf_counter()
        CommunityService().detect_communities(g, W)
        elapsed[g.node_count] = time.perf_counter() - started
    c = max(t / (n ** 3 * np.log(n)) for n, t in elapsed.items() if n < 6400)
    assert elapsed[6400] <= 10 * c * 6400 ** 3 * np.log(6400)
