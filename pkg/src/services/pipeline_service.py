"""End-to-end GBF-PUM pipeline: detect communities, fit, blend, score"""
from typing import Optional, Sequence

import numpy as np

from src.models.graph import Graph, as_signal, node_set
from src.models.kernel import KernelParams
from src.models.partition import CommunityParams
from src.models.results import KatzParams, PhaseTimings, PipelineResult
from src.services.community_service import CommunityService
from src.services.kernel_service import KernelService
from src.services.pum_service import PumService, compute_errors
from src.utils.logger import get_logger, log_phase

logger = get_logger(__name__)


class PipelineService:
    """Service for complete interpolation runs"""

    def __init__(
        self,
        community: CommunityParams = CommunityParams(),
        kernel: KernelParams = KernelParams(),
        katz: KatzParams = KatzParams(),
        max_workers: Optional[int] = None
    ):
        self.kernel_params = kernel
        self.communities = CommunityService(community, katz)
        self.pum = PumService(KernelService(), max_workers=max_workers)

    def run(
        self,
        g: Graph,
        W: Sequence[int],
        x_W,
        truth: Optional[np.ndarray] = None
    ) -> PipelineResult:
        """
        Reconstruct a graph signal from its values at the sample vertices

        Args:
            g: Connected graph
            W: Sample vertices
            x_W: Signal values at sorted W
            truth: Full signal for error metrics (optional)

        Returns:
            PipelineResult with per-phase timings
        """
        W = node_set(W, g.node_count)
        x_W = as_signal(x_W, len(W))
        if truth is not None:
            truth = as_signal(truth, g.node_count)

        logger.info(f"🔄 Detecting communities: {g.node_count} vertices, {len(W)} samples")
        with log_phase(logger, "Community detection") as detect:
            partition, expanded = self.communities.detect_communities(g, W)
        logger.info(f"{len(partition)} communities")

        with log_phase(logger, "Local fits and blending") as fit:
            approximation = self.pum.approximate(g, expanded, W, x_W, self.kernel_params)
        timings = PhaseTimings(detect=detect.seconds, fit=fit.seconds)

        errors = None
        if truth is not None:
            errors = compute_errors(truth, approximation.values, timings.total)
            logger.info(f"RMAE={errors.rmae:.3e} RRMSE={errors.rrmse:.6e}")
        return PipelineResult(
            partition=partition,
            expanded=expanded,
            approximation=approximation,
            timings=timings,
            errors=errors
        )
