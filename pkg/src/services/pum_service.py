"""Partition of unity blending of local GBF fits"""
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.config.settings import config
from src.models.graph import Graph, as_signal, node_set
from src.models.kernel import KernelModel, KernelParams
from src.models.partition import ExpandedPartition
from src.models.results import ErrorReport, GlobalApproximation, PUWeights
from src.services.kernel_service import KernelService
from src.utils.errors import NumericalError, ValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)


def build_pu_weights(ep: ExpandedPartition, n: Optional[int] = None) -> PUWeights:
    """
    phi^(j)(v) = 1_{V_j}(v) / #{j : v in V_j}

    Raises:
        ValidationError: some vertex lies in no expanded community
    """
    if n is None:
        n = sum(len(c) for c in ep.origin.communities)
    covering = ep.memberships(n)
    for v, cover in enumerate(covering):
        if not cover:
            raise ValidationError(f"Vertex {v} is not covered by any expanded community")
    return PUWeights(covering=covering, community_count=len(ep))


def compute_errors(truth, approx, elapsed: float = 0.0) -> ErrorReport:
    """
    RMAE = max|e| / max|x|, RRMSE = ||e||_2 / ||x||_2 over all vertices

    Raises:
        NumericalError: truth is identically zero
    """
    truth = np.asarray(truth, dtype=float)
    approx = np.asarray(approx, dtype=float)
    if truth.shape != approx.shape:
        raise ValidationError(f"Length mismatch: truth {truth.shape}, approximation {approx.shape}")
    peak = float(np.max(np.abs(truth))) if truth.size else 0.0
    if peak == 0.0:
        raise NumericalError("Relative errors are undefined for a zero truth signal")
    errors = np.abs(truth - approx)
    return ErrorReport(
        rmae=float(errors.max() / peak),
        rrmse=float(np.linalg.norm(errors) / np.linalg.norm(truth)),
        abs_errors=errors,
        elapsed=elapsed
    )


class PumService:
    """Global GBF-PUM approximant from local fits on expanded communities"""

    def __init__(self, kernel_service: Optional[KernelService] = None, max_workers: Optional[int] = None):
        self.kernel = kernel_service or KernelService()
        self.max_workers = max_workers or config.MAX_WORKERS

    def check_sample_coverage(self, ep: ExpandedPartition, W: Sequence[int]) -> List[int]:
        """Indices of expanded communities that contain no sample vertex"""
        samples = set(W)
        return [j for j, c in enumerate(ep.communities) if samples.isdisjoint(c)]

    def fit_communities(
        self,
        g: Graph,
        ep: ExpandedPartition,
        W: Sequence[int],
        x_W,
        kp: KernelParams
    ) -> List[Optional[KernelModel]]:
        """One local model per expanded community; None where it holds no sample"""
        W = node_set(W, g.node_count)
        x_W = as_signal(x_W, len(W))
        value_of: Dict[int, float] = dict(zip(W, x_W))

        def fit_one(j: int) -> Optional[KernelModel]:
            community = ep.communities[j]
            local_samples = [i for i, v in enumerate(community) if v in value_of]
            if not local_samples:
                return None
            sub, mapping = g.induced_subgraph(community)
            values = [value_of[community[i]] for i in local_samples]
            return self.kernel.fit_local(sub, values, local_samples, kp, community=mapping.local_to_global)

        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            return list(pool.map(fit_one, range(len(ep))))

    def approximate(
        self,
        g: Graph,
        ep: ExpandedPartition,
        W: Sequence[int],
        x_W,
        kp: KernelParams
    ) -> GlobalApproximation:
        """
        x*(v) = sum_j phi^(j)(v) x*^(j)(v)

        Communities without samples contribute an identically zero local
        approximant; each one is reported with a warning.
        """
        n = g.node_count
        weights = build_pu_weights(ep, n)
        empty = self.check_sample_coverage(ep, W)
        for j in empty:
            logger.warning(
                f"Expanded community {j} ({len(ep.communities[j])} vertices) holds no sample; "
                f"its local approximant is zero"
            )
        models = self.fit_communities(g, ep, W, x_W, kp)

        # fixed-order reduction, independent of fit completion order
        total = np.zeros(n)
        for j, (community, model) in enumerate(zip(ep.communities, models)):
            if model is not None:
                total[list(community)] += weights.community_weights(j, community) * model.values()
        return GlobalApproximation(values=total, models=models, weights=weights,
                                   empty_communities=empty)

    def assemble_global(
        self,
        g: Graph,
        ep: ExpandedPartition,
        W: Sequence[int],
        x_W,
        kp: KernelParams
    ) -> np.ndarray:
        """Global GBF-PUM signal reconstruction"""
        return self.approximate(g, ep, W, x_W, kp).values
