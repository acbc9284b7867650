"""Run configuration, centrality parameters and result models"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.models.kernel import KernelModel, KernelParams
from src.models.partition import CommunityParams, ExpandedPartition, Partition
from src.utils.errors import ValidationError


@dataclass(frozen=True)
class KatzParams:
    """Katz centrality iteration settings"""
    alpha: float = 0.5
    max_iter: int = 1000
    tol: float = 1e-10

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValidationError(f"Katz alpha must be positive, got {self.alpha}")
        if self.tol <= 0:
            raise ValidationError(f"Katz tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValidationError("Katz max_iter must be at least 1")


@dataclass(frozen=True)
class PUWeights:
    """Characteristic-function partition of unity over expanded communities"""
    covering: List[List[int]]
    community_count: int

    def weights_at(self, v: int) -> Dict[int, Fraction]:
        """phi^(j)(v) as exact rationals, keyed by the covering communities"""
        cover = self.covering[v]
        return {j: Fraction(1, len(cover)) for j in cover}

    def community_weights(self, j: int, community: Sequence[int]) -> np.ndarray:
        """phi^(j) restricted to the vertices of expanded community j, in their order"""
        return np.fromiter((float(self.weights_at(v)[j]) for v in community), dtype=float, count=len(community))


@dataclass
class ErrorReport:
    """Reconstruction error metrics"""
    rmae: float
    rrmse: float
    abs_errors: np.ndarray = field(repr=False)
    elapsed: float = 0.0

    def to_dict(self) -> Dict:
        return {"rmae": self.rmae, "rrmse": self.rrmse, "time_s": self.elapsed}


@dataclass
class PhaseTimings:
    """Wall-clock seconds per pipeline phase"""
    detect: float = 0.0
    fit: float = 0.0

    @property
    def total(self) -> float:
        return self.detect + self.fit

    def to_dict(self) -> Dict:
        return {"detect": self.detect, "fit": self.fit, "total": self.total}


@dataclass
class RunConfig:
    """Everything one CLI run needs"""
    graph_path: str
    output_path: str
    signal_path: Optional[str] = None
    synthetic_seed: Optional[int] = None
    sample_ids_path: Optional[str] = None
    sample_count: Optional[int] = None
    sample_seed: Optional[int] = None
    cutoff: Optional[float] = None
    community: CommunityParams = field(default_factory=CommunityParams)
    kernel: KernelParams = field(default_factory=KernelParams)
    katz: KatzParams = field(default_factory=KatzParams)
    record: bool = False

    def validate(self, n: Optional[int] = None, require_signal: bool = False) -> None:
        """Check the run invariants; n is the vertex count once the graph is loaded"""
        if require_signal and (self.signal_path is None) == (self.synthetic_seed is None):
            raise ValidationError("Exactly one of --signal or --signal-seed is required")
        if (self.sample_ids_path is None) == (self.sample_count is None):
            raise ValidationError("Exactly one of --sample-ids or --samples is required")
        if self.sample_count is not None:
            if self.sample_seed is None:
                raise ValidationError("--samples requires --seed")
            if self.sample_count < 1:
                raise ValidationError("--samples must be at least 1")
            if n is not None and self.sample_count > n:
                raise ValidationError(f"--samples {self.sample_count} exceeds {n} vertices")
        if self.cutoff is not None and (math.isnan(self.cutoff) or self.cutoff < 0):
            raise ValidationError("--cutoff must be a non-negative frequency")

    def params_dict(self) -> Dict:
        return {"community": self.community.to_dict(), "kernel": self.kernel.to_dict(),
                "katz_alpha": self.katz.alpha}


@dataclass
class GlobalApproximation:
    """Blended GBF-PUM reconstruction and the pieces it came from"""
    values: np.ndarray
    models: List[Optional[KernelModel]]
    weights: PUWeights
    empty_communities: List[int] = field(default_factory=list)


@dataclass
class FlowSlice:
    """Flow measurements at one timestamp"""
    timestamp: str
    nodes: Tuple[int, ...]
    values: np.ndarray
    component: Tuple[int, ...] = ()

    def component_values(self) -> np.ndarray:
        """Values restricted to the selected component, in component order"""
        index = {v: i for i, v in enumerate(self.nodes)}
        return self.values[[index[v] for v in self.component]]


@dataclass
class PipelineResult:
    """Detected communities, blended reconstruction, errors and timings of one run"""
    partition: Partition
    expanded: ExpandedPartition
    approximation: GlobalApproximation
    timings: PhaseTimings
    errors: Optional[ErrorReport] = None

    @property
    def community_count(self) -> int:
        return len(self.expanded)

    def to_dict(self) -> Dict:
        """Result JSON; rmae/rrmse are null when no full truth signal was given"""
        return {
            "approx": [float(v) for v in self.approximation.values],
            "rmae": self.errors.rmae if self.errors else None,
            "rrmse": self.errors.rrmse if self.errors else None,
            "communities": self.community_count,
            "time_s": self.timings.to_dict()
        }
