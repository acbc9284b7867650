"""Community data models: disjoint and expanded partitions"""
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from src.models.graph import NodeSet, node_set
from src.utils.errors import ValidationError


@dataclass(frozen=True)
class CommunityParams:
    """Inputs of the community detection pipeline"""
    r: float = 0.75
    dmax: int = 6
    dmin: int = 4
    small_fraction: float = 0.02

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise ValidationError(f"r must lie in [0, 1], got {self.r}")
        if not self.dmax >= self.dmin >= 0:
            raise ValidationError(f"dmax >= dmin >= 0 required, got dmax={self.dmax}, dmin={self.dmin}")
        if not 0.0 < self.small_fraction < 1.0:
            raise ValidationError(f"small_fraction must lie in (0, 1), got {self.small_fraction}")

    def to_dict(self) -> Dict:
        return {"r": self.r, "dmax": self.dmax, "dmin": self.dmin,
                "small_fraction": self.small_fraction}


@dataclass(frozen=True)
class Partition:
    """Disjoint community cover of V"""
    communities: List[NodeSet] = field(default_factory=list)

    @classmethod
    def of(cls, communities: Sequence[Sequence[int]]) -> 'Partition':
        return cls([node_set(c) for c in communities])

    def __len__(self) -> int:
        return len(self.communities)

    def validate(self, n: int) -> None:
        """Check the partition invariants against a graph with n vertices"""
        seen = np.zeros(n, dtype=bool)
        for i, community in enumerate(self.communities):
            if not community:
                raise ValidationError(f"Community {i} is empty")
            ids = np.asarray(community)
            if ids.min() < 0 or ids.max() >= n:
                raise ValidationError(f"Community {i} references a vertex outside [0, {n})")
            if seen[ids].any():
                raise ValidationError(f"Community {i} overlaps an earlier community")
            seen[ids] = True
        if not seen.all():
            raise ValidationError(f"Vertex {int(np.flatnonzero(~seen)[0])} is not covered")

    def labels(self, n: int) -> np.ndarray:
        """Community index per vertex"""
        labels = np.full(n, -1, dtype=np.int64)
        for i, community in enumerate(self.communities):
            labels[list(community)] = i
        return labels

    def replace(self, index: int, parts: Sequence[NodeSet]) -> 'Partition':
        """(partition minus community index) plus parts, parts taking its slot"""
        communities = list(self.communities)
        communities[index:index + 1] = list(parts)
        return Partition(communities)

    def to_dict(self) -> Dict:
        """Convert to dictionary for JSON serialization"""
        return {"communities": [list(c) for c in self.communities]}

    @classmethod
    def from_dict(cls, data: Dict) -> 'Partition':
        """Create Partition from dictionary"""
        if "communities" not in data:
            raise ValidationError("Partition JSON requires a 'communities' list")
        return cls.of(data["communities"])


@dataclass(frozen=True)
class ExpandedPartition:
    """Overlapping enlargement of a disjoint partition, aligned by index"""
    communities: List[NodeSet]
    origin: Partition

    def __len__(self) -> int:
        return len(self.communities)

    def validate(self, n: int) -> None:
        """Each expanded community contains its origin and the union is V"""
        self.origin.validate(n)
        if len(self.communities) != len(self.origin):
            raise ValidationError("Expanded partition is not aligned with its origin")
        covered = np.zeros(n, dtype=bool)
        for i, (expanded, original) in enumerate(zip(self.communities, self.origin.communities)):
            if not set(original).issubset(expanded):
                raise ValidationError(f"Expanded community {i} does not contain its origin")
            covered[list(expanded)] = True
        if not covered.all():
            raise ValidationError(f"Vertex {int(np.flatnonzero(~covered)[0])} is not covered")

    def memberships(self, n: int) -> List[List[int]]:
        """Indices of the expanded communities covering each vertex"""
        covering: List[List[int]] = [[] for _ in range(n)]
        for j, community in enumerate(self.communities):
            for v in community:
                covering[v].append(j)
        return covering

    def to_dict(self) -> Dict:
        """Convert to dictionary for JSON serialization"""
        data = self.origin.to_dict()
        data["expanded"] = [list(c) for c in self.communities]
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> 'ExpandedPartition':
        """Create ExpandedPartition from dictionary"""
        if "expanded" not in data:
            raise ValidationError("Expanded partition JSON requires an 'expanded' list")
        return cls([node_set(c) for c in data["expanded"]], Partition.from_dict(data))


@dataclass(frozen=True)
class AcceptedSplit:
    """One accepted step of the divisive loop"""
    pass_index: int
    community_index: int
    sizes: tuple
    modularity: float
    communities: int
    partition: Partition
