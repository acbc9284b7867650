"""Capacitated graph overlay and cut result models"""
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

from src.models.graph import Edge, Graph, NodeSet
from src.utils.errors import ValidationError

INFINITE = math.inf


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass
class CapacityGraph:
    """Edge capacities over a base graph; missing edges default to `default`"""
    base: Graph
    default: float = 1.0
    overrides: Dict[Edge, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.default < 0:
            raise ValidationError("Capacities must be non-negative")

    def set_capacity(self, u: int, v: int, capacity: float) -> None:
        if capacity < 0:
            raise ValidationError(f"Negative capacity {capacity} on ({u}, {v})")
        key = edge_key(u, v)
        if key[1] not in self.base.neighbors[key[0]]:
            raise ValidationError(f"({u}, {v}) is not an edge of the base graph")
        self.overrides[key] = capacity

    def capacity(self, u: int, v: int) -> float:
        return self.overrides.get(edge_key(u, v), self.default)

    def finite_total(self) -> float:
        """Sum of all finite capacities"""
        total = 0.0
        for u, v in self.base.edges():
            c = self.capacity(u, v)
            if not math.isinf(c):
                total += c
        return total


@dataclass(frozen=True)
class Cut:
    """Result of a minimum s-v cut"""
    source_side: NodeSet
    sink_side: NodeSet
    value: float
    source: Optional[int] = None
    sink: Optional[int] = None

    @property
    def is_infinite(self) -> bool:
        """No finite cut separates the terminals"""
        return math.isinf(self.value)
