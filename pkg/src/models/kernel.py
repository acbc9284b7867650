"""Graph basis function kernel models"""
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from src.models.graph import NodeSet, node_set
from src.utils.errors import ValidationError


@dataclass(frozen=True)
class KernelParams:
    """Polyharmonic-spline kernel (eps*I + L)^-s with ridge weight gamma"""
    epsilon: float = 1.0
    s: float = 1.0
    gamma: float = 1e-10

    def __post_init__(self):
        if self.s <= 0:
            raise ValidationError(f"Kernel exponent s must be positive, got {self.s}")
        if self.gamma < 0:
            raise ValidationError(f"gamma must be non-negative, got {self.gamma}")

    @property
    def is_resolvent(self) -> bool:
        """s == 1: kernel columns come from linear solves"""
        return self.s == 1.0

    def to_dict(self) -> Dict:
        return {"epsilon": self.epsilon, "s": self.s, "gamma": self.gamma}

    @classmethod
    def from_dict(cls, data: Dict) -> 'KernelParams':
        return cls(epsilon=float(data["epsilon"]), s=float(data["s"]),
                   gamma=float(data["gamma"]))


@dataclass(frozen=True)
class SpectralDecomposition:
    """L = U diag(eigenvalues) U^T, eigenvalues ascending"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]


@dataclass
class KernelModel:
    """Local RLS fit x* = sum_i c_i K(., w_i) on one community"""
    community: NodeSet
    samples: NodeSet
    params: KernelParams
    coefficients: np.ndarray
    kernel_columns: Optional[np.ndarray] = field(default=None, repr=False)
    residual: float = 0.0

    @property
    def sample_count(self) -> int:
        return len(self.samples)

    @property
    def gram(self) -> np.ndarray:
        """K_WW block"""
        local = [self.local_index[w] for w in self.samples]
        return self.kernel_columns[local, :]

    @property
    def local_index(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.community)}

    def values(self) -> np.ndarray:
        """Fitted values on every community vertex, in community order"""
        if self.kernel_columns is None:
            raise ValidationError("Kernel columns are not attached to this model")
        return self.kernel_columns @ self.coefficients

    def to_dict(self) -> Dict:
        """Convert to dictionary for JSON caching (columns are rebuilt on load)"""
        return {
            "community": list(self.community),
            "samples": list(self.samples),
            "params": self.params.to_dict(),
            "coefficients": [float(c) for c in self.coefficients],
            "residual": self.residual
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'KernelModel':
        """Create KernelModel from dictionary, without kernel columns"""
        samples = node_set(data["samples"])
        coefficients = np.asarray(data["coefficients"], dtype=float)
        if coefficients.shape[0] != len(samples):
            raise ValidationError("Coefficient count does not match sample count")
        return cls(
            community=node_set(data["community"]),
            samples=samples,
            params=KernelParams.from_dict(data["params"]),
            coefficients=coefficients,
            residual=float(data.get("residual", 0.0))
        )
