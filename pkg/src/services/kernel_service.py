"""Graph basis function kernels (eps*I + L)^-s and local RLS fits"""
from typing import Optional, Sequence

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh, splu

from src.config.settings import config
from src.models.graph import Graph, node_set
from src.models.kernel import KernelModel, KernelParams, SpectralDecomposition
from src.utils.errors import NoSamplesError, NumericalError, ValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)

SYMMETRY_TOL = 1e-12
RESIDUAL_TOL = 1e-10


def _dense(L) -> np.ndarray:
    return L.toarray().astype(float) if sp.issparse(L) else np.asarray(L, dtype=float)


def laplacian_spectrum(L) -> SpectralDecomposition:
    """Full eigendecomposition of a symmetric matrix, eigenvalues ascending"""
    dense = _dense(L)
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise ValidationError(f"Expected a square matrix, got shape {dense.shape}")
    if not np.allclose(dense, dense.T, atol=SYMMETRY_TOL, rtol=0.0):
        raise ValidationError("Matrix is not symmetric")
    eigenvalues, eigenvectors = la.eigh(dense)
    return SpectralDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def graph_fourier(spec: SpectralDecomposition, x) -> np.ndarray:
    """x_hat = U^T x"""
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.size,):
        raise ValidationError(f"Signal of shape {x.shape} does not match {spec.size} vertices")
    return spec.eigenvectors.T @ x


def inverse_graph_fourier(spec: SpectralDecomposition, x_hat) -> np.ndarray:
    """x = U x_hat"""
    x_hat = np.asarray(x_hat, dtype=float)
    if x_hat.shape != (spec.size,):
        raise ValidationError(f"Spectrum of shape {x_hat.shape} does not match {spec.size} vertices")
    return spec.eigenvectors @ x_hat


def smallest_eigenvalue(L) -> float:
    n = L.shape[0]
    if n <= config.DENSE_EIGEN_LIMIT or not sp.issparse(L):
        return float(la.eigvalsh(_dense(L), subset_by_index=[0, 0])[0])
    return float(eigsh(L.astype(float), k=1, which="SA", return_eigenvectors=False)[0])


def check_positive_definite(L, params: KernelParams, lambda_min: Optional[float] = None) -> None:
    """
    Require eps + lambda_min > 0

    Graph Laplacians are positive semidefinite, so eps > 0 certifies the kernel
    without an eigenvalue computation.
    """
    if params.epsilon > 0 and lambda_min is None:
        return
    if lambda_min is None:
        lambda_min = smallest_eigenvalue(L)
    if params.epsilon + lambda_min <= 0:
        raise NumericalError(
            f"Kernel not positive definite: epsilon {params.epsilon:g} + lambda_min {lambda_min:.3e} <= 0"
        )


def build_kernel_columns(
    L,
    params: KernelParams,
    cols: Sequence[int],
    method: str = "auto"
) -> np.ndarray:
    """
    Columns `cols` of K = (eps*I + L)^-s

    Args:
        L: Symmetric Laplacian (sparse or dense)
        params: Kernel parameters
        cols: Column indices
        method: "solve" (s == 1 only), "spectral", or "auto" (solve when s == 1)

    Returns:
        (n x len(cols)) block of K
    """
    n = L.shape[0]
    cols = list(cols)
    if method == "auto":
        method = "solve" if params.is_resolvent else "spectral"
    if method == "solve":
        if not params.is_resolvent:
            raise ValidationError("The linear-solve kernel path requires s == 1")
        check_positive_definite(L, params)
        shifted = (params.epsilon * sp.identity(n, format="csc") + sp.csc_matrix(L, dtype=float)).tocsc()
        rhs = np.zeros((n, len(cols)))
        rhs[cols, np.arange(len(cols))] = 1.0
        return splu(shifted).solve(rhs)
    if method == "spectral":
        if n > config.DENSE_EIGEN_LIMIT:
            raise NumericalError(
                f"Community of {n} vertices exceeds the dense eigensolver limit "
                f"({config.DENSE_EIGEN_LIMIT}); use s = 1"
            )
        spec = laplacian_spectrum(L)
        check_positive_definite(L, params, lambda_min=float(spec.eigenvalues[0]))
        weights = (params.epsilon + spec.eigenvalues) ** (-params.s)
        u = spec.eigenvectors
        return u @ (weights[:, None] * u[cols, :].T)
    raise ValidationError(f"Unknown kernel method '{method}'")


def kernel_matrix(L, params: KernelParams, method: str = "auto") -> np.ndarray:
    """Full dense kernel, for small graphs and checks"""
    return build_kernel_columns(L, params, range(L.shape[0]), method=method)


class KernelService:
    """Local GBF regularized least-squares fitting"""

    def fit_local(
        self,
        g_j: Graph,
        x_W,
        W_j: Sequence[int],
        params: KernelParams,
        community: Optional[Sequence[int]] = None
    ) -> KernelModel:
        """
        Solve (K_WW + gamma*N*I) c = x_W on a community subgraph

        Args:
            g_j: Community subgraph (local ids)
            x_W: Sample values, aligned with sorted W_j
            W_j: Local ids of the sample vertices
            params: Kernel parameters
            community: Global ids of the subgraph's vertices (identity when omitted)

        Returns:
            KernelModel with global ids and attached kernel columns
        """
        W_j = node_set(W_j, g_j.node_count)
        if not W_j:
            raise NoSamplesError("Community holds no sample vertices")
        x_W = np.asarray(x_W, dtype=float)
        if x_W.shape != (len(W_j),):
            raise ValidationError(f"{x_W.shape[0]} sample values for {len(W_j)} sample vertices")
        community = node_set(community) if community is not None else tuple(range(g_j.node_count))
        if len(community) != g_j.node_count:
            raise ValidationError("Community ids do not match the subgraph size")

        columns = build_kernel_columns(g_j.laplacian(), params, W_j)
        gram = columns[list(W_j), :]
        gram = 0.5 * (gram + gram.T)
        system = gram + params.gamma * len(W_j) * np.eye(len(W_j))
        try:
            factor = la.cho_factor(system)
        except la.LinAlgError as e:
            raise NumericalError(f"Gram block is not positive definite: {e}")
        coefficients = la.cho_solve(factor, x_W)

        scale = np.linalg.norm(x_W)
        residual = float(np.linalg.norm(system @ coefficients - x_W) / (scale if scale > 0 else 1.0))
        if residual > RESIDUAL_TOL:
            logger.warning(f"Local fit relative residual {residual:.3e} exceeds {RESIDUAL_TOL:g}")

        return KernelModel(
            community=community,
            samples=tuple(community[w] for w in W_j),
            params=params,
            coefficients=coefficients,
            kernel_columns=columns,
            residual=residual
        )

    def evaluate_local(self, model: KernelModel, v: int) -> float:
        """x*(v) = sum_i c_i K(v, w_i) for a vertex of the model's community"""
        index = model.local_index
        if v not in index:
            raise ValidationError(f"Vertex {v} is outside the model's community")
        if model.kernel_columns is None:
            raise ValidationError("Kernel columns are not attached to this model")
        return float(model.kernel_columns[index[v]] @ model.coefficients)

    def rls_objective(self, model: KernelModel, x_W, coefficients: Optional[np.ndarray] = None) -> float:
        """(1/N) sum |x(w_i) - y(w_i)|^2 + gamma ||y||_K^2 for y = sum c_i K(., w_i)"""
        c = model.coefficients if coefficients is None else np.asarray(coefficients, dtype=float)
        gram = model.gram
        fitted = gram @ c
        x_W = np.asarray(x_W, dtype=float)
        return float(np.mean((x_W - fitted) ** 2) + model.params.gamma * c @ gram @ c)

    def attach_columns(self, model: KernelModel, g_j: Graph) -> KernelModel:
        """Rebuild kernel columns for a model loaded from JSON"""
        if g_j.node_count != len(model.community):
            raise ValidationError("Subgraph does not match the model's community")
        index = model.local_index
        local_samples = [index[w] for w in model.samples]
        model.kernel_columns = build_kernel_columns(g_j.laplacian(), model.params, local_samples)
        return model
