"""Dense complex linear algebra with a single shared tolerance policy.

All rank decisions in the package go through :class:`ToleranceConfig` so that
locus membership, null spaces and Schmidt ranks stay mutually consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NotSquare

__all__ = [
    "ToleranceConfig",
    "EigResult",
    "SVDResult",
    "as_matrix",
    "hermitian_eig",
    "svd",
    "numerical_rank",
    "null_space",
]

_HERM_REL = 1e-10


@dataclass(frozen=True)
class ToleranceConfig:
    """Rank threshold policy: max(rank_rel_tol * sigma_max * max(rows, cols), abs_floor)."""

    rank_rel_tol: float = 1e-8
    abs_floor: float = 1e-12

    def threshold(self, matrix: np.ndarray) -> float:
        matrix = as_matrix(matrix)
        if matrix.size == 0:
            return self.abs_floor
        sigma_max = np.linalg.norm(matrix, 2)
        return max(self.rank_rel_tol * sigma_max * max(matrix.shape), self.abs_floor)

    def threshold_from_sigma(self, sigma_max: float, rows: int, cols: int) -> float:
        return max(self.rank_rel_tol * sigma_max * max(rows, cols), self.abs_floor)


@dataclass(frozen=True)
class EigResult:
    """Eigenvalues sorted nonincreasing; eigenvectors as unitary columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class SVDResult:
    """Singular values sorted nonincreasing; U and V with orthonormal columns."""

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray


def as_matrix(entries, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce input to a finite 2-D complex array (row-major)."""
    matrix = np.asarray(entries, dtype=complex)
    if rows is not None:
        matrix = matrix.reshape(rows, cols)
    if matrix.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={matrix.ndim}")
    if not np.all(np.isfinite(matrix.real)) or not np.all(np.isfinite(matrix.imag)):
        raise ValueError("matrix entries must be finite")
    return matrix


def hermitian_eig(H) -> EigResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues nonincreasing."""
    H = as_matrix(H)
    if H.shape[0] != H.shape[1]:
        raise NotSquare(f"matrix is {H.shape[0]}x{H.shape[1]}")
    scale = 1.0 + np.linalg.norm(H)
    if np.linalg.norm(H - H.conj().T) > _HERM_REL * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    eigenvalues, eigenvectors = np.linalg.eigh((H + H.conj().T) / 2.0)
    order = np.argsort(eigenvalues)[::-1]
    return EigResult(eigenvalues[order], eigenvectors[:, order])


def svd(M) -> SVDResult:
    """Singular value decomposition M = U diag(s) V^dagger (thin form)."""
    M = as_matrix(M)
    U, s, Vh = np.linalg.svd(M, full_matrices=True)
    return SVDResult(s, U, Vh.conj().T)


def singular_values(M) -> np.ndarray:
    M = as_matrix(M)
    return np.linalg.svd(M, compute_uv=False)


def numerical_rank(M, tol: ToleranceConfig = ToleranceConfig()) -> int:
    """Number of singular values strictly above the shared rank threshold."""
    M = as_matrix(M)
    if M.size == 0:
        return 0
    s = singular_values(M)
    cut = tol.threshold_from_sigma(s[0] if len(s) else 0.0, *M.shape)
    return int(np.sum(s > cut))


def null_space(M, tol: ToleranceConfig = ToleranceConfig()) -> np.ndarray:
    """Orthonormal basis of the right null space, as columns (possibly 0 columns)."""
    M = as_matrix(M)
    res = svd(M)
    rank = numerical_rank(M, tol)
    return res.right_vectors[:, rank:]
