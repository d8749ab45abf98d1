"""Rank-degeneracy loci of bipartite states via matrix pencils.

A pencil is the linear family r -> sum_i r_i A_i built from the blocks of an
ensemble's amplitude matrix.  The locus with rank bound k is handled exactly
for k = 0 (a linear condition) and by multistart minimization of the
(k+1)-th singular value for k >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidK, NotOnLocus
from .numeric import ToleranceConfig, null_space, numerical_rank
from .states import DensityMatrix, Ensemble, Side

__all__ = [
    "Pencil",
    "ProjectivePoint",
    "LinearLocus",
    "LocusSample",
    "SearchConfig",
    "LocusVerdict",
    "pencil_from_ensemble",
    "hermitian_form",
    "rank_at",
    "in_locus",
    "locus_zero",
    "sample_locus",
    "local_dimension",
    "is_locus_empty",
]

_POINT_TOL = 1e-9


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of CP^{d-1} in canonical form.

    Canonical form: unit Euclidean norm with the largest-modulus coordinate
    rotated to the positive real axis (ties broken by lowest index).
    """

    coords: np.ndarray

    @staticmethod
    def of(raw) -> "ProjectivePoint":
        v = np.asarray(raw, dtype=complex).ravel()
        norm = np.linalg.norm(v)
        if norm < 1e-300:
            raise ValueError("projective point cannot be the zero vector")
        v = v / norm
        moduli = np.abs(v)
        pivot = int(np.argmax(moduli > moduli.max() - 1e-14))
        phase = v[pivot] / abs(v[pivot])
        return ProjectivePoint(v * phase.conjugate())

    def same_point(self, other: "ProjectivePoint", tol: float = _POINT_TOL) -> bool:
        return 1.0 - abs(np.vdot(self.coords, other.coords)) <= tol

    def sort_key(self) -> tuple:
        # report order: coordinate moduli first, so points with vanishing
        # leading coordinates come before generic ones; then re/im tie-break
        rounded = np.round(self.coords, 6)
        return (tuple(np.round(np.abs(self.coords), 6)),
                tuple(x for c in rounded for x in (c.real, c.imag)))


@dataclass(frozen=True)
class Pencil:
    """The family r -> sum_i r_i blocks[i]; blocks stacked as (ambient, rows, cols)."""

    side: Side
    ambient_dim: int
    blocks: np.ndarray
    source: str = "ensemble"

    @property
    def block_shape(self) -> tuple[int, int]:
        return self.blocks.shape[1], self.blocks.shape[2]

    def evaluate(self, coords: np.ndarray) -> np.ndarray:
        return np.tensordot(coords, self.blocks, axes=(0, 0))

    def max_rank_bound(self) -> int:
        return min(self.block_shape)

    def stacked(self) -> np.ndarray:
        """(rows*cols) x ambient matrix whose column i is vec(blocks[i])."""
        return self.blocks.reshape(self.ambient_dim, -1).T


@dataclass(frozen=True)
class LinearLocus:
    """Exact rank-0 locus {r : sum r_i A_i = 0}, a projective linear subspace."""

    basis: np.ndarray
    projective_dimension: int

    def points(self) -> list[ProjectivePoint]:
        return [ProjectivePoint.of(self.basis[:, j]) for j in range(self.basis.shape[1])]

    @property
    def is_empty(self) -> bool:
        return self.projective_dimension < 0


@dataclass(frozen=True)
class SearchConfig:
    starts: int = 64
    seed: int = 0
    max_iter: int = 500
    step_tol: float = 1e-12
    armijo: float = 1e-4
    max_clusters: int = 64
    stop_at_first: bool = False


@dataclass(frozen=True)
class LocusSample:
    k: int
    points: tuple[ProjectivePoint, ...]
    residuals: tuple[float, ...]
    search_stats: dict = field(default_factory=dict)
    trivial: bool = False
    min_residual_seen: float = float("inf")


@dataclass(frozen=True)
class LocusVerdict:
    status: Literal["EMPTY_EXACT", "NONEMPTY_WITNESS", "EMPTY_HEURISTIC"]
    witness: ProjectivePoint | None = None
    min_residual: float | None = None


def pencil_from_ensemble(e: Ensemble, side: Side) -> Pencil:
    """Blocks of the mn x t amplitude matrix A, per side."""
    a = e.amplitude_tensor()
    if side == "A":
        blocks = a  # blocks[w] = a[w, :, :], n x t
        ambient = e.shape.m
    elif side == "B":
        blocks = np.transpose(a, (1, 0, 2))  # blocks[j] = a[:, j, :], m x t
        ambient = e.shape.n
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return Pencil(side, ambient, np.ascontiguousarray(blocks), source="ensemble")


def hermitian_form(rho: DensityMatrix, point: ProjectivePoint, side: Side) -> np.ndarray:
    """The form sum_{i,j} r_i r_j^* rho_ij measured against one side."""
    m, n = rho.shape.m, rho.shape.n
    r = point.coords
    tensor = rho.matrix.reshape(m, n, m, n)
    if side == "A":
        if r.size != m:
            raise DimensionMismatch(f"point has {r.size} coordinates, side A needs {m}")
        return np.einsum("i,j,iajb->ab", r, r.conj(), tensor)
    if side == "B":
        if r.size != n:
            raise DimensionMismatch(f"point has {r.size} coordinates, side B needs {n}")
        return np.einsum("j,l,ajbl->ab", r, r.conj(), tensor)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def rank_at(p: Pencil, point: ProjectivePoint, tol: ToleranceConfig = ToleranceConfig()) -> int:
    if point.coords.size != p.ambient_dim:
        raise DimensionMismatch(
            f"point has {point.coords.size} coordinates, pencil ambient is {p.ambient_dim}")
    return numerical_rank(p.evaluate(point.coords), tol)


def in_locus(p: Pencil, k: int, point: ProjectivePoint,
             tol: ToleranceConfig = ToleranceConfig()) -> bool:
    if k < 0:
        raise InvalidK("rank bound k must be nonnegative")
    return rank_at(p, point, tol) <= k


def locus_zero(p: Pencil, tol: ToleranceConfig = ToleranceConfig()) -> LinearLocus:
    """Exact rank-0 locus: null space of the stacked block matrix."""
    basis = null_space(p.stacked(), tol)
    return LinearLocus(basis, basis.shape[1] - 1)


def _sigma_and_grad(p: Pencil, r: np.ndarray, k: int):
    """sigma_{k+1} at r and its complex gradient over the coordinates."""
    M = p.evaluate(r)
    U, s, Vh = np.linalg.svd(M)
    f = s[k]
    u = U[:, k]
    v = Vh[k, :].conj()
    # d sigma = Re(u^dag (sum dr_i A_i) v); steepest direction is conj(u^dag A_i v)
    c = np.einsum("a,iab,b->i", u.conj(), p.blocks, v)
    return f, c.conj(), M, s


def _minimize_sigma(p: Pencil, k: int, r0: np.ndarray, config: SearchConfig):
    """Projected gradient descent with backtracking on the unit sphere."""
    r = r0 / np.linalg.norm(r0)
    f, g, M, _ = _sigma_and_grad(p, r, k)
    alpha = 1.0
    converged = False
    for _ in range(config.max_iter):
        if f < 1e-14:
            converged = True
            break
        gt = g - np.vdot(r, g) * r
        gnorm = np.linalg.norm(gt)
        if gnorm < 1e-16:
            converged = True
            break
        step = alpha
        accepted = False
        for _ in range(60):
            trial = r - step * gt
            trial /= np.linalg.norm(trial)
            if np.linalg.norm(trial - r) < config.step_tol:
                break
            ft, gtrial, Mt, _ = _sigma_and_grad(p, trial, k)
            if ft < f - config.armijo * step * gnorm * gnorm:
                r, f, g, M = trial, ft, gtrial, Mt
                accepted = True
                break
            step /= 2.0
        if not accepted:
            converged = True
            break
        alpha = min(step * 2.0, 1.0)
    return r, f, M, converged


def sample_locus(p: Pencil, k: int, config: SearchConfig = SearchConfig(),
                 tol: ToleranceConfig = ToleranceConfig()) -> LocusSample:
    """Multistart search for points with sigma_{k+1} below the rank threshold.

    An empty point list is a failure to find, not a proof of emptiness.
    """
    if k < 0:
        raise InvalidK("rank bound k must be nonnegative")
    if k >= p.max_rank_bound():
        return LocusSample(k, (), (), {"starts": 0, "converged": 0}, trivial=True,
                           min_residual_seen=0.0)
    if np.linalg.norm(p.blocks) < tol.abs_floor:
        # all-zero pencil: every point has rank 0
        return LocusSample(k, (), (), {"starts": 0, "converged": 0}, trivial=True,
                           min_residual_seen=0.0)
    rng = np.random.default_rng(config.seed)
    found: list[tuple[ProjectivePoint, float]] = []
    converged_count = 0
    min_residual = float("inf")
    for _ in range(config.starts):
        r0 = rng.standard_normal(p.ambient_dim) + 1j * rng.standard_normal(p.ambient_dim)
        r, f, M, converged = _minimize_sigma(p, k, r0, config)
        if converged:
            converged_count += 1
        min_residual = min(min_residual, f)
        if f <= tol.threshold(M):
            candidate = ProjectivePoint.of(r)
            if not any(candidate.same_point(q) for q, _ in found):
                found.append((candidate, f))
            if config.stop_at_first:
                break
    found.sort(key=lambda item: item[0].sort_key())
    found = found[:config.max_clusters]
    points = tuple(q for q, _ in found)
    residuals = tuple(f for _, f in found)
    stats = {"starts": config.starts, "converged": converged_count}
    return LocusSample(k, points, residuals, stats, trivial=False,
                       min_residual_seen=min_residual)


def _minor_jacobian(p: Pencil, r: np.ndarray, k: int) -> np.ndarray:
    """Complex Jacobian of all (k+1)x(k+1) minors of the pencil at r."""
    rows, cols = p.block_shape
    M = p.evaluate(r)
    size = k + 1
    row_sets = list(combinations(range(rows), size))
    col_sets = list(combinations(range(cols), size))
    jac = np.zeros((len(row_sets) * len(col_sets), p.ambient_dim), dtype=complex)
    idx = 0
    for R in row_sets:
        for C in col_sets:
            S = M[np.ix_(R, C)]
            cof = np.zeros((size, size), dtype=complex)
            for a in range(size):
                for b in range(size):
                    sub = np.delete(np.delete(S, a, axis=0), b, axis=1)
                    det = np.linalg.det(sub) if size > 1 else 1.0
                    cof[a, b] = (-1) ** (a + b) * det
            # Jacobi's formula: d det(S)/dr_i = sum_ab cofactor_ab * dS_ab/dr_i
            sub_blocks = p.blocks[:, R, :][:, :, C]
            jac[idx] = np.einsum("ab,iab->i", cof, sub_blocks)
            idx += 1
    return jac


def local_dimension(p: Pencil, k: int, point: ProjectivePoint,
                    tol: ToleranceConfig = ToleranceConfig()) -> int:
    """Estimated projective dimension of the rank-k locus at a member point.

    The minors are holomorphic in the coordinates, so the real-parameterized
    Jacobian rank is twice the complex one; quotienting the scaling direction
    leaves ambient-1 minus the complex Jacobian rank.
    """
    if not in_locus(p, k, point, tol):
        raise NotOnLocus("point is not on the requested locus")
    jac = _minor_jacobian(p, point.coords, k)
    return p.ambient_dim - 1 - numerical_rank(jac, tol)


def is_locus_empty(p: Pencil, k: int, config: SearchConfig = SearchConfig(),
                   tol: ToleranceConfig = ToleranceConfig()) -> LocusVerdict:
    """Exact emptiness for k = 0; sampled one-sided evidence for k >= 1."""
    if k < 0:
        raise InvalidK("rank bound k must be nonnegative")
    if k == 0:
        locus = locus_zero(p, tol)
        if locus.is_empty:
            return LocusVerdict("EMPTY_EXACT")
        return LocusVerdict("NONEMPTY_WITNESS", witness=locus.points()[0])
    sample = sample_locus(p, k, config, tol)
    if sample.trivial:
        witness = ProjectivePoint.of(np.eye(p.ambient_dim)[0])
        return LocusVerdict("NONEMPTY_WITNESS", witness=witness, min_residual=0.0)
    if sample.points:
        return LocusVerdict("NONEMPTY_WITNESS", witness=sample.points[0],
                            min_residual=sample.residuals[0])
    return LocusVerdict("EMPTY_HEURISTIC", min_residual=sample.min_residual_seen)
