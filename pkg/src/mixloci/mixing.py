"""Executable necessary conditions for mixing bipartite states.

Covers eigenvalue majorization (uni-partite and reduced), locus-containment
infeasibility certificates, Schmidt-rank caps from the exact rank-0 locus,
and the genericity (measure-zero) predicate with its Monte-Carlo verifier.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Literal, Sequence

import numpy as np

from .errors import InvalidK, ParameterOutOfRange, ShapeMismatch, WeightSumInvalid
from .loci import (Pencil, ProjectivePoint, SearchConfig, is_locus_empty, locus_zero,
                   pencil_from_ensemble, sample_locus)
from .numeric import ToleranceConfig, singular_values
from .states import (BipartiteShape, DensityMatrix, Ensemble, Side, eigen_ensemble,
                     partial_trace, random_density, schmidt_rank)

__all__ = [
    "MixCertificate",
    "MixVerdict",
    "GenericityQuery",
    "GenericityReport",
    "majorizes",
    "check_pure_mix_eigen",
    "check_mixed_mix_eigen",
    "check_reduced_constraints",
    "check_component_necessary",
    "schmidt_rank_cap",
    "forces_separable",
    "excludes_max_schmidt_rank",
    "check_ensemble_schmidt",
    "generic_empty_predicate",
    "monte_carlo_genericity",
]

_SUM_TOL = 1e-9
_GUARD = 10.0


@dataclass(frozen=True)
class MixCertificate:
    """Witness in V^k(target) but outside V^k(component): mixing is impossible."""

    witness: ProjectivePoint
    side: Side
    k: int
    rank_in_target: int
    rank_in_component: int
    residual_target: float
    residual_component: float


@dataclass(frozen=True)
class MixVerdict:
    status: Literal["INFEASIBLE", "NO_OBSTRUCTION_FOUND"]
    certificate: MixCertificate | None = None
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GenericityQuery:
    m: int
    n: int
    r: int
    t: int
    trials: int
    seed: int = 0

    def __post_init__(self):
        if not (self.m >= 1 and self.n >= 1):
            raise ParameterOutOfRange("m and n must be >= 1")
        if not 1 <= self.r <= self.m * self.n:
            raise ParameterOutOfRange(f"rank r={self.r} outside [1, {self.m * self.n}]")
        if self.trials < 0:
            raise ParameterOutOfRange("trials must be nonnegative")


@dataclass(frozen=True)
class GenericityReport:
    predicate_holds: bool
    codimension: int
    nonempty_fraction: float | None
    min_residuals: tuple[float, ...]
    residual_summary: dict
    witnesses: tuple[ProjectivePoint | None, ...] = ()


def majorizes(r: Sequence[float], s: Sequence[float], tol: float = _SUM_TOL) -> bool:
    """True iff r is majorized by s: partial sums of the decreasing
    rearrangements are dominated and the totals agree."""
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    size = max(r.size, s.size)
    r = np.sort(np.pad(r, (0, size - r.size)))[::-1]
    s = np.sort(np.pad(s, (0, size - s.size)))[::-1]
    rc, sc = np.cumsum(r), np.cumsum(s)
    if abs(rc[-1] - sc[-1]) > tol:
        return False
    return bool(np.all(rc[:-1] <= sc[:-1] + tol))


def _check_weights(weights) -> np.ndarray:
    weights = np.asarray(weights, dtype=float)
    if weights.size == 0 or np.any(weights <= 0):
        raise WeightSumInvalid("weights must be positive")
    if abs(weights.sum() - 1.0) > _SUM_TOL:
        raise WeightSumInvalid(f"weights sum to {weights.sum()!r}, expected 1")
    return weights


def check_pure_mix_eigen(rho: DensityMatrix, probs: Sequence[float]) -> bool:
    """A pure-state decomposition with weights (p_i) exists iff (p_i) is
    majorized by the spectrum of rho."""
    probs = _check_weights(probs)
    return majorizes(probs, rho.eigenvalues())


def check_mixed_mix_eigen(rho: DensityMatrix, weights: Sequence[float],
                          components: Sequence[DensityMatrix]) -> bool:
    """Necessary for rho = sum p_j rho_j: lambda(rho) majorized by the
    weighted average of the component spectra."""
    weights = _check_weights(weights)
    if len(weights) != len(components):
        raise WeightSumInvalid("weights and components differ in length")
    for c in components:
        if c.shape != rho.shape:
            raise ShapeMismatch("component shape mismatch")
    averaged = sum(w * c.eigenvalues() for w, c in zip(weights, components))
    return majorizes(rho.eigenvalues(), averaged)


def _reduced_spectrum(rho: DensityMatrix, side: Side) -> np.ndarray:
    reduced = partial_trace(rho, side)
    return np.sort(np.linalg.eigvalsh((reduced + reduced.conj().T) / 2))[::-1]


def check_reduced_constraints(rho: DensityMatrix, weights: Sequence[float],
                              components: Sequence[DensityMatrix]) -> bool:
    """Apply the mixed-state eigenvalue constraint to both partial traces."""
    weights = _check_weights(weights)
    for side in ("A", "B"):
        averaged = sum(w * _reduced_spectrum(c, side) for w, c in zip(weights, components))
        if not majorizes(_reduced_spectrum(rho, side), averaged):
            return False
    return True


def _certificate_at(point: ProjectivePoint, target_pencil: Pencil, component_pencil: Pencil,
                    side: Side, k: int, tol: ToleranceConfig) -> MixCertificate | None:
    """Apply guard bands: refuse rank calls close to the threshold."""
    Mt = target_pencil.evaluate(point.coords)
    Mc = component_pencil.evaluate(point.coords)
    st = singular_values(Mt)
    sc = singular_values(Mc)
    res_t = st[k] if k < st.size else 0.0
    res_c = sc[k] if k < sc.size else 0.0
    if res_t > tol.threshold(Mt) / _GUARD:
        return None
    if res_c < _GUARD * tol.threshold(Mc):
        return None
    return MixCertificate(point, side, k,
                          rank_in_target=int(np.sum(st > tol.threshold(Mt))),
                          rank_in_component=int(np.sum(sc > tol.threshold(Mc))),
                          residual_target=float(res_t),
                          residual_component=float(res_c))


def _locus_candidates(pencil: Pencil, k: int, config: SearchConfig,
                      tol: ToleranceConfig) -> tuple[list[ProjectivePoint], dict]:
    if k == 0:
        locus = locus_zero(pencil, tol)
        points = locus.points()
        if locus.projective_dimension >= 1:
            # positive-dimensional subspace: add random combinations as extra probes
            rng = np.random.default_rng(config.seed)
            for _ in range(8):
                coeff = rng.standard_normal(locus.basis.shape[1]) \
                    + 1j * rng.standard_normal(locus.basis.shape[1])
                points.append(ProjectivePoint.of(locus.basis @ coeff))
        return points, {"mode": "exact", "dimension": locus.projective_dimension}
    sample = sample_locus(pencil, k, config, tol)
    stats = dict(sample.search_stats)
    stats.update(mode="sampled", found=len(sample.points),
                 min_residual=sample.min_residual_seen, trivial=sample.trivial)
    return list(sample.points), stats


def check_component_necessary(target: DensityMatrix, component: DensityMatrix,
                              side: Side = "A", k: int | None = None,
                              config: SearchConfig = SearchConfig(),
                              tol: ToleranceConfig = ToleranceConfig()) -> MixVerdict:
    """Search V^k(target) for a point outside V^k(component).

    Such a point certifies that no positive weights and no further components
    can make `component` appear in any mixture equal to `target`.  With k=None
    every admissible rank bound is scanned, cheapest (exact k=0) first.
    A NO_OBSTRUCTION_FOUND verdict is a semidecision, not a feasibility proof.
    """
    if target.shape != component.shape:
        raise ShapeMismatch("target and component shapes differ")
    target_pencil = pencil_from_ensemble(eigen_ensemble(target, tol), side)
    component_pencil = pencil_from_ensemble(eigen_ensemble(component, tol), side)
    max_k = target_pencil.max_rank_bound()
    if k is None:
        ks = range(0, max_k)
    else:
        if not 0 <= k < max_k:
            raise InvalidK(f"k={k} outside [0, {max_k})")
        ks = [k]
    all_stats = {}
    for kk in ks:
        points, stats = _locus_candidates(target_pencil, kk, config, tol)
        all_stats[kk] = stats
        for point in points:
            cert = _certificate_at(point, target_pencil, component_pencil, side, kk, tol)
            if cert is not None:
                return MixVerdict("INFEASIBLE", certificate=cert, stats=all_stats)
    return MixVerdict("NO_OBSTRUCTION_FOUND", stats=all_stats)


def _zero_locus_dimension(rho: DensityMatrix, side: Side, tol: ToleranceConfig) -> int:
    pencil = pencil_from_ensemble(eigen_ensemble(rho, tol), side)
    return locus_zero(pencil, tol).projective_dimension


def schmidt_rank_cap(rho: DensityMatrix, tol: ToleranceConfig = ToleranceConfig()) -> int:
    """Upper bound on the Schmidt rank of any pure state in any ensemble of rho."""
    m, n = rho.shape.m, rho.shape.n
    cap_a = m - 1 - _zero_locus_dimension(rho, "A", tol)
    cap_b = n - 1 - _zero_locus_dimension(rho, "B", tol)
    return min(cap_a, cap_b, m, n)


def forces_separable(rho: DensityMatrix, tol: ToleranceConfig = ToleranceConfig()) -> bool:
    """True iff the rank-0 locus dimension forces every ensemble member separable."""
    m, n = rho.shape.m, rho.shape.n
    return (_zero_locus_dimension(rho, "A", tol) == m - 2
            or _zero_locus_dimension(rho, "B", tol) == n - 2)


def excludes_max_schmidt_rank(rho: DensityMatrix,
                              tol: ToleranceConfig = ToleranceConfig()) -> bool:
    """True iff a nonempty rank-0 locus rules out Schmidt rank min(m, n) members."""
    return (_zero_locus_dimension(rho, "A", tol) >= 0
            or _zero_locus_dimension(rho, "B", tol) >= 0)


def check_ensemble_schmidt(schmidt_number_lower_bound: int, e: Ensemble,
                           tol: ToleranceConfig = ToleranceConfig()) -> bool:
    """Necessary check: some member must reach the supplied Schmidt-number bound."""
    if schmidt_number_lower_bound < 1:
        raise ParameterOutOfRange("Schmidt-number lower bound must be >= 1")
    return max(schmidt_rank(psi, tol) for _, psi in e.members) >= schmidt_number_lower_bound


def generic_empty_predicate(q: GenericityQuery) -> bool:
    """(m - t)(r - t) >= m: generic rank-r states have an empty rank-t locus."""
    if not 0 <= q.t < min(q.m, q.r):
        raise ParameterOutOfRange(f"t={q.t} outside [0, min(m, r))")
    return (q.m - q.t) * (q.r - q.t) >= q.m


def monte_carlo_genericity(q: GenericityQuery, config: SearchConfig = SearchConfig(),
                           tol: ToleranceConfig = ToleranceConfig()) -> GenericityReport:
    """Sample random rank-r states and probe their rank-t loci empirically.

    Per-trial seeds derive from (master seed, trial index), so results do not
    depend on execution order.
    """
    predicate = generic_empty_predicate(q)
    codim = (q.m - q.t) * (q.r - q.t)
    shape = BipartiteShape(q.m, q.n)
    nonempty = 0
    residuals = []
    witnesses = []
    for trial in range(q.trials):
        rho = random_density(shape, q.r, seed=[q.seed, trial])
        pencil = pencil_from_ensemble(eigen_ensemble(rho, tol), "A")
        trial_config = replace(config, seed=config.seed + trial)
        verdict = is_locus_empty(pencil, q.t, trial_config, tol)
        if verdict.status == "NONEMPTY_WITNESS":
            nonempty += 1
        witnesses.append(verdict.witness)
        if verdict.min_residual is not None:
            residuals.append(verdict.min_residual)
    fraction = nonempty / q.trials if q.trials > 0 else None
    summary = {}
    if residuals:
        arr = np.asarray(residuals)
        summary = {"min": float(arr.min()), "median": float(np.median(arr)),
                   "max": float(arr.max())}
    return GenericityReport(predicate, codim, fraction, tuple(residuals), summary,
                            tuple(witnesses))
