"""Eigendecompositions, empirical spectral distributions, spectral measures
at a vector, Stieltjes transforms, and Monte Carlo estimation of the
limiting measure.

A :class:`PointMeasure` is a finite list of weighted atoms standing for an
ESD or a spectral measure; all distances in :mod:`htt.metrics` act on it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .limit_operator import (
    OperatorWindow,
    operator_window,
    projection_unit_vector,
)
from .matrices import TruncationLevels
from .sampler import AlphaParams, Environment, RngSeed, _environment_from, redraw_phases

__all__ = [
    "PointMeasure",
    "EigenSystem",
    "eig_hermitian",
    "esd",
    "spectral_measure_at",
    "vector_moment",
    "stieltjes",
    "window_measure_at_unit_vector",
    "mc_limit_measure",
    "resolvent_identity_residual",
]

_NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class PointMeasure:
    """Finite atomic measure: sorted locations, positive weights, and an
    optional replica id per atom (so pooled Monte Carlo output retains its
    per-environment sub-measures)."""

    locations: np.ndarray
    weights: np.ndarray
    normalized: bool = True
    replica_ids: np.ndarray | None = None

    def __post_init__(self):
        if self.normalized and abs(self.weights.sum() - 1.0) > _NORMALIZATION_TOL:
            raise ValueError(f"weights sum to {self.weights.sum()!r}, not 1")

    @classmethod
    def from_atoms(cls, locations, weights, replica_ids=None, normalized: bool = True):
        """Canonicalize: sort by location; merge exact duplicates unless
        replica ids must be kept atom-by-atom."""
        locations = np.asarray(locations, dtype=float)
        weights = np.asarray(weights, dtype=float)
        if locations.ndim != 1 or locations.shape != weights.shape:
            raise ValueError("locations and weights must be 1-d of equal length")
        if locations.size == 0:
            raise ValueError("a point measure needs at least one atom")
        if np.any(weights < 0):
            raise ValueError("weights must be nonnegative")
        order = np.argsort(locations, kind="stable")
        locations = locations[order]
        weights = weights[order]
        if replica_ids is None:
            uniq, inverse = np.unique(locations, return_inverse=True)
            if uniq.size < locations.size:
                merged = np.zeros(uniq.size)
                np.add.at(merged, inverse, weights)
                locations, weights = uniq, merged
        else:
            replica_ids = np.asarray(replica_ids)[order]
        return cls(locations, weights, normalized=normalized, replica_ids=replica_ids)

    def __len__(self) -> int:
        return self.locations.shape[0]

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def cdf(self, x, side: str = "right") -> np.ndarray:
        """Right-continuous CDF at x; side='left' gives the left limit."""
        cum = np.cumsum(self.weights)
        idx = np.searchsorted(self.locations, x, side=side)
        return np.where(idx > 0, cum[np.maximum(idx, 1) - 1], 0.0)

    def mean(self) -> float:
        return float(self.weights @ self.locations)

    def moment(self, r: int) -> float:
        return float(self.weights @ self.locations**r)

    def reflected(self) -> "PointMeasure":
        """Mirror image x -> -x."""
        return PointMeasure.from_atoms(
            -self.locations,
            self.weights,
            replica_ids=self.replica_ids,
            normalized=self.normalized,
        )


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def eig_hermitian(a: np.ndarray) -> EigenSystem:
    """Full Hermitian eigendecomposition; rejects visibly non-Hermitian input."""
    a = np.asarray(a)
    scale = np.abs(a).max() if a.size else 0.0
    asym = np.abs(a - a.conj().T).max()
    if asym > 1e-10 * max(scale, 1e-300):
        raise ValueError(f"matrix is not Hermitian: max asymmetry {asym:g}")
    values, vectors = np.linalg.eigh(a)
    return EigenSystem(values=values, vectors=vectors)


def esd(values) -> PointMeasure:
    """Empirical spectral distribution: equal weight 1/n on each value."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("empty spectrum")
    return PointMeasure.from_atoms(values, np.full(values.size, 1.0 / values.size))


def spectral_measure_at(a: np.ndarray, v: np.ndarray) -> PointMeasure:
    """Spectral measure of Hermitian a at the unit vector v: atoms at the
    eigenvalues with weights |<v, phi_i>|^2.  Eigenvalues the vector has
    exactly zero overlap with carry no atom."""
    v = np.asarray(v)
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"v must be a unit vector, got norm {nrm!r}")
    system = eig_hermitian(a)
    weights = np.abs(system.vectors.conj().T @ v) ** 2
    keep = weights > 0.0
    return PointMeasure.from_atoms(
        system.values[keep], weights[keep] / weights[keep].sum()
    )


def vector_moment(a: np.ndarray, v: np.ndarray, r: int) -> float:
    """<v, a^r v> by repeated matrix-vector products."""
    if r < 0:
        raise ValueError(f"moment order must be >= 0, got {r}")
    w = np.asarray(v).astype(complex)
    for _ in range(r):
        w = a @ w
    out = np.vdot(v, w)
    return float(out.real)


def stieltjes(m: PointMeasure, z: complex) -> complex:
    """sum_i w_i / (x_i - z) for non-real z.  Maps the upper half-plane to
    itself (Herglotz)."""
    z = complex(z)
    if z.imag == 0.0:
        raise ValueError("z must have nonzero imaginary part")
    return complex(np.sum(m.weights / (m.locations - z)))


def window_measure_at_unit_vector(
    window: OperatorWindow, core_radius: int | None = None
) -> PointMeasure:
    """Spectral measure of a window at the projected basis vector.

    The vector sqrt(2) * (projection column at 0) is restricted to
    |k| <= core_radius (default: half_width minus the band width margin is
    the caller's business; None keeps the whole window) and renormalized.
    """
    w = window.half_width
    v = projection_unit_vector(w)
    if core_radius is not None:
        if not 1 <= core_radius <= w:
            raise ValueError(f"core radius must lie in [1, {w}]")
        ks = np.arange(-w, w + 1)
        v = np.where(np.abs(ks) <= core_radius, v, 0.0)
    v = v / np.linalg.norm(v)
    return spectral_measure_at(window.matrix, v)


def _limit_measure_replica(
    params: AlphaParams,
    levels: TruncationLevels,
    inner: int,
    seed: RngSeed,
    symmetrize: bool,
) -> tuple[np.ndarray, np.ndarray]:
    """Atoms and weights (weights summing to `inner`) for one environment."""
    rng = seed.generator()
    env = _environment_from(rng, levels.j, params)
    core = levels.w - levels.l if levels.w > levels.l else levels.w
    locs = []
    wts = []
    for _ in range(inner):
        window = operator_window(env, levels)
        measure = window_measure_at_unit_vector(window, core_radius=core)
        if symmetrize:
            locs += [measure.locations, -measure.locations]
            wts += [measure.weights / 2.0, measure.weights / 2.0]
        else:
            locs.append(measure.locations)
            wts.append(measure.weights)
        env = redraw_phases(env, rng)
    return np.concatenate(locs), np.concatenate(wts)


def mc_limit_measure(
    params: AlphaParams,
    levels: TruncationLevels,
    replicas: int,
    inner: int,
    seed: RngSeed,
    symmetrize: bool = True,
    workers: int = 1,
) -> PointMeasure:
    """Monte Carlo estimate of the limiting measure: the expected spectral
    measure of the truncated operator window at the projected basis vector.

    Each replica draws a fresh environment on its own stream; `inner` phase
    redraws average over the conditional (phase) randomness within each
    environment.  All (replica, redraw) pairs are pooled with equal weight.
    With ``symmetrize`` (default) each draw also contributes its mirror
    image at half weight -- the limit law is symmetric, so this halves the
    estimator variance without bias.  Atoms keep their replica id, so
    per-environment (quenched) sub-measures remain recoverable.
    """
    if replicas < 1 or inner < 1:
        raise ValueError("replicas and inner must be >= 1")
    tasks = [
        (params, levels, inner, seed.with_stream(seed.stream + r), symmetrize)
        for r in range(replicas)
    ]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_limit_measure_replica_star, tasks))
    else:
        results = [_limit_measure_replica(*t) for t in tasks]

    scale = 1.0 / (replicas * inner)
    locs = np.concatenate([loc for loc, _ in results])
    wts = np.concatenate([w * scale for _, w in results])
    ids = np.concatenate(
        [np.full(len(loc), r) for r, (loc, _) in enumerate(results)]
    )
    wts = wts / wts.sum()
    return PointMeasure.from_atoms(locs, wts, replica_ids=ids)


def _limit_measure_replica_star(args):
    return _limit_measure_replica(*args)


def quenched_sub_measure(pooled: PointMeasure, replica: int) -> PointMeasure:
    """Extract one environment's conditional measure from a pooled estimate."""
    if pooled.replica_ids is None:
        raise ValueError("pooled measure carries no replica ids")
    mask = pooled.replica_ids == replica
    if not mask.any():
        raise ValueError(f"no atoms for replica {replica}")
    w = pooled.weights[mask]
    return PointMeasure.from_atoms(pooled.locations[mask], w / w.sum())


def resolvent_identity_residual(
    env: Environment, levels: TruncationLevels, z: complex
) -> float:
    """Residual of the resolvent identity linking the spectral measures at
    the origin basis vector and at the projected basis vector:

        2 <e0, (A - z)^-1 e0> + 1/z  =  <u, (A - z)^-1 u>,

    exact for the infinite operator with untruncated projection; evaluated
    here on the window with band width 2w (projection untruncated at window
    scale), so the residual measures window convergence and decays like 1/w.
    """
    z = complex(z)
    if z.imag == 0.0:
        raise ValueError("z must have nonzero imaginary part")
    w = levels.w
    window = operator_window(env, replace_levels_band(levels, 2 * w))
    e0 = window.basis_vector(0)
    u = projection_unit_vector(w)
    u = u / np.linalg.norm(u)
    system = eig_hermitian(window.matrix)
    res = system.vectors.conj().T @ np.column_stack([e0.astype(complex), u])
    s_e0, s_u = (np.abs(res) ** 2 / (system.values - z)[:, None]).sum(axis=0)
    return abs(2.0 * s_e0 + 1.0 / z - s_u)


def replace_levels_band(levels: TruncationLevels, l: int) -> TruncationLevels:
    return TruncationLevels(m=levels.m, k=levels.k, l=l, w=levels.w, j=levels.j)
