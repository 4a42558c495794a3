"""Finite windows of the limiting objects on l2(Z): the half-frequency
projection kernel, the random cosine-series diagonal, and their sandwich.

The projection kernel is the Fourier-side indicator of [0, 1/2]:

    entry(k, l) = 1/2            if k == l,
                  0              if k != l and k - l even,
                  -i/(pi (k-l))  if k - l odd.

Band truncation here is a straight band on Z (no circular wrap), unlike the
matrix-side truncation in :mod:`htt.matrices` which wraps on [2N].  Keeping
the two in separate modules avoids mixing the conventions.

Windows are exact compressions: the inner summation index of the triple
product is padded by the band width on both sides, so every retained band
entry sees its full band and the window entries coincide with the infinite
operator's matrix elements throughout the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .matrices import TruncationLevels
from .sampler import Environment

__all__ = [
    "CosineSeries",
    "OperatorWindow",
    "projection_entry",
    "projection_window",
    "projection_unit_vector",
    "series_coefficients",
    "series_value",
    "series_values",
    "shift_environment",
    "window_from_diagonal",
    "operator_window",
]


def projection_entry(k: int, l: int) -> complex:
    """Kernel entry of the half-frequency projection at (k, l)."""
    d = k - l
    if d == 0:
        return 0.5 + 0.0j
    if d % 2 == 0:
        return 0.0 + 0.0j
    return -1j / (math.pi * d)


def _projection_block(rows: np.ndarray, cols: np.ndarray, band: int | None) -> np.ndarray:
    """Kernel entries on rows x cols, band-zeroed beyond |k-l| > band."""
    d = rows[:, None] - cols[None, :]
    out = np.zeros(d.shape, dtype=complex)
    odd = d % 2 != 0
    out[odd] = -1j / (np.pi * d[odd])
    out[d == 0] = 0.5
    if band is not None:
        out[np.abs(d) > band] = 0.0
    return out


def projection_window(w: int, band: int | None = None) -> np.ndarray:
    """(2w+1)-dimensional Hermitian window of the projection kernel,
    indexed by k in {-w, ..., w}; optional straight band truncation."""
    if w < 1:
        raise ValueError(f"half-width must be >= 1, got {w}")
    if band is not None and band > 2 * w:
        raise ValueError(f"band {band} exceeds the window span {2 * w}")
    ks = np.arange(-w, w + 1)
    return _projection_block(ks, ks, band)


def projection_unit_vector(w: int) -> np.ndarray:
    """sqrt(2) times the kernel column at 0, restricted to |k| <= w.

    The squared norm tends to 1 as w grows (it is >= 0.999 from w = 512 on);
    normalize before using it as a spectral-measure vector.
    """
    if w < 1:
        raise ValueError(f"half-width must be >= 1, got {w}")
    ks = np.arange(-w, w + 1)
    return np.sqrt(2.0) * _projection_block(ks, np.array([0]), None)[:, 0]


@dataclass(frozen=True)
class CosineSeries:
    """Random cosine series 2*sum_j g_j**(-1/alpha) cos(2 pi (u_j + k zeta_j)).

    terms caps the series length; clip replaces g_j by max(g_j, clip**-alpha)
    so every coefficient is at most clip; top_k keeps only j < top_k.  With
    both set, values are bounded by 2 * clip * top_k.
    """

    env: Environment
    terms: int | None = None
    clip: float | None = None
    top_k: int | None = None

    def _coeff_count(self) -> int:
        n = len(self.env)
        if self.terms is not None:
            n = min(n, self.terms)
        if self.top_k is not None:
            n = min(n, self.top_k)
        return n


def series_coefficients(series: CosineSeries) -> np.ndarray:
    """Coefficients g_j**(-1/alpha) (clipped if requested), j < effective length."""
    n = series._coeff_count()
    g = series.env.gamma[:n]
    if series.clip is not None:
        g = np.maximum(g, series.clip ** (-series.env.alpha))
    return g ** (-1.0 / series.env.alpha)


def series_value(series: CosineSeries, k: int) -> float:
    """Series value at integer offset k, summed in ascending j with
    compensated summation."""
    n = series._coeff_count()
    coeff = series_coefficients(series)
    phase = np.mod(series.env.u[:n] + k * series.env.zeta[:n], 1.0)
    return 2.0 * math.fsum(coeff * np.cos(2.0 * np.pi * phase))


def series_values(series: CosineSeries, ks: np.ndarray) -> np.ndarray:
    """Vectorized series values at integer offsets ks."""
    n = series._coeff_count()
    coeff = series_coefficients(series)
    phase = np.mod(series.env.u[:n, None] + np.outer(series.env.zeta[:n], ks), 1.0)
    return 2.0 * coeff @ np.cos(2.0 * np.pi * phase)


def shift_environment(env: Environment, l: int) -> Environment:
    """Coordinatewise rotation of the phases: u_j -> frac(u_j + l*zeta_j).

    Shifting the environment by l and evaluating the series at k gives the
    original series at k + l exactly (phases live on a dyadic grid, so the
    identity holds in floating point, not just up to rounding).
    """
    u = np.mod(env.u + float(l) * env.zeta, 1.0)
    return replace(env, u=u)


@dataclass(frozen=True)
class OperatorWindow:
    """Dense Hermitian window of the compressed operator, indexed by
    k in {-half_width, ..., half_width}."""

    half_width: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * self.half_width + 1

    def basis_vector(self, k: int = 0) -> np.ndarray:
        """Standard basis vector e_k within the window."""
        if abs(k) > self.half_width:
            raise ValueError(f"|k| must be <= {self.half_width}")
        e = np.zeros(self.dim)
        e[self.half_width + k] = 1.0
        return e


def window_from_diagonal(diag: np.ndarray, w: int, l: int) -> OperatorWindow:
    """Window of the sandwich (band projection, given diagonal, band
    projection) for diagonal values aligned to indices {-w-l, ..., w+l}.

    The inner summation index runs over the padded range, so every retained
    band entry of the projection sees its full band and the window equals
    the compression of the infinite operator.  Band widths up to l = 2w are
    accepted; l = 2w leaves the projection untruncated at window scale.
    """
    if l > 2 * w:
        raise ValueError(f"band width {l} exceeds the window reach {2 * w}")
    diag = np.asarray(diag, dtype=float)
    ks = np.arange(-w, w + 1)
    ms = np.arange(-w - l, w + l + 1)
    if diag.shape != ms.shape:
        raise ValueError(f"diagonal must have length {ms.size}, got {diag.size}")
    a = _projection_block(ks, ms, l)
    return OperatorWindow(half_width=w, matrix=(a * diag) @ a.conj().T)


def operator_window(env: Environment, levels: TruncationLevels) -> OperatorWindow:
    """Window of the band-truncated sandwich (projection, random diagonal,
    projection) at truncation levels (m, k, l) and half-width w."""
    w, l = levels.w, levels.l
    ms = np.arange(-w - l, w + l + 1)
    series = CosineSeries(env, terms=levels.j, clip=levels.m, top_k=levels.k)
    return window_from_diagonal(series_values(series, ms), w, l)
