"""Finite random matrices: Toeplitz, circulant embedding, the DFT-side
projection, and their truncations.

Matrices are plain numpy arrays (real symmetric or complex Hermitian);
diagonal spectra are 1-d float arrays of length 2N.  Conventions:

* The symmetric circulant embedding of an N-entry sequence is 2N x 2N with
  symbol (b_0, ..., b_{N-1}, w, b_{N-1}, ..., b_1); the wrap entry w defaults
  to 0 and never affects the principal N x N block.
* ``circulant_eigs`` returns d_k = b_0 + 2*sum_{j=1}^{N-1} b_j cos(pi j k / N);
  ``approx_eigs`` doubles the j = 0 term as well, shifting every eigenvalue
  by b_0.  An FFT is used internally; the cosine formula is the contract.
* The projection matrix P = F* Q F (F the 2N-point unitary DFT, Q the
  indicator of the first N coordinates) has closed-form entries depending
  only on k - l: 1/2 on the diagonal, 0 at even nonzero differences, and
  (1/N) / (1 - exp(-i pi (k-l) / N)) at odd differences.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .sampler import EntrySequence

__all__ = [
    "TruncationLevels",
    "build_toeplitz",
    "build_circulant",
    "circulant_symbol",
    "circulant_eigs",
    "approx_eigs",
    "cosine_spectrum",
    "dft_matrix",
    "projection_matrix",
    "band_truncate",
    "clip_entries",
    "topk_spectrum",
    "sandwich",
]


@dataclass(frozen=True)
class TruncationLevels:
    """Truncation levels: magnitude cap m, top-k terms, band width l,
    window half-width w, series length j.

    Coupled mode ties k = round(l**(1/9)) and m = l**(1/9) (m stays real
    before rounding), the scaling under which the matrix and operator
    truncation errors vanish together.
    """

    m: float
    k: int
    l: int
    w: int
    j: int

    def __post_init__(self):
        if self.m <= 0 or self.k < 1 or self.l < 1 or self.w < 1 or self.j < 1:
            raise ValueError(f"all truncation levels must be positive: {self}")

    @classmethod
    def coupled(cls, l: int, w: int | None = None, j: int = 10_000) -> "TruncationLevels":
        m = float(l) ** (1.0 / 9.0)
        return cls(m=m, k=max(1, round(m)), l=l, w=8 * l if w is None else w, j=j)

    def is_coupled(self) -> bool:
        m = float(self.l) ** (1.0 / 9.0)
        return self.m == m and self.k == max(1, round(m))


def build_toeplitz(entries: EntrySequence) -> np.ndarray:
    """N x N symmetric Toeplitz matrix T(k, l) = b_|k-l|."""
    return scipy.linalg.toeplitz(entries.b)


def circulant_symbol(entries: EntrySequence, wrap_entry: float = 0.0) -> np.ndarray:
    b = entries.b
    return np.concatenate([b, [wrap_entry], b[:0:-1]])


def build_circulant(entries: EntrySequence, wrap_entry: float = 0.0) -> np.ndarray:
    """2N x 2N symmetric circulant G(k, l) = b_min(|k-l|, 2N-|k-l|).

    The principal N x N block equals ``build_toeplitz(entries)`` for any
    wrap entry.  ``wrap_entry`` fills the unconstrained b_N slot; pass an
    independent copy of b_0 for the interlacing experiment variant.
    """
    return scipy.linalg.circulant(circulant_symbol(entries, wrap_entry))


def _symbol_fft(symbol: np.ndarray) -> np.ndarray:
    d = np.fft.fft(symbol)
    return d.real.copy()


def circulant_eigs(entries: EntrySequence) -> np.ndarray:
    """Eigenvalues d_k = b_0 + 2*sum_{j=1}^{N-1} b_j cos(pi j k / N), k in [2N].

    These are the eigenvalues of ``build_circulant(entries)`` (wrap entry 0)
    in DFT order, not sorted.
    """
    return _symbol_fft(circulant_symbol(entries))


def cosine_spectrum(b: np.ndarray) -> np.ndarray:
    """d_k = 2*sum_{j=0}^{N-1} b_j cos(pi j k / N) for k in [2N].

    Doubles the j = 0 term relative to ``circulant_eigs``, i.e. adds b_0 to
    every eigenvalue.  Accepts any real coefficient vector (e.g. clipped
    entries).
    """
    b = np.asarray(b, dtype=float)
    symbol = np.concatenate([b, [0.0], b[:0:-1]])
    return _symbol_fft(symbol) + b[0]


def approx_eigs(entries: EntrySequence) -> np.ndarray:
    """``circulant_eigs`` shifted by b_0 (the doubled j = 0 term)."""
    return cosine_spectrum(entries.b)


def dft_matrix(n: int) -> np.ndarray:
    """Unitary DFT matrix F(k, l) = exp(2*pi*i*k*l/n) / sqrt(n)."""
    k = np.arange(n)
    return np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)


def projection_matrix(n: int) -> np.ndarray:
    """2N x 2N Hermitian idempotent P = F* Q F in closed form.

    Diagonal 1/2; zero at even nonzero |k-l|; (1/N)/(1 - exp(-i pi (k-l)/N))
    at odd |k-l|.  Entries depend only on k - l, so the matrix is Hermitian
    Toeplitz.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    d = np.arange(2 * n)
    col = np.zeros(2 * n, dtype=complex)
    col[0] = 0.5
    odd = d % 2 == 1
    col[odd] = (1.0 / n) / (1.0 - np.exp(-1j * np.pi * d[odd] / n))
    return scipy.linalg.toeplitz(col)


def band_truncate(p: np.ndarray, l: int) -> np.ndarray:
    """Circular band truncation: keep entries with |k-l| <= l or >= 2N - l.

    The wrap branch mirrors the circulant geometry of the underlying index
    set [2N].  If l covers the whole band the input is returned unchanged
    (copy) with a warning.
    """
    dim = p.shape[0]
    n = dim // 2
    if l < 0:
        raise ValueError(f"band width must be >= 0, got {l}")
    if l >= n:
        warnings.warn(f"band width {l} >= {n} covers the whole matrix", stacklevel=2)
        return p.copy()
    idx = np.arange(dim)
    dist = np.abs(idx[:, None] - idx[None, :])
    keep = (dist <= l) | (dist >= dim - l)
    return np.where(keep, p, 0.0)


def clip_entries(b: np.ndarray, m: float) -> np.ndarray:
    """Magnitude clip sgn(b) * min(|b|, m); values at exactly |b| = m kept."""
    if m <= 0:
        raise ValueError(f"clip level must be positive, got {m}")
    b = np.asarray(b, dtype=float)
    return np.sign(b) * np.minimum(np.abs(b), m)


def topk_spectrum(entries: EntrySequence, m: float, k: int) -> np.ndarray:
    """Spectrum from the k largest-magnitude clipped entries at their
    original frequencies:

        d_t = 2 * sum_{j<k} clip(b_(j), m) * cos(pi * t * sigma(j) / N),
        t in [2N].
    """
    n = len(entries)
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    freqs = entries.order[:k]
    vals = clip_entries(entries.b[freqs], m)
    t = np.arange(2 * n)
    d = np.zeros(2 * n)
    # chunk the frequency sum to bound the cosine table at 2N x 512
    for start in range(0, k, 512):
        f = freqs[start : start + 512]
        v = vals[start : start + 512]
        d += 2.0 * np.cos(np.pi * np.outer(t, f) / n) @ v
    return d


def sandwich(p: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Hermitian triple product P diag(d) P for Hermitian P and real d."""
    d = np.asarray(d, dtype=float)
    if p.shape[0] != p.shape[1] or p.shape[0] != d.shape[0]:
        raise ValueError(f"dimension mismatch: {p.shape} vs {d.shape}")
    return (p * d) @ p.conj().T
