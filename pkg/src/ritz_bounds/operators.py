"""Vectors, linear operators and the Rayleigh quotient.

Everything downstream (Lanczos sweeps, the Chebyshev bounds) sits on top of this
module: plain 1-d numpy arrays as vectors, a small matrix-free operator
abstraction, and twice-through Gram-Schmidt.

The package is deliberately restricted to real symmetric matrices.  The bounds
only ever see the spectrum and the overlap magnitudes |(z_k, v)|, and every
Hermitian problem is unitarily equivalent to a real diagonal one, so complex
storage would buy nothing here.  Diagonal operators are first-class: an
experiment is specified by a Spectrum plus an OverlapProfile, and the start
vector in the eigenbasis is literally the overlap profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, ZeroVectorError

__all__ = [
    "Spectrum",
    "OverlapProfile",
    "LinearOperator",
    "DiagonalOperator",
    "DenseSymmetricOperator",
    "apply",
    "rayleigh_quotient",
    "orthonormalize_against",
    "GS_BREAKDOWN_COEFF",
]

# Gram-Schmidt residuals below GS_BREAKDOWN_COEFF * sqrt(N) (relative to the
# input norm) are declared numerically zero: "twice is enough" reorthogonalization
# emulates exact arithmetic at this scale, anything smaller is roundoff.
GS_BREAKDOWN_COEFF = 1e-13


def _as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise DimensionMismatchError(f"expected a 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of A sorted descending: lambda_1 >= ... >= lambda_N."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("spectrum must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrum entries must be finite")
        if np.any(np.diff(v) > 0):
            raise ValueError("spectrum must be sorted descending")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.size

    @property
    def top(self) -> float:
        return float(self.values[0])

    @property
    def bottom(self) -> float:
        return float(self.values[-1])

    @property
    def span(self) -> float:
        return self.top - self.bottom

    @property
    def norm(self) -> float:
        """Spectral norm max|lambda|."""
        return max(abs(self.top), abs(self.bottom))

    def __len__(self) -> int:
        return self.dim


@dataclass(frozen=True)
class OverlapProfile:
    """|(z_k, v)| magnitudes of the start vector, aligned with a Spectrum.

    Normalized on construction so the squares sum to one; at least one entry
    must be strictly positive.
    """

    magnitudes: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.magnitudes, dtype=float)
        if m.ndim != 1 or m.size < 1:
            raise ValueError("overlap profile must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(m)) or np.any(m < 0):
            raise ValueError("overlap magnitudes must be finite and non-negative")
        nrm = np.linalg.norm(m)
        if nrm == 0.0:
            raise ZeroVectorError("overlap profile has no positive entry")
        m = m / nrm
        m.flags.writeable = False
        object.__setattr__(self, "magnitudes", m)

    @property
    def dim(self) -> int:
        return self.magnitudes.size

    def __len__(self) -> int:
        return self.magnitudes.size


class LinearOperator:
    """Matrix-free real symmetric operator: dimension + matvec."""

    dimension: int

    def matvec(self, x: np.ndarray) -> np.ndarray:  # pragma: no cover - interface
        raise NotImplementedError

    @property
    def norm_estimate(self) -> float:  # pragma: no cover - interface
        raise NotImplementedError


@dataclass(frozen=True)
class DiagonalOperator(LinearOperator):
    """A in its own eigenbasis: x -> (lambda_k x_k)."""

    spectrum: Spectrum

    @property
    def dimension(self) -> int:
        return self.spectrum.dim

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.spectrum.values * x

    @property
    def norm_estimate(self) -> float:
        return self.spectrum.norm


@dataclass(frozen=True)
class DenseSymmetricOperator(LinearOperator):
    """Dense storage; entries must satisfy a[i, j] == a[j, i] exactly as stored."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not exactly symmetric as stored")
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.entries @ x

    @property
    def norm_estimate(self) -> float:
        # Frobenius norm upper-bounds the spectral norm; fine for tolerances.
        return float(np.linalg.norm(self.entries))


def apply(op: LinearOperator, x) -> np.ndarray:
    """A @ x with a dimension check."""
    v = _as_vector(x)
    if v.size != op.dimension:
        raise DimensionMismatchError(
            f"operator dimension {op.dimension} != vector dimension {v.size}"
        )
    return op.matvec(v)


def rayleigh_quotient(x, op: LinearOperator) -> float:
    """(x, Ax) / (x, x); lies in [lambda_N, lambda_1] for symmetric A."""
    v = _as_vector(x)
    nrm2 = float(v @ v)
    if nrm2 == 0.0:
        raise ZeroVectorError("Rayleigh quotient of the zero vector")
    return float(v @ apply(op, v)) / nrm2


def orthonormalize_against(x, basis) -> np.ndarray | None:
    """Project x against an orthonormal basis and normalize, re-orthogonalizing twice.

    Returns the unit residual, or None if the residual norm falls below the
    breakdown tolerance (x numerically contained in span(basis)).
    """
    v = _as_vector(x).copy()
    scale = np.linalg.norm(v)
    if scale == 0.0:
        return None
    vecs = [np.asarray(b, dtype=float) for b in basis]
    for _ in range(2):
        for b in vecs:
            v -= (b @ v) * b
    nrm = np.linalg.norm(v)
    if nrm <= GS_BREAKDOWN_COEFF * np.sqrt(v.size) * scale:
        return None
    return v / nrm
