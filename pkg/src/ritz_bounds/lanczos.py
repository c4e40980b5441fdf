"""Lanczos tridiagonalization with full reorthogonalization, plus Ritz extraction.

The decomposition builds an orthonormal basis of the Krylov space
K(A, v, m) = span(v, Av, ..., A^{m-1} v) and the symmetric tridiagonal
restriction T = Q A Q^T.  Every new vector is re-projected twice against the
whole basis ("twice is enough"), emulating exact arithmetic at desk scale;
selective schemes are deliberately out of scope.

Two independent tridiagonal eigensolvers live here: an implicit-shift QL
iteration with Wilkinson-style shifts (production path, eigenvalues only) and a
Sturm-sequence bisection (slow, used as a cross-check oracle in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ZeroVectorError
from .operators import GS_BREAKDOWN_COEFF, LinearOperator, Spectrum, apply

__all__ = [
    "LanczosDecomposition",
    "RitzSet",
    "lanczos_decompose",
    "tridiagonal_eigenvalues",
    "tridiagonal_eigenvalues_bisect",
    "ritz_sweep",
    "ritz_vectors",
    "error_to_nearest",
]

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class LanczosDecomposition:
    """Tridiagonal restriction of A to a Krylov space.

    alpha: diagonal of T (length m); beta: positive off-diagonal (length m-1);
    basis: orthonormal Lanczos vectors as rows, shape (m, N); exhausted: True
    if breakdown hit before the requested dimension (invariant subspace found).
    """

    alpha: np.ndarray
    beta: np.ndarray
    basis: np.ndarray
    exhausted: bool

    @property
    def dimension(self) -> int:
        return self.alpha.size


@dataclass(frozen=True)
class RitzSet:
    """Ritz values (descending) from one leading section of T."""

    values: np.ndarray
    dimension: int
    vectors: np.ndarray | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if np.any(np.diff(v) > 0):
            raise ValueError("Ritz values must be sorted descending")
        object.__setattr__(self, "values", v)


def lanczos_decompose(op: LinearOperator, start, max_dim: int) -> LanczosDecomposition:
    """Run max_dim Lanczos steps from start, fully reorthogonalizing each one.

    Stops early (exhausted=True) if the residual norm falls below the
    breakdown tolerance 1e-13 * ||A|| * sqrt(N): the Krylov space is invariant.
    """
    v = np.asarray(start, dtype=float)
    if v.ndim != 1 or v.size != op.dimension:
        raise DimensionMismatchError(
            f"start vector dimension {v.shape} does not match operator dimension {op.dimension}"
        )
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise ZeroVectorError("Lanczos start vector is zero")
    if not 1 <= max_dim <= op.dimension:
        raise ValueError(f"max_dim must be in 1..{op.dimension}, got {max_dim}")

    breakdown_tol = GS_BREAKDOWN_COEFF * op.norm_estimate * np.sqrt(op.dimension)
    basis = [v / nrm]
    alphas: list[float] = []
    betas: list[float] = []
    exhausted = False
    for step in range(max_dim):
        q = basis[-1]
        u = apply(op, q)
        a = float(q @ u)
        alphas.append(a)
        if step == max_dim - 1:
            break
        r = u - a * q
        if betas:
            r = r - betas[-1] * basis[-2]
        Q = np.vstack(basis)
        for _ in range(2):
            r -= Q.T @ (Q @ r)
        b = float(np.linalg.norm(r))
        if b <= breakdown_tol:
            exhausted = True
            break
        betas.append(b)
        basis.append(r / b)
    return LanczosDecomposition(
        alpha=np.array(alphas),
        beta=np.array(betas),
        basis=np.vstack(basis),
        exhausted=exhausted,
    )


def _validate_tridiagonal(alpha, beta) -> tuple[np.ndarray, np.ndarray]:
    d = np.atleast_1d(np.asarray(alpha, dtype=float))
    e = np.atleast_1d(np.asarray(beta, dtype=float)) if np.size(beta) else np.zeros(0)
    if d.ndim != 1 or d.size < 1:
        raise ValueError("diagonal must be a non-empty 1-d sequence")
    if e.size != d.size - 1:
        raise DimensionMismatchError(
            f"off-diagonal length {e.size} does not match diagonal length {d.size}"
        )
    if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
        raise ValueError("tridiagonal entries must be finite")
    return d.copy(), np.abs(e)


def tridiagonal_eigenvalues(alpha, beta) -> np.ndarray:
    """All eigenvalues of tridiag(beta, alpha, beta), descending.

    Implicit-shift QL with Wilkinson-style shifts, eigenvalues only (no
    eigenvector accumulation); splits at negligible off-diagonal entries.
    """
    d, e_in = _validate_tridiagonal(alpha, beta)
    m = d.size
    if m == 1:
        return d
    e = np.zeros(m)
    e[: m - 1] = e_in
    for l in range(m):
        iters = 0
        while True:
            # find the active block [l, mm]: split at negligible e
            mm = l
            while mm < m - 1:
                dd = abs(d[mm]) + abs(d[mm + 1])
                if abs(e[mm]) <= _EPS * dd:
                    break
                mm += 1
            if mm == l:
                break
            iters += 1
            if iters > 50:
                raise ArithmeticError("QL iteration failed to converge")
            # implicit shift from the leading 2x2 of the block
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[mm] - d[l] + e[l] / (g + np.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = mm - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[mm] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[mm] = 0.0
    return np.sort(d)[::-1].copy()


def tridiagonal_eigenvalues_bisect(alpha, beta) -> np.ndarray:
    """Sturm-sequence bisection oracle; slow but independent of the QL path."""
    d, e = _validate_tridiagonal(alpha, beta)
    m = d.size
    if m == 1:
        return d
    b2 = e * e
    pivmin = max(float(np.max(b2)), 1.0) * _EPS * _EPS + 1e-300

    def count_below(x: float) -> int:
        # negative pivots of the LDL^T factorization of T - xI
        cnt = 0
        t = d[0] - x
        if abs(t) < pivmin:
            t = -pivmin
        if t < 0.0:
            cnt += 1
        for i in range(1, m):
            t = (d[i] - x) - b2[i - 1] / t
            if abs(t) < pivmin:
                t = -pivmin
            if t < 0.0:
                cnt += 1
        return cnt

    radius = np.zeros(m)
    radius[:-1] += e
    radius[1:] += e
    lo0 = float(np.min(d - radius)) - pivmin
    hi0 = float(np.max(d + radius)) + pivmin
    scale = max(abs(lo0), abs(hi0), 1.0)
    out = np.empty(m)
    for k in range(1, m + 1):
        lo, hi = lo0, hi0
        for _ in range(200):
            if hi - lo <= 1e-15 * scale:
                break
            mid = 0.5 * (lo + hi)
            if count_below(mid) >= k:
                hi = mid
            else:
                lo = mid
        out[k - 1] = 0.5 * (lo + hi)
    return out[::-1].copy()


def ritz_sweep(op: LinearOperator, start, max_dim: int) -> list[RitzSet]:
    """RitzSet for every leading n-by-n section of T, n = 1..m.

    One Lanczos pass, one tridiagonal solve per section.
    """
    decomp = lanczos_decompose(op, start, max_dim)
    out = []
    for n in range(1, decomp.dimension + 1):
        vals = tridiagonal_eigenvalues(decomp.alpha[:n], decomp.beta[: n - 1])
        out.append(RitzSet(values=vals, dimension=n))
    return out


def ritz_vectors(decomp: LanczosDecomposition, values) -> np.ndarray:
    """Ambient Ritz vectors for the given Ritz values, one per row.

    Inverse iteration on T (with a tiny shift perturbation to keep the solves
    nonsingular), then multiplication by the Lanczos basis.
    """
    vals = np.atleast_1d(np.asarray(values, dtype=float))
    m = decomp.dimension
    T = np.diag(decomp.alpha)
    if m > 1:
        T += np.diag(decomp.beta, 1) + np.diag(decomp.beta, -1)
    scale = float(np.max(np.abs(decomp.alpha))) + 2.0 * (
        float(np.max(np.abs(decomp.beta))) if m > 1 else 0.0
    )
    scale = max(scale, 1.0)
    out = np.empty((vals.size, decomp.basis.shape[1]))
    for row, theta in enumerate(vals):
        pert = 1e-12 * scale
        s = np.full(m, 1.0 / np.sqrt(m))
        for attempt in range(6):
            try:
                M = T - (theta + pert) * np.eye(m)
                for _ in range(3):
                    s = np.linalg.solve(M, s)
                    s /= np.linalg.norm(s)
                break
            except np.linalg.LinAlgError:
                pert *= 16.0
        y = s @ decomp.basis
        out[row] = y / np.linalg.norm(y)
    return out


def error_to_nearest(ritz: RitzSet, spectrum: Spectrum) -> list[tuple[float, float, float]]:
    """(ritz value, nearest eigenvalue, absolute error) per Ritz value.

    Ties broken toward the smaller spectrum index (the larger eigenvalue).
    """
    lam = spectrum.values
    out = []
    for theta in ritz.values:
        k = int(np.argmin(np.abs(theta - lam)))
        out.append((float(theta), float(lam[k]), float(abs(theta - lam[k]))))
    return out
