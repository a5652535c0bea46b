"""Symmetric eigensolver, Einstein spectra, and Z-eigenvalue estimation.

The eigensolver is a cyclic Jacobi iteration: dependency-free, robust,
and fast enough for the matrix sizes this package meets (d**m <= 256).
Everything spectral about a pairwise-symmetric tensor reduces to the
spectrum of its square unfolding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import hermitian_dilation, matricize, matricize_general, unmatricize
from .errors import ConvergenceError, ShapeError, SymmetryError
from .tensor import (
    DEFAULT_TOL,
    Tensor,
    apply_power_map,
    is_e_symmetric,
    is_fully_symmetric,
)

__all__ = [
    "EigenDecomposition",
    "EinsteinEVD",
    "ZEigenEstimate",
    "sym_eig",
    "e_eigenvalues",
    "e_evd",
    "e_spectral_norm",
    "e_trace",
    "gen_spectral_norm",
    "is_e_psd",
    "is_e_pd",
    "z_eigen_max",
]


@dataclass(frozen=True)
class EigenDecomposition:
    """Full spectrum of a symmetric matrix.

    ``values`` are sorted descending; the columns of ``vectors`` are the
    matching orthonormal eigenvectors.
    """

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class EinsteinEVD:
    """Factor pair of an eigenvalue decomposition in tensor form.

    ``u`` is Einstein-orthogonal and ``diag`` is diagonal, with
    u * diag * transpose(u) reconstructing the input.
    """

    u: Tensor
    diag: Tensor
    values: np.ndarray


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = float(a[p, q])
    if apq == 0.0:
        return
    # hypot keeps the small-angle branch finite even when tau overflows
    tau = (float(a[q, q]) - float(a[p, p])) / (2.0 * apq)
    t = 1.0 / (abs(tau) + math.hypot(1.0, tau))
    if tau < 0.0:
        t = -t
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c

    rp = a[p, :].copy()
    rq = a[q, :].copy()
    a[p, :] = c * rp - s * rq
    a[q, :] = s * rp + c * rq
    cp = a[:, p].copy()
    cq = a[:, q].copy()
    a[:, p] = c * cp - s * cq
    a[:, q] = s * cp + c * cq
    a[p, q] = 0.0
    a[q, p] = 0.0
    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def _off_diagonal_sq(a: np.ndarray) -> float:
    # computed directly rather than as total minus diagonal, which would
    # cancel catastrophically once the matrix is nearly diagonal
    b = a.copy()
    np.fill_diagonal(b, 0.0)
    return float((b * b).sum())


def sym_eig(mat, tol: float = 1e-12, max_sweeps: int = 100) -> EigenDecomposition:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps rotate away off-diagonal entries pairwise until the
    off-diagonal Frobenius mass drops below ``tol`` times the Frobenius
    norm of the input.  Eigenvalues come back descending with a stable
    tie order.
    """
    m = np.asarray(mat, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    scale = float(np.abs(m).max()) if m.size else 0.0
    if float(np.abs(m - m.T).max()) > tol * max(1.0, scale) * n:
        raise SymmetryError("matrix is not symmetric within tolerance")

    a = (m + m.T) / 2.0
    v = np.eye(n)
    target_sq = (tol * float(np.linalg.norm(a))) ** 2
    converged = n < 2
    for _ in range(max_sweeps):
        if _off_diagonal_sq(a) <= target_sq:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, v, p, q)
    if not converged and _off_diagonal_sq(a) > target_sq:
        raise ConvergenceError(
            f"Jacobi sweeps did not converge in {max_sweeps} iterations"
        )
    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values=values[order], vectors=v[:, order])


def _require_e_symmetric(t: Tensor, tol: float) -> None:
    if not is_e_symmetric(t, tol):
        raise SymmetryError("tensor is not Einstein-symmetric within tolerance")


def e_eigenvalues(t: Tensor, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Spectrum of the square unfolding, sorted descending."""
    _require_e_symmetric(t, tol)
    return sym_eig(matricize(t)).values


def e_evd(t: Tensor, tol: float = DEFAULT_TOL) -> EinsteinEVD:
    """Eigenvalue decomposition with both factors folded back to tensors."""
    _require_e_symmetric(t, tol)
    d = t.cubic_dim
    dec = sym_eig(matricize(t))
    u = unmatricize(dec.vectors, t.order, d)
    diag = unmatricize(np.diag(dec.values), t.order, d)
    return EinsteinEVD(u=u, diag=diag, values=dec.values)


def e_spectral_norm(t: Tensor, tol: float = DEFAULT_TOL) -> float:
    """Largest eigenvalue magnitude of the square unfolding."""
    values = e_eigenvalues(t, tol)
    return float(max(values[0], -values[-1])) if values.size else 0.0


def e_trace(t: Tensor, tol: float = DEFAULT_TOL) -> float:
    """Sum of the paired-diagonal entries a[i...i...].

    Cheaper than summing the spectrum, with which it agrees.
    """
    _require_e_symmetric(t, tol)
    return float(np.trace(matricize(t)))


def gen_spectral_norm(t: Tensor) -> float:
    """Spectral norm of a cubic tensor of any order.

    Computed as the top eigenvalue of the symmetric dilation of the
    rectangular unfolding, i.e. the largest singular value of that
    unfolding.
    """
    h = hermitian_dilation(matricize_general(t))
    return float(sym_eig(h).values[0])


def is_e_psd(t: Tensor, tol: float = 1e-10) -> bool:
    """True when every Einstein eigenvalue is at least -tol."""
    values = e_eigenvalues(t)
    return float(values[-1]) >= -tol


def is_e_pd(t: Tensor, tol: float = 1e-10) -> bool:
    """True when every Einstein eigenvalue exceeds tol."""
    values = e_eigenvalues(t)
    return float(values[-1]) > tol


@dataclass(frozen=True)
class ZEigenEstimate:
    """Certified lower estimate of the largest Z-eigenvalue.

    ``value`` is the form evaluated at the unit ``vector``; ``residual``
    is |A x^(2m-1) - value * x|, which vanishes at an exact eigenpair.
    """

    value: float
    vector: np.ndarray
    residual: float


def z_eigen_max(
    t: Tensor,
    restarts: int = 100,
    iters: int = 1000,
    tol: float = 1e-10,
    seed: int = 0,
) -> ZEigenEstimate:
    """Shifted symmetric power iterations from random unit starts.

    The shift 1 + sum|entries| makes each iteration monotone in the form
    value, so runs settle into local maxima; the best converged start is
    returned.  Whatever start it came from, the returned value is a valid
    lower bound on the largest Z-eigenvalue of a fully symmetric
    even-order tensor, up to the reported residual.
    """
    if t.order < 2 or t.order % 2:
        raise ShapeError(f"order {t.order} must be even and at least 2")
    if not t.is_cubic:
        raise ShapeError(f"shape {t.shape} is not cubic")
    if not is_fully_symmetric(t):
        raise SymmetryError("tensor is not fully symmetric within tolerance")

    d = t.cubic_dim
    alpha = 1.0 + float(np.abs(t.data).sum())
    rng = np.random.default_rng(seed)
    best: ZEigenEstimate | None = None
    best_residual = math.inf

    for _ in range(max(1, restarts)):
        x = rng.standard_normal(d)
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            continue
        x = x / norm
        lam_prev = None
        lam = 0.0
        grad = np.zeros(d)
        converged = False
        for _ in range(max(1, iters)):
            grad = apply_power_map(t, x)
            lam = float(x @ grad)
            if lam_prev is not None and abs(lam - lam_prev) <= tol * (1.0 + abs(lam)):
                converged = True
                break
            lam_prev = lam
            step = grad + alpha * x
            x = step / float(np.linalg.norm(step))
        if not converged:
            grad = apply_power_map(t, x)
            lam = float(x @ grad)
        residual = float(np.linalg.norm(grad - lam * x))
        best_residual = min(best_residual, residual)
        if converged and (best is None or lam > best.value):
            best = ZEigenEstimate(value=lam, vector=x.copy(), residual=residual)

    if best is None:
        raise ConvergenceError(
            f"no start converged within {iters} iterations "
            f"(best residual {best_residual:.3e})"
        )
    return best
