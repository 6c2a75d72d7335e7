"""Structured Lanczos for symmetric matrices ``[[W, -X], [X, W]]``.

Such a matrix (``W`` symmetric, ``X`` skew) commutes with
``J = [[0, -I], [I, 0]]``, so every eigenvalue has even multiplicity and,
for any ``b``, ``b^T J A^k b = 0``.  When each eigenvalue has multiplicity
exactly two, ``m`` Lanczos steps from ``b = A v`` span an ``m``-dimensional
Krylov space ``K`` with ``K`` orthogonal to ``J K``; the orthogonal
symplectic ``M = [M1, J M1]`` then block-diagonalizes ``A`` into two copies
of the Lanczos tridiagonal ``T_m``.

The J-orthogonality is only preserved in exact arithmetic and degrades
quickly when eigenvalues cluster.  Results therefore carry a ``degraded``
flag; callers should fall back to a general solver when it is set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import EPS, frobenius_norm, orthogonality_defect
from .errors import LanczosBreakdown, NotSkewError, NotSymmetricError, ShapeError
from .kernels import KernelProvider, get_provider

#: ``||M^T M - I||_F / sqrt(2m)`` above which a result is flagged degraded.
DEGRADED_TOL = 1e-6
RETRIES = 3


@dataclass(frozen=True)
class WXMatrix:
    """The symmetric ``2m x 2m`` matrix ``[[W, -X], [X, W]]``."""

    w: np.ndarray
    x: np.ndarray

    def __post_init__(self):
        w = np.ascontiguousarray(self.w, dtype=np.float64)
        x = np.ascontiguousarray(self.x, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or x.shape != w.shape:
            raise ShapeError(f"W and X must be square of equal size, got {w.shape} and {x.shape}")
        scale = max(frobenius_norm(w), frobenius_norm(x))
        if frobenius_norm(w - w.T) > 8 * EPS * scale:
            raise NotSymmetricError("W must be symmetric")
        if frobenius_norm(x + x.T) > 8 * EPS * scale:
            raise NotSkewError("X must be skew-symmetric")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "x", x)

    @property
    def m(self) -> int:
        return self.w.shape[0]

    def dense(self) -> np.ndarray:
        return np.block([[self.w, -self.x], [self.x, self.w]])


@dataclass(frozen=True)
class WXEigen:
    """``A = R blkdiag(D, D) R^T`` with ``R = M blkdiag(Z, Z)``.

    Attributes
    ----------
    m_basis : (2m, 2m) ndarray
        ``[M1, J M1]``.
    z, d : ndarray
        Eigen-decomposition of ``T_m = M1^T A M1`` (``d`` descending).
    orth_defect : float
        ``||M^T M - I||_F / sqrt(2m)``.
    degraded : bool
        ``orth_defect > 1e-6``.
    """

    m_basis: np.ndarray
    z: np.ndarray
    d: np.ndarray
    orth_defect: float
    degraded: bool

    @property
    def r(self) -> np.ndarray:
        m = self.z.shape[0]
        r = np.empty_like(self.m_basis)
        r[:, :m] = self.m_basis[:, :m] @ self.z
        r[:, m:] = self.m_basis[:, m:] @ self.z
        return r


def apply_j(y):
    """``J y`` for ``J = [[0, -I], [I, 0]]`` (rows split in half)."""
    m = y.shape[0] // 2
    return np.concatenate([-y[m:], y[:m]])


def _lanczos(a, b, m, tol):
    n = a.shape[0]
    basis = np.zeros((n, m))
    q = b / np.linalg.norm(b)
    basis[:, 0] = q
    for j in range(1, m):
        y = a @ basis[:, j - 1]
        # full reorthogonalization: two modified Gram-Schmidt sweeps
        for _ in range(2):
            for i in range(j):
                y -= (basis[:, i] @ y) * basis[:, i]
        nrm = np.linalg.norm(y)
        if nrm < tol:
            raise LanczosBreakdown(f"Krylov direction {j} has norm {nrm:.3e} < {tol:.3e}")
        basis[:, j] = y / nrm
    return basis


def wx_eigen(a: WXMatrix, kp: str | KernelProvider | None = None, rng=None) -> WXEigen:
    """Diagonalize ``[[W, -X], [X, W]]`` with ``m`` structured Lanczos steps.

    Parameters
    ----------
    a : WXMatrix
        Full rank, every eigenvalue of multiplicity exactly two.
    kp : KernelProvider or str, optional
        Supplies the symmetric EVD of ``T_m``.
    rng : numpy.random.Generator or int, optional
        Source of the random starting vector ``v`` (``b = A v``).

    Returns
    -------
    WXEigen

    Raises
    ------
    LanczosBreakdown
        When ``RETRIES`` starting vectors all hit a Krylov direction of norm
        below ``sqrt(eps) ||A||_F`` before step ``m``; this happens when an
        eigenvalue has multiplicity above two.
    """
    kp = get_provider(kp)
    rng = np.random.default_rng(rng)
    full = a.dense()
    m = a.m
    tol = np.sqrt(EPS) * frobenius_norm(full)
    last = None
    for _ in range(RETRIES):
        b = full @ rng.standard_normal(2 * m)
        if np.linalg.norm(b) < tol:
            last = LanczosBreakdown("starting vector A v is negligible")
            continue
        try:
            m1 = _lanczos(full, b, m, tol)
        except LanczosBreakdown as exc:
            last = exc
            continue
        break
    else:
        raise last
    basis = np.concatenate([m1, apply_j(m1)], axis=1)
    t = m1.T @ full @ m1
    z, d = kp.symmetric_evd((t + t.T) * 0.5)
    defect = orthogonality_defect(basis)
    return WXEigen(basis, z, d, defect, bool(defect > DEGRADED_TOL))
