"""Self-contained reference kernels.

* bidiagonal SVD: implicit-shift Golub-Kahan QR,
* symmetric EVD: Householder tridiagonalization + implicit QL (Wilkinson shift),
* general real Schur: Hessenberg reduction + Francis double-shift QR.

They are written for clarity and desk-scale sizes; see :mod:`.native` for the
LAPACK-backed provider with the same contracts.
"""

import numpy as np

from ..dense import EPS, as_matrix, frobenius_norm
from ..errors import ConvergenceError, NotSymmetricError
from . import _loops

#: QR-type loops give up after this many sweeps per eigen/singular value.
SWEEPS_PER_VALUE = 30


def _descending(values):
    # stable: ties keep ascending index
    return np.argsort(-values, kind="stable")


def bidiagonal_svd(b):
    """SVD ``B = U diag(sigma) V^T`` of an upper bidiagonal matrix.

    Returns ``(u, sigma, v)`` with `sigma` non-negative and descending.
    """
    d = np.array(b.diag, dtype=np.float64)
    e = np.array(b.superdiag, dtype=np.float64)
    p = d.shape[0]
    u = np.eye(p)
    v = np.eye(p)
    w, status = _loops.golub_kahan_svd(d, e, u, v, SWEEPS_PER_VALUE)
    if status:
        raise ConvergenceError(f"bidiagonal SVD did not converge (p={p})")
    order = _descending(w)
    return u[:, order], w[order], v[:, order]


def check_symmetric(h, tol_factor=8.0):
    h = as_matrix(h, square=True, name="h")
    asym = frobenius_norm(h - h.T)
    if asym > tol_factor * EPS * frobenius_norm(h):
        raise NotSymmetricError(f"matrix is not symmetric (||H - H^T||_F = {asym:.3e})")
    return h


def symmetric_evd(h):
    """Eigen-decomposition ``H = R diag(lam) R^T`` with `lam` descending."""
    h = check_symmetric(h)
    n = h.shape[0]
    a = (h + h.T) * 0.5
    q = np.eye(n)
    d, off = _loops.householder_tridiagonal(a, q)
    status = _loops.tridiagonal_ql(d, off, q, SWEEPS_PER_VALUE)
    if status:
        raise ConvergenceError(f"tridiagonal QL did not converge (n={n})")
    order = _descending(d)
    return q[:, order], d[order]


def hessenberg(a):
    """Householder Hessenberg reduction ``A = Q H Q^T`` with Q assembled."""
    h = np.array(as_matrix(a, square=True), dtype=np.float64)
    q = np.eye(h.shape[0])
    _loops.hessenberg_reduce(h, q)
    return h, q


def general_real_schur(a):
    """Real Schur form ``A = Q S Q^T`` (S quasi-upper-triangular).

    Complex-conjugate pairs appear as standardized 2x2 blocks
    ``[[a, b], [c, a]]`` with ``b*c < 0``.
    """
    h, q = hessenberg(a)
    status = _loops.francis_schur(h, q, SWEEPS_PER_VALUE)
    if status:
        raise ConvergenceError(f"Francis QR did not converge (n={h.shape[0]})")
    return q, h
