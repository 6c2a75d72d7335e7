"""Dense matrix helpers, residual metrics and the shared result types.

Matrices are plain ``numpy.ndarray`` objects of dtype float64 in row-major
(C) order.  Every public entry point funnels user input through
:func:`as_matrix`, which enforces that convention and rejects non-finite data.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NonFiniteError, ShapeError

EPS = float(np.finfo(np.float64).eps)

#: Default relative residual tolerance ``||AQ - QS||_F / ||A||_F``.
TOL_RES = 1e-12


def tol_orth(n: int) -> float:
    """Default orthogonality tolerance for ``||Q^T Q - I||_F / sqrt(n)``."""
    return 32.0 * EPS * np.sqrt(max(n, 1))


_SMALL = 16384


def as_matrix(a, *, square: bool = False, name: str = "a") -> np.ndarray:
    """Return `a` as a finite, C-contiguous float64 2-D array.

    No copy is made when `a` already satisfies the convention.
    """
    arr = np.ascontiguousarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {arr.shape}")
    if arr.size <= _SMALL:
        finite = np.isfinite(arr).all()
    else:
        # a finite sum rules out NaN/Inf without a boolean temporary; only an
        # overflowing sum needs the elementwise test
        with np.errstate(over="ignore", invalid="ignore"):
            total = arr.sum()
        finite = np.isfinite(total) or np.isfinite(arr).all()
    if not finite:
        raise NonFiniteError(f"{name} contains NaN or Inf entries")
    return arr


def frobenius_norm(a) -> float:
    a = np.asarray(a, dtype=np.float64)
    return float(np.sqrt(np.dot(a.ravel(), a.ravel())))


def sym_part(a) -> np.ndarray:
    """``(A + A^T) / 2``; the result is exactly symmetric."""
    a = as_matrix(a, square=True)
    return (a + a.T) * 0.5


def skew_part(a) -> np.ndarray:
    """``(A - A^T) / 2``; the result is exactly skew-symmetric."""
    a = as_matrix(a, square=True)
    return (a - a.T) * 0.5


def normality_defect(a) -> float:
    """Scale-free normality measure ``||AA^T - A^TA||_F / ||A||_F^2``."""
    a = as_matrix(a, square=True)
    nrm = frobenius_norm(a)
    if nrm == 0.0:
        return 0.0
    return frobenius_norm(a @ a.T - a.T @ a) / nrm**2


def orthogonality_defect(q) -> float:
    """``||Q^T Q - I||_F / sqrt(n)`` for a matrix with n columns."""
    q = np.asarray(q, dtype=np.float64)
    n = q.shape[1]
    return frobenius_norm(q.T @ q - np.eye(n)) / np.sqrt(n)


def relative_residual(a, q, s) -> float:
    """``||AQ - QS||_F / ||A||_F`` (0 when A = 0 and the residual vanishes)."""
    a = np.asarray(a, dtype=np.float64)
    res = frobenius_norm(a @ q - q @ s)
    nrm = frobenius_norm(a)
    if nrm == 0.0:
        return res
    return res / nrm


@dataclass(frozen=True)
class BlockSchur:
    """Permuted real Schur form ``A = Q S Q^T`` of a real normal matrix.

    The columns of `q` are laid out as ``[Q_c1 | Q_r | Q_c2]`` with ``p``,
    ``r`` and ``p`` columns.  Pair ``j`` occupies columns ``j`` and
    ``p + r + j`` and carries the eigenvalues ``lam[j] * exp(+-1j*theta[j])``;
    the middle block holds the real eigenvalues `lam_real`.

    Pairs are ordered by decreasing imaginary part ``lam*sin(theta)``, real
    eigenvalues in decreasing order.
    """

    q: np.ndarray
    lam: np.ndarray
    theta: np.ndarray
    lam_real: np.ndarray

    @property
    def n(self) -> int:
        return self.q.shape[0]

    @property
    def p(self) -> int:
        return len(self.lam)

    @property
    def r(self) -> int:
        return len(self.lam_real)

    def schur_matrix(self) -> np.ndarray:
        return assemble_schur_matrix(self)

    def eigenvalues(self) -> np.ndarray:
        return schur_to_eigen(self, vectors=False).values


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray | None


def assemble_schur_matrix(bs: BlockSchur) -> np.ndarray:
    """Build the n-by-n permuted Schur form S of `bs`.

    >>> bs = BlockSchur(np.eye(2), np.array([1.0]), np.array([np.pi / 2]), np.zeros(0))
    >>> np.round(assemble_schur_matrix(bs), 12) + 0.0
    array([[ 0., -1.],
           [ 1.,  0.]])
    """
    p, r = bs.p, bs.r
    n = 2 * p + r
    lc = bs.lam * np.cos(bs.theta)
    ls = bs.lam * np.sin(bs.theta)
    s = np.zeros((n, n))
    i = np.arange(p)
    s[i, i] = lc
    s[p + r + i, p + r + i] = lc
    s[i, p + r + i] = -ls
    s[p + r + i, i] = ls
    k = np.arange(p, p + r)
    s[k, k] = bs.lam_real
    return s


def schur_to_eigen(bs: BlockSchur, vectors: bool = True) -> EigenDecomposition:
    """Complex eigenvalues/eigenvectors from a :class:`BlockSchur`.

    Pair ``j`` contributes ``lam*e^{+i theta}`` with eigenvector
    ``(q1 - i q2)/sqrt(2)`` followed by ``lam*e^{-i theta}`` with
    ``(q1 + i q2)/sqrt(2)``; the real eigenvalues come last with their Schur
    vectors.
    """
    p, r = bs.p, bs.r
    n = 2 * p + r
    vals = np.empty(n, dtype=np.complex128)
    plus = bs.lam * np.exp(1j * bs.theta)
    vals[0 : 2 * p : 2] = plus
    vals[1 : 2 * p : 2] = np.conj(plus)
    vals[2 * p :] = bs.lam_real
    if not vectors:
        return EigenDecomposition(vals, None)
    q = bs.q
    q1 = q[:, :p]
    q2 = q[:, p + r :]
    c = np.sqrt(0.5)
    vecs = np.empty((n, n), dtype=np.complex128)
    vecs[:, 0 : 2 * p : 2] = c * (q1 - 1j * q2)
    vecs[:, 1 : 2 * p : 2] = c * (q1 + 1j * q2)
    vecs[:, 2 * p :] = q[:, p : p + r]
    return EigenDecomposition(vals, vecs)


def hausdorff_distance(x, y) -> float:
    """Hausdorff distance between two finite point sets in the complex plane."""
    x = np.asarray(x, dtype=np.complex128).ravel()
    y = np.asarray(y, dtype=np.complex128).ravel()
    if x.size == 0 and y.size == 0:
        return 0.0
    if x.size == 0 or y.size == 0:
        return np.inf
    d = np.abs(x[:, None] - y[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


# -- plain-text matrix files --------------------------------------------------
#
# First line "rows cols", then one line per row of whitespace separated
# decimal floats written with 17 significant digits (exact round trip).


def write_matrix(path, a) -> None:
    a = as_matrix(a)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    lines.extend(" ".join(f"{x:.17g}" for x in row) for row in a)
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path) -> np.ndarray:
    tokens = Path(path).read_text().split()
    if len(tokens) < 2:
        raise ShapeError(f"{path}: missing 'rows cols' header")
    rows, cols = int(tokens[0]), int(tokens[1])
    data = tokens[2:]
    if len(data) != rows * cols:
        raise ShapeError(f"{path}: expected {rows * cols} entries, found {len(data)}")
    return as_matrix(np.array(data, dtype=np.float64).reshape(rows, cols))
