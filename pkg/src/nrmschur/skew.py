"""Real Schur decomposition of skew-symmetric matrices.

The route is the classical one for skew matrices:

1. Householder reduction ``K = Q~ T Q~^T`` with ``T`` skew tridiagonal;
2. the even-odd permutation turns ``T`` into ``[[0, -B~^T], [B~, 0]]`` with
   ``B~`` upper bidiagonal of shape ``floor(n/2) x ceil(n/2)``;
3. an SVD ``B~ = U Sigma V^T`` yields Schur vectors
   ``Q^ = [Q~_even V | null block | Q~_odd U]``, so that
   ``Q^T K Q^ = [[0, 0, -Sigma], [0, 0_r, 0], [Sigma, 0, 0]]``.

Singular values below ``eps1 * sigma_max`` are classified as zero when the
SVD is read back, which isolates the null block without a separate finite
process.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack

from . import _tridiag
from .dense import EPS, as_matrix, frobenius_norm
from .errors import NotSkewError
from .kernels import Bidiagonal, KernelProvider, get_provider

#: Relative threshold below which singular values count as zero or equal.
EPS1 = 10.0 * EPS

#: What ``eps1`` is relative to: ``"fro"`` is ``||skew(A)||_F``,
#: ``"max"`` is the largest singular value.
EPS1_SCALES = ("fro", "max")


def sigma_scale(sigma, how: str = "fro") -> float:
    """Reference magnitude for the eps1 rule given all singular values.

    ``"fro"`` returns ``sqrt(2 * sum(sigma**2)) = ||K||_F`` for a skew ``K``
    with singular values `sigma`; ``"max"`` returns ``max(sigma)``.
    """
    sigma = np.asarray(sigma, dtype=np.float64)
    if sigma.size == 0:
        return 0.0
    if how == "fro":
        return float(np.sqrt(2.0) * np.linalg.norm(sigma))
    if how == "max":
        return float(np.max(sigma))
    raise ValueError(f"unknown eps1 scale {how!r}; choose from {EPS1_SCALES}")


@dataclass(frozen=True)
class SkewTridiagonal:
    """Skew-symmetric tridiagonal ``T`` with ``T[k+1, k] = sub[k] = -T[k, k+1]``."""

    sub: np.ndarray

    @property
    def n(self) -> int:
        return len(self.sub) + 1

    def dense(self) -> np.ndarray:
        return np.diag(self.sub, -1) - np.diag(self.sub, 1)


@dataclass(frozen=True)
class SkewSchur:
    """``K Q^ = Q^ [[0, 0, -Sigma], [0, 0_r, 0], [Sigma, 0, 0]]``.

    `sigma` is strictly positive and descending; ``n = 2p + r``.
    """

    q_hat: np.ndarray
    sigma: np.ndarray
    r: int

    @property
    def n(self) -> int:
        return self.q_hat.shape[0]

    @property
    def p(self) -> int:
        return len(self.sigma)

    def block_matrix(self) -> np.ndarray:
        p, r = self.p, self.r
        k = np.zeros((self.n, self.n))
        i = np.arange(p)
        k[i, p + r + i] = -self.sigma
        k[p + r + i, i] = self.sigma
        return k


def check_skew(a, tol_factor=8.0) -> np.ndarray:
    a = as_matrix(a, square=True)
    defect = frobenius_norm(a + a.T)
    if defect > tol_factor * EPS * frobenius_norm(a):
        raise NotSkewError(f"matrix is not skew-symmetric (||A + A^T||_F = {defect:.3e})")
    return a


def _reflectors_fortran(k):
    # The n-2 reflectors of the reduction in the layout LAPACK expects for
    # the trailing (n-1) x (n-1) block: column j holds u_j from row j on
    # (its unit entry sits on the diagonal and is implied).
    return np.asfortranarray(k[1:, :-2])


def _assemble_lapack(k, taus):
    # Q~ = diag(1, Q') with Q' the product of the stored reflectors.
    n = k.shape[0]
    a = np.zeros((n - 1, n - 1), order="F")
    a[:, :-1] = _reflectors_fortran(k)
    q1, _, info = lapack.dorgqr(a, taus, lwork=max(64 * (n - 1), 1), overwrite_a=1)
    if info != 0:  # pragma: no cover - argument errors only
        raise RuntimeError(f"dorgqr failed with info={info}")
    q = np.zeros((n, n))
    q[0, 0] = 1.0
    q[1:, 1:] = q1
    return q


def _apply_lapack(k, taus, mt):
    # Overwrite the F-ordered mt = M^T with (Q~ M)^T = M^T Q~^T in place.
    n = k.shape[0]
    c, _, info = lapack.dormqr(
        "R", "T", _reflectors_fortran(k), taus, mt[:, 1:], lwork=max(64 * n, 1), overwrite_c=1
    )
    if info != 0:  # pragma: no cover - argument errors only
        raise RuntimeError(f"dormqr failed with info={info}")
    mt[:, 1:] = c
    return mt


def _reduce(a, blocked, check, overwrite=False):
    a = check_skew(a) if check else as_matrix(a, square=True)
    k = a if overwrite else a.copy()
    n = k.shape[0]
    if n <= 2:
        sub = k[1:, 0].copy() if n == 2 else np.zeros(0)
        return k, sub, np.zeros(0)
    if blocked:
        sub, taus = _tridiag.tridiagonalize_blocked(k)
    else:
        sub, taus = _tridiag.tridiagonalize_unblocked(k)
    return k, sub, taus


def skew_tridiagonalize(a, *, blocked: bool = True, check: bool = True):
    """Householder reduction ``A = Q~ T Q~^T`` of a skew-symmetric matrix.

    Parameters
    ----------
    a : (n, n) array_like
        Skew-symmetric input; only its strict lower triangle is read.
    blocked : bool
        Use the panel-blocked reduction with LAPACK assembly of ``Q~``
        (default) or the one-reflector-at-a-time reference with compiled
        backward accumulation.
    check : bool
        Verify ``||A + A^T||_F <= 8 eps ||A||_F`` first.

    Returns
    -------
    q_tilde : (n, n) ndarray
    t : SkewTridiagonal
    """
    k, sub, taus = _reduce(a, blocked, check)
    n = k.shape[0]
    if n <= 2:
        return np.eye(n), SkewTridiagonal(sub)
    if blocked:
        q = _assemble_lapack(k, taus)
    else:
        q = _tridiag.accumulate_unblocked(k, taus)
    return q, SkewTridiagonal(sub)


def even_odd_permutation(n: int) -> np.ndarray:
    """Zero-based indices ``0, 2, 4, ..., 1, 3, 5, ...``."""
    return np.concatenate([np.arange(0, n, 2), np.arange(1, n, 2)])


def even_odd_permute(t: SkewTridiagonal):
    """Even-odd permutation of a skew tridiagonal matrix.

    Returns ``(b_tilde, perm)`` where ``perm`` lists the zero-based positions
    ``0, 2, 4, ...`` followed by ``1, 3, 5, ...`` and ``b_tilde`` is the
    ``floor(n/2) x ceil(n/2)`` upper bidiagonal block such that
    ``T[perm][:, perm] == [[0, -b_tilde.T], [b_tilde, 0]]``.

    >>> b, perm = even_odd_permute(SkewTridiagonal(np.array([1.0, 2.0, 3.0])))
    >>> b
    array([[ 1., -2.],
           [ 0.,  3.]])
    >>> perm
    array([0, 2, 1, 3])
    """
    n = t.n
    s = np.asarray(t.sub, dtype=np.float64)
    ph, pc = n // 2, (n + 1) // 2
    b = np.zeros((ph, pc))
    i = np.arange(ph)
    b[i, i] = s[0::2][:ph]
    j = np.arange(len(s[1::2]))
    b[j, j + 1] = -s[1::2]
    return b, even_odd_permutation(n)


def _square_bidiagonal(s, n):
    # The SVD input: B~ itself for even n, B~ padded with a zero row for odd n.
    d = s[0::2].copy()
    e = -s[1::2]
    if n % 2:
        d = np.append(d, 0.0)
    return Bidiagonal(d, e)


def _null_basis(block):
    # Orthonormal basis of range(block) when its columns are orthonormal up
    # to one direction of deficiency (odd n: rows of U restricted to B~).
    if block.shape[1] <= 1:
        return block[:, :0]
    u, s, _ = np.linalg.svd(block, full_matrices=False)
    return u[:, : block.shape[1] - 1]


def skew_schur_decompose(
    a,
    kp: str | KernelProvider | None = None,
    eps1: float = EPS1,
    *,
    blocked: bool | None = None,
    check: bool = True,
    scale: str = "fro",
    norm: float | None = None,
    overwrite_a: bool = False,
) -> SkewSchur:
    """Real Schur form of a skew-symmetric matrix.

    Parameters
    ----------
    a : (n, n) array_like
        Skew-symmetric matrix.
    kp : KernelProvider or str, optional
        Supplies the bidiagonal SVD.
    eps1 : float
        Singular values ``< eps1 * s`` are treated as zero, where ``s`` is
        set by `scale`.
    blocked : bool, optional
        Tridiagonalization variant; defaults to unblocked for the
        ``reference`` provider and blocked otherwise.
    check : bool
        Validate skew-symmetry of the input.
    scale : {"fro", "max"}
        ``s = ||A||_F`` (default) or ``s = sigma_max``.  Rounding errors of
        the reduction grow with the Frobenius norm, so ``"fro"`` keeps the
        classification stable as ``n`` grows.
    norm : float, optional
        Explicit reference ``s``, overriding `scale`.  Callers that pass
        the skew part of a larger matrix should give that matrix's norm:
        rounding in the skew part is relative to it.
    overwrite_a : bool
        Allow the reduction to work in the storage of `a` (when it already
        is a C-ordered float64 array).

    Returns
    -------
    SkewSchur
    """
    kp = get_provider(kp)
    if blocked is None:
        blocked = kp.name != "reference"
    k_red, sub, taus = _reduce(a, blocked, check, overwrite_a)
    n = k_red.shape[0]
    if n == 1:
        return SkewSchur(np.eye(1), np.zeros(0), 1)
    ph, pc = n // 2, (n + 1) // 2
    u, sig, v = kp.bidiagonal_svd(_square_bidiagonal(sub, n))
    ref = sigma_scale(sig, scale) if norm is None else float(norm)
    k = int(np.count_nonzero(sig >= eps1 * ref)) if ref > 0.0 else 0
    k = min(k, ph)
    mt = np.zeros((n, n), order="F")
    if k == 0:
        # no pairs: the whole space is the null block and Q~ serves as is
        mt[np.arange(n), np.arange(n)] = 1.0
    else:
        u_null = _null_basis(u[:ph, k:]) if n % 2 else u[:, k:]
        # M^T with M = P_eo [[V, 0], [0, U]] arranged as [c1 | null | c2]
        mt[:k, 0::2] = v[:, :k].T
        mt[k:pc, 0::2] = v[:, k:].T
        mt[pc : n - k, 1::2] = u_null.T
        mt[n - k :, 1::2] = u[:ph, :k].T
    if n <= 2:
        q_hat = np.ascontiguousarray(mt.T)
    elif blocked:
        q_hat = _apply_lapack(k_red, taus, mt).T
    else:
        q_hat = _tridiag.accumulate_unblocked(k_red, taus) @ mt.T
    return SkewSchur(np.ascontiguousarray(q_hat), sig[:k].copy(), n - 2 * k)
