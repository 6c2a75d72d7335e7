"""Matrix functions of normal matrices through the permuted real Schur form.

With ``A = Q S Q^T`` and ``S`` made of ``2 x 2`` rotation-scalings
``lam [[cos t, -sin t], [sin t, cos t]]`` plus real eigenvalues, any
primary function acts block by block; for the principal logarithm each pair
contributes ``[[log lam, -t], [t, log lam]]``.
"""

from __future__ import annotations

import numpy as np

from .dense import EPS, BlockSchur, as_matrix, frobenius_norm, orthogonality_defect, tol_orth
from .errors import NotSpecialOrthogonalError, PrincipalLogError
from .kernels import KernelProvider, get_provider
from .normal import NormalSchurOptions, general_block_schur, normal_schur
from .skew import check_skew, skew_schur_decompose

METHODS = ("normal_schur", "general_schur")

#: Real eigenvalues this close (relatively) to each other and negative are
#: paired into a ``[[log|l|, -pi], [pi, log|l|]]`` block.
TOL_NEG = 1e-8


def block_schur(a, kp=None, method: str = "normal_schur", opts: NormalSchurOptions | None = None) -> BlockSchur:
    """Dispatch to :func:`normal_schur` or the general-Schur baseline."""
    if method == "normal_schur":
        return normal_schur(a, kp, opts)
    if method == "general_schur":
        return general_block_schur(a, kp)
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def _pair_negatives(lam_real, tol_neg):
    # Greedy pairing of (near-)equal negative eigenvalues, most negative first.
    neg = [i for i in np.argsort(lam_real, kind="stable") if lam_real[i] < 0.0]
    pairs = []
    while neg:
        i = neg.pop(0)
        if not neg or abs(lam_real[neg[0]] - lam_real[i]) > tol_neg * abs(lam_real[i]):
            raise PrincipalLogError(
                f"unpaired negative eigenvalue {lam_real[i]:.17g}: no real principal logarithm"
            )
        pairs.append((i, neg.pop(0)))
    return pairs


def logm_from_schur(bs: BlockSchur, *, tol_neg: float = TOL_NEG, orthogonal: bool = False) -> np.ndarray:
    """Principal logarithm ``Q log(S) Q^T`` of the matrix represented by `bs`.

    With ``orthogonal=True`` the moduli are taken to be exactly one, which
    makes the result exactly skew-symmetric.
    """
    n, p, r = bs.n, bs.p, bs.r
    q = bs.q
    off = p + r
    if not orthogonal:
        scale = max(np.max(bs.lam, initial=0.0), np.max(np.abs(bs.lam_real), initial=0.0))
        tiny = 64 * EPS * n * scale
        if (bs.lam <= tiny).any() or (np.abs(bs.lam_real) <= tiny).any():
            raise PrincipalLogError("matrix is singular to working precision; log undefined")
    pairs = _pair_negatives(bs.lam_real, tol_neg) if (bs.lam_real < 0.0).any() else []
    q1, qr, q2 = q[:, :p], q[:, p:off], q[:, off:]
    # Each pair of equal negative eigenvalues gets a pi rotation whose
    # orientation the eigenvectors leave open; flip the first one when Q is
    # improper so that the result does not depend on the eigensolver's
    # choice of basis (log(-I_2) = [[0, -pi], [pi, 0]]).
    turn = np.full(len(pairs), np.pi)
    if pairs and np.linalg.det(q) < 0:
        turn[0] = -np.pi
    if orthogonal:
        g = (q2 * bs.theta) @ q1.T
        for (i, j), t in zip(pairs, turn):
            g += t * np.outer(qr[:, j], qr[:, i])
        return g - g.T
    loglam = np.log(bs.lam)
    y = np.empty((n, n))
    y[:, :p] = q1 * loglam + q2 * bs.theta
    y[:, off:] = q2 * loglam - q1 * bs.theta
    y[:, p:off] = qr * np.log(np.abs(bs.lam_real))
    for (i, j), t in zip(pairs, turn):
        # the pair (i, j) spans a -|l| I_2 block: log = log|l| I + pi J
        y[:, p + i] += t * qr[:, j]
        y[:, p + j] -= t * qr[:, i]
    return y @ q.T


def logm_normal(
    a,
    kp: str | KernelProvider | None = None,
    *,
    method: str = "normal_schur",
    tol_neg: float = TOL_NEG,
    orthogonal: bool = False,
    opts: NormalSchurOptions | None = None,
) -> np.ndarray:
    """Real principal logarithm of a real normal matrix.

    Parameters
    ----------
    a : (n, n) array_like
        Normal matrix without eigenvalues on the closed negative real axis,
        except negative real eigenvalues that come in equal pairs.
    kp : KernelProvider or str, optional
    method : {"normal_schur", "general_schur"}
        Which Schur form drives the computation.
    tol_neg : float
        Relative tolerance for pairing equal negative eigenvalues.
    orthogonal : bool
        Treat `a` as orthogonal (unit moduli); the result is exactly skew.

    Examples
    --------
    >>> np.round(logm_normal(-np.eye(2)), 12) + 0.0
    array([[ 0.        , -3.14159265],
           [ 3.14159265,  0.        ]])
    """
    return logm_from_schur(block_schur(a, kp, method, opts), tol_neg=tol_neg, orthogonal=orthogonal)


def _rotation_blocks(q, p, r, c, s):
    # Q blockrot(c, s) Q^T with identity on the middle block.
    off = p + r
    q1, qr, q2 = q[:, :p], q[:, p:off], q[:, off:]
    y = np.empty_like(q)
    y[:, :p] = q1 * c + q2 * s
    y[:, off:] = q2 * c - q1 * s
    y[:, p:off] = qr
    return y @ q.T


def expm_skew(
    omega,
    kp: str | KernelProvider | None = None,
    *,
    method: str = "normal_schur",
    check: bool = True,
) -> np.ndarray:
    """Exponential of a skew-symmetric matrix (a rotation).

    ``exp(Omega) = Q^ blockrot(Sigma) Q^T`` from the skew Schur form; the
    ``general_schur`` method reads the rotation angles off the provider's
    general real Schur form instead.

    >>> t = 1.0
    >>> r = expm_skew(np.array([[0.0, -t], [t, 0.0]]))
    >>> bool(np.allclose(r, [[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]]))
    True
    """
    omega = check_skew(omega) if check else as_matrix(omega, square=True)
    if method == "normal_schur":
        ss = skew_schur_decompose(omega, kp, check=False)
        return _rotation_blocks(ss.q_hat, ss.p, ss.r, np.cos(ss.sigma), np.sin(ss.sigma))
    if method == "general_schur":
        # real eigenvalues of a skew matrix are zero: identity on that block
        bs = general_block_schur(omega, kp)
        sig = bs.lam * np.sin(bs.theta)
        return _rotation_blocks(bs.q, bs.p, bs.r, np.cos(sig), np.sin(sig))
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def check_special_orthogonal(q, *, tol: float | None = None, index: int | None = None) -> np.ndarray:
    """Validate ``q`` in SO(n): orthogonal to `tol` and ``det(q) = +1``.

    `tol` defaults to ``max(tol_orth(n), 1e-12)``.
    """
    q = as_matrix(q, square=True)
    n = q.shape[0]
    if tol is None:
        tol = max(tol_orth(n), 1e-12)
    where = "" if index is None else f" (sample {index})"
    defect = orthogonality_defect(q)
    if defect > tol:
        raise NotSpecialOrthogonalError(f"matrix is not orthogonal{where}: defect {defect:.3e}", index)
    det = np.linalg.det(q)
    if abs(det - 1.0) > 1e-8:
        raise NotSpecialOrthogonalError(f"determinant is {det:.6f}, not +1{where}", index)
    return q


def so_distance(qa, qb, kp: str | KernelProvider | None = None, *, method: str = "normal_schur") -> float:
    """Riemannian distance ``||log(Qa^T Qb)||_F`` on SO(n).

    >>> c, s = np.cos(0.3), np.sin(0.3)
    >>> d = float(so_distance(np.eye(2), np.array([[c, -s], [s, c]])))
    >>> round(d / float(np.sqrt(2)), 12)
    0.3
    """
    qa = check_special_orthogonal(qa)
    qb = check_special_orthogonal(qb)
    return frobenius_norm(logm_normal(qa.T @ qb, kp, method=method, orthogonal=True))


def fundamental_formula_error(theta, eps) -> np.ndarray:
    """Error of ``cos(theta)`` recovered as ``sqrt(1 - (sin(theta) - eps)^2)``.

    Returns ``|c_hat - cos(theta)|`` for a sine perturbed by `eps`.  The
    difference is evaluated through ``c_hat^2 - cos^2 = 2 eps sin - eps^2``,
    i.e. ``(2 eps sin(theta) - eps^2) / (c_hat + cos(theta))``, which avoids
    the cancellation a direct subtraction suffers near ``theta = 0``.

    >>> print(f"{float(fundamental_formula_error(0.0, 1e-8)):.3g}")
    5e-17
    """
    theta = np.asarray(theta, dtype=np.float64)
    s = np.sin(theta)
    c = np.cos(theta)
    c_hat = np.sqrt(1.0 - (s - eps) ** 2)
    return np.abs((2.0 * eps * s - eps * eps) / (c_hat + c))
