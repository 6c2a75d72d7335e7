"""Real Schur decomposition of a real normal matrix through its skew part.

For a normal ``A`` the Schur vectors of ``skew(A)`` are almost those of
``A``.  Three kinds of eigenvalues need different amounts of extra work:

* complex pairs whose imaginary parts ``sigma_j`` are isolated: the skew
  Schur vectors already work, and only ``lam cos(theta)`` has to be read off
  ``diag(Q1^T A Q1)``;
* complex pairs sharing one ``sigma`` (a cluster of multiplicity ``m``):
  the ``2m``-dimensional invariant subspace ``V`` carries
  ``V^T A V = [[W, -X - sigma I], [X + sigma I, W]]`` with ``W`` symmetric
  and ``X`` skew, which a small ``2m x 2m`` Schur problem resolves;
* real eigenvalues: ``A`` restricted to the null space of ``skew(A)`` is
  symmetric, so a symmetric EVD of size ``r`` finishes the job.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .dense import EPS, BlockSchur, as_matrix, frobenius_norm, normality_defect, skew_part
from .errors import ClusteringError, LanczosBreakdown, NotNormalError
from .kernels import KernelProvider, get_provider
from .skew import EPS1, EPS1_SCALES, sigma_scale, skew_schur_decompose

GROUP2_PATHS = ("default", "symplectic")


@dataclass(frozen=True)
class SigmaCluster:
    """Indices ``start .. start + m - 1`` of ``sigma`` treated as one value."""

    start: int
    m: int
    value: float

    @property
    def stop(self) -> int:
        return self.start + self.m


@dataclass(frozen=True)
class Group2Result:
    """``V^T A V = R [[D, -sigma I], [sigma I, D]] R^T`` with ``d = diag(D)``.

    `scenario` is 1 when the shortcut ``R = I`` applied, 2 when the
    symplectic Lanczos path succeeded and 3 for the general Schur path.
    """

    r_block: np.ndarray
    d: np.ndarray
    scenario: int


@dataclass(frozen=True)
class NormalSchurOptions:
    """Tuning knobs of :func:`normal_schur`.

    Attributes
    ----------
    eps1 : float
        Relative tolerance below which singular values are zero and within
        which they are equal.
    eps1_scale : {"fro", "max"}
        What `eps1` is relative to: ``||A||_F`` or ``sigma_max``.
    normality_tol : float
        Upper bound on :func:`~nrmschur.dense.normality_defect`.
    skip_check : bool
        Skip the O(n^3) normality check (benchmarks).
    group2_path : {"default", "symplectic"}
        How clusters of repeated ``sigma`` are resolved.
    tol_scn : float
        Relative tolerance of the ``D = d I`` shortcut test.
    asym_tol : float
        Largest admissible ``||H - H^T||_F / ||A||_F`` for the real block.
    offdiag_tol : float
        A warning is issued when the first column block leaves a relative
        residual above this value (signals an undetected cluster).
    blocked : bool or None
        Tridiagonalization variant (None: decided by the provider).
    seed : int or None
        Seed for the starting vectors of the symplectic Lanczos path.
    """

    eps1: float = EPS1
    eps1_scale: str = "fro"
    normality_tol: float = 1e-8
    skip_check: bool = False
    group2_path: str = "default"
    tol_scn: float = 1e-10
    asym_tol: float = 1e-8
    offdiag_tol: float = 1e-8
    blocked: bool | None = None
    seed: int | None = None


_DEFAULT_OPTIONS = NormalSchurOptions()


def cluster_sigmas(sigma, eps1: float = EPS1, scale: float | None = None) -> list[SigmaCluster]:
    """Greedy grouping of descending singular values.

    A value joins the current cluster iff it lies within ``eps1 * scale``
    of the cluster's first member; `scale` defaults to ``max(sigma)``.

    >>> [(c.start, c.m) for c in cluster_sigmas([5.0, 5.0, 5.0, 3.0])]
    [(0, 3), (3, 1)]
    """
    sigma = np.asarray(sigma, dtype=np.float64)
    if sigma.size == 0:
        return []
    if scale is None:
        scale = float(np.max(sigma))
    tol = eps1 * scale
    if np.all(sigma[:-1] - sigma[1:] >= tol):
        return [SigmaCluster(i, 1, float(x)) for i, x in enumerate(sigma)]
    clusters = []
    start = 0
    for i in range(1, sigma.size + 1):
        if i == sigma.size or abs(sigma[start] - sigma[i]) >= tol:
            clusters.append(SigmaCluster(start, i - start, float(sigma[start])))
            start = i
    return clusters


def split_wx(vt, sigma):
    """Extract ``(W, X)`` from ``[[W, -X - sigma I], [X + sigma I, W]]``.

    The two estimates of each block are averaged, so ``W`` comes out exactly
    symmetric and ``X`` exactly skew.
    """
    m = vt.shape[0] // 2
    w = 0.5 * (vt[:m, :m] + vt[m:, m:])
    w = 0.5 * (w + w.T)
    x = 0.5 * (vt[m:, :m] - vt[:m, m:]) - sigma * np.eye(m)
    x = 0.5 * (x - x.T)
    return w, x


def _from_real_schur(q, s, sigma, tol):
    # Turn a standardized real Schur form of [[D, -sI], [sI, D]] (up to an
    # orthogonal symplectic similarity) into R and d.
    n2 = s.shape[0]
    m = n2 // 2
    cols1, cols2, d = [], [], []
    i = 0
    while i < n2:
        if i + 1 < n2 and s[i + 1, i] != 0.0:
            a, b, c = s[i, i], s[i, i + 1], s[i + 1, i]
            imag = np.sqrt(abs(b * c))
            if abs(imag - sigma) > tol:
                raise ClusteringError(
                    f"imaginary part {imag:.17g} deviates from the cluster value "
                    f"{sigma:.17g} by more than {tol:.3e}"
                )
            cols1.append(q[:, i])
            cols2.append(np.copysign(1.0, c) * q[:, i + 1])
            d.append(0.5 * (a + s[i + 1, i + 1]))
            i += 2
        else:
            raise ClusteringError(
                f"real eigenvalue {s[i, i]:.17g} in a repeated-sigma subproblem; "
                "the cluster is inconsistent"
            )
    if len(d) != m:  # pragma: no cover - guarded by the loop above
        raise ClusteringError("subproblem does not split into m pairs")
    d = np.asarray(d)
    order = np.argsort(-d, kind="stable")
    r = np.empty((n2, n2))
    r[:, :m] = np.column_stack(cols1)[:, order]
    r[:, m:] = np.column_stack(cols2)[:, order]
    return r, d[order]


def group2_subproblem(
    a,
    v,
    sigma: float,
    kp: str | KernelProvider | None = None,
    *,
    path: str = "default",
    tol_scn: float = 1e-10,
    cluster_tol: float | None = None,
    rng=None,
) -> Group2Result:
    """Resolve a cluster of ``m`` pairs sharing the imaginary part ``sigma``.

    Parameters
    ----------
    a : (n, n) array_like
        The normal matrix.
    v : (n, 2m) array_like
        Orthonormal basis of the cluster's invariant subspace: the ``m``
        leading Schur vectors of the cluster followed by their ``m`` partners.
    sigma : float
        Cluster value.
    kp : KernelProvider or str, optional
    path : {"default", "symplectic"}
        ``"symplectic"`` first tries the structured Lanczos solver and falls
        back to the general real Schur form when it breaks down or loses
        orthogonality.
    tol_scn : float
        The shortcut ``R = I`` is taken when ``V^T A V`` equals
        ``[[w I, -sigma I], [sigma I, w I]]`` to this tolerance relative to
        ``||V^T A V||_F`` (``W = w I`` and ``X = 0``).
    cluster_tol : float, optional
        Width of the cluster (``eps1 * sigma`` by default).  The recovered
        imaginary parts may deviate from `sigma` by this much plus
        ``32 m eps ||V^T A V||_F`` for rounding.
    rng : numpy.random.Generator, optional
        Starting vectors of the symplectic path.

    Returns
    -------
    Group2Result
    """
    if path not in GROUP2_PATHS:
        raise ValueError(f"unknown group-2 path {path!r}; choose from {GROUP2_PATHS}")
    kp = get_provider(kp)
    a = as_matrix(a, square=True)
    v = np.asarray(v, dtype=np.float64)
    m = v.shape[1] // 2
    vt = v.T @ (a @ v)
    nrm = frobenius_norm(vt)
    w, x = split_wx(vt, sigma)
    wbar = float(np.trace(w)) / m
    # shortcut only if V^T A V is wbar I + sigma J as a whole, which also
    # rules out a cluster whose members do not share sigma
    target = np.zeros_like(vt)
    target[np.arange(2 * m), np.arange(2 * m)] = wbar
    target[np.arange(m), np.arange(m, 2 * m)] = -sigma
    target[np.arange(m, 2 * m), np.arange(m)] = sigma
    if frobenius_norm(vt - target) <= tol_scn * nrm:
        return Group2Result(np.eye(2 * m), np.full(m, wbar), 1)
    if path == "symplectic":
        from .symplectic import WXMatrix, wx_eigen

        try:
            res = wx_eigen(WXMatrix(w, x), kp, rng)
        except LanczosBreakdown:
            res = None
        if res is not None and not res.degraded:
            return Group2Result(res.r, res.d, 2)
    if cluster_tol is None:
        cluster_tol = EPS1 * sigma
    tol = cluster_tol + 32.0 * m * EPS * nrm
    q, s = kp.general_real_schur(vt)
    r, d = _from_real_schur(q, s, sigma, tol)
    return Group2Result(r, d, 3)


def real_block_evd(
    a, q_r, kp: str | KernelProvider | None = None, *, asym_tol: float = 1e-8, aq_r=None, norm=None
):
    """Symmetric EVD of ``H = Q_r^T A Q_r`` on the null space of ``skew(A)``.

    Returns ``(r_breve, lam_real)`` with `lam_real` descending.  Raises
    :class:`~nrmschur.errors.NotNormalError` when ``||H - H^T||_F`` exceeds
    ``asym_tol * ||A||_F``.  A precomputed product ``A Q_r`` and norm
    ``||A||_F`` may be passed as `aq_r` and `norm`.
    """
    kp = get_provider(kp)
    q_r = np.asarray(q_r, dtype=np.float64)
    if aq_r is None:
        a = as_matrix(a, square=True)
        aq_r = a @ q_r
    h = q_r.T @ aq_r
    asym = frobenius_norm(h - h.T)
    if norm is None:
        norm = frobenius_norm(a)
    if asym > asym_tol * norm:
        raise NotNormalError(
            f"restriction to the null space of skew(A) is not symmetric "
            f"(||H - H^T||_F = {asym:.3e})",
            normality_defect(a),
        )
    if h.shape[0] == 1:
        return np.ones((1, 1)), h[0].copy()
    return kp.symmetric_evd((h + h.T) * 0.5)


def normal_schur(a, kp: str | KernelProvider | None = None, opts: NormalSchurOptions | None = None, **kwargs) -> BlockSchur:
    """Permuted real Schur form of a real normal matrix.

    Parameters
    ----------
    a : (n, n) array_like
        Real normal matrix.
    kp : KernelProvider or str, optional
        Kernel provider (``"native"`` or ``"reference"``).
    opts : NormalSchurOptions, optional
        Tolerances and switches; keyword arguments override its fields.

    Returns
    -------
    BlockSchur
        ``A = Q S Q^T`` with ``S`` in the ``[Q_c1 | Q_r | Q_c2]`` layout.

    Examples
    --------
    >>> c, s = np.cos(0.3), np.sin(0.3)
    >>> bs = normal_schur(2.0 * np.array([[c, -s], [s, c]]))
    >>> float(np.round(bs.lam[0], 12)), float(np.round(bs.theta[0], 12))
    (2.0, 0.3)
    """
    opts = opts or _DEFAULT_OPTIONS
    if kwargs:
        opts = replace(opts, **kwargs)
    if opts.group2_path not in GROUP2_PATHS:
        raise ValueError(f"unknown group-2 path {opts.group2_path!r}; choose from {GROUP2_PATHS}")
    if opts.eps1_scale not in EPS1_SCALES:
        raise ValueError(f"unknown eps1 scale {opts.eps1_scale!r}; choose from {EPS1_SCALES}")
    kp = get_provider(kp)
    a = as_matrix(a, square=True)
    if not opts.skip_check:
        defect = normality_defect(a)
        if defect > opts.normality_tol:
            raise NotNormalError(f"matrix is not normal (defect {defect:.3e} > {opts.normality_tol:.1e})", defect)

    # eps1 is relative to ||A||_F: a symmetric A has a skew part made of
    # rounding noise, and its own norm says nothing about what is zero
    a_norm = frobenius_norm(a)
    norm = a_norm if opts.eps1_scale == "fro" else None
    ss = skew_schur_decompose(
        skew_part(a), kp, opts.eps1,
        blocked=opts.blocked, check=False, scale=opts.eps1_scale, norm=norm, overwrite_a=True,
    )
    q, sigma, p, r = ss.q_hat, ss.sigma, ss.p, ss.r
    off = p + r
    rng = np.random.default_rng(opts.seed) if opts.group2_path == "symplectic" else None

    scale = sigma_scale(sigma, opts.eps1_scale) if norm is None else norm
    clustered = p > 1 and bool(np.any(sigma[:-1] - sigma[1:] < opts.eps1 * scale))
    for cl in cluster_sigmas(sigma, opts.eps1, scale) if clustered else ():
        if cl.m == 1:
            continue
        i1 = slice(cl.start, cl.stop)
        i2 = slice(off + cl.start, off + cl.stop)
        v = np.concatenate([q[:, i1], q[:, i2]], axis=1)
        g2 = group2_subproblem(
            a, v, cl.value, kp,
            path=opts.group2_path, tol_scn=opts.tol_scn, cluster_tol=opts.eps1 * scale, rng=rng,
        )
        if g2.scenario != 1:
            vr = v @ g2.r_block
            q[:, i1] = vr[:, : cl.m]
            q[:, i2] = vr[:, cl.m :]

    # one product A [Q_c1 | Q_r] serves both the pair real parts and H
    lam_cos = np.zeros(p)
    lam_real = np.zeros(0)
    if off:
        q1r = q[:, :off]
        aq = a @ q1r
    if p:
        q1 = q1r[:, :p]
        aq1 = aq[:, :p]
        lam_cos = np.einsum("ij,ij->j", q1, aq1)
        # what the discarded off-diagonal part of Q1^T A Q1 leaves behind
        aq1 -= q1 * lam_cos
        aq1 -= q[:, off:] * sigma
        res = frobenius_norm(aq1) / max(a_norm, np.finfo(float).tiny)
        if res > opts.offdiag_tol:
            warnings.warn(
                f"leading Schur block is not invariant to working accuracy (relative residual {res:.2e}); "
                "singular values may be clustered more tightly than eps1 resolves",
                RuntimeWarning,
                stacklevel=2,
            )
    if r:
        r_breve, lam_real = real_block_evd(a, q1r[:, p:], kp, asym_tol=opts.asym_tol, aq_r=aq[:, p:], norm=a_norm)
        q[:, p:off] = q[:, p:off] @ r_breve

    return BlockSchur(q, np.hypot(lam_cos, sigma), np.arctan2(sigma, lam_cos), lam_real)


def general_block_schur(a, kp: str | KernelProvider | None = None) -> BlockSchur:
    """:class:`BlockSchur` of a normal matrix read off the general real Schur form.

    This is the baseline route: ``A = Q S Q^T`` from the provider's general
    real Schur routine, with every standardized ``2 x 2`` block
    ``[[a, b], [c, a]]`` turned into one pair and every ``1 x 1`` block into a
    real eigenvalue.  The strictly upper part of ``S`` (zero up to rounding
    for normal ``A``) is ignored.  The result is ordered like
    :func:`normal_schur` output.
    """
    kp = get_provider(kp)
    a = as_matrix(a, square=True)
    q, s = kp.general_real_schur(a)
    n = s.shape[0]
    c1, c2, lc, sg, cr, lr = [], [], [], [], [], []
    i = 0
    while i < n:
        if i + 1 < n and s[i + 1, i] != 0.0:
            b, c = s[i, i + 1], s[i + 1, i]
            c1.append(q[:, i])
            c2.append(np.copysign(1.0, c) * q[:, i + 1])
            lc.append(0.5 * (s[i, i] + s[i + 1, i + 1]))
            sg.append(np.sqrt(abs(b * c)))
            i += 2
        else:
            cr.append(q[:, i])
            lr.append(s[i, i])
            i += 1
    sg = np.asarray(sg)
    lc = np.asarray(lc)
    lr = np.asarray(lr)
    o = np.argsort(-sg, kind="stable")
    orr = np.argsort(-lr, kind="stable")
    cols = [np.column_stack(c1)[:, o]] if c1 else []
    if cr:
        cols.append(np.column_stack(cr)[:, orr])
    if c2:
        cols.append(np.column_stack(c2)[:, o])
    qq = np.ascontiguousarray(np.concatenate(cols, axis=1))
    return BlockSchur(qq, np.hypot(lc[o], sg[o]), np.arctan2(sg[o], lc[o]), lr[orr])
