"""Compiled Householder reduction of a skew-symmetric matrix to tridiagonal form.

Both variants work on a C-ordered copy of the input and only ever read the
strict lower triangle of the trailing submatrix.  Reflector ``j`` (for
``j = 0 .. n-3``) zeroes column ``j`` below row ``j + 1``; it is
``H_j = I - tau_j u_j u_j^T`` with ``u_j[j + 1] = 1`` and support on rows
``j + 1 .. n - 1``.  Its unit-free part is stored in ``k[j + 2:, j]``.

For a skew-symmetric ``K`` and ``y = tau K u`` one has ``u^T K u = 0``, so the
two-sided update collapses to a skew rank-2 correction::

    H K H = K + u y^T - y u^T.

The blocked variant accumulates these corrections for a panel of ``nb``
reflectors (``K_cur = K_stored + U Y^T - Y U^T``) and applies them to the
trailing lower triangle with one matrix product per panel.
"""

import numpy as np
from numba import njit

from .kernels._loops import larfg

PANEL = 32


@njit(cache=True, fastmath=True)
def _skew_matvec_lower(k, lo, u, y):
    # y[lo:] += K[lo:, lo:] u[lo:] reading only the strict lower triangle.
    # Four rows per sweep; loops run over zero-based slices so that LLVM
    # can vectorize them.
    n = k.shape[0]
    r = lo
    while r + 3 < n:
        u0 = u[r]
        u1 = u[r + 1]
        u2 = u[r + 2]
        u3 = u[r + 3]
        k0 = k[r, lo:r]
        k1 = k[r + 1, lo:r]
        k2 = k[r + 2, lo:r]
        k3 = k[r + 3, lo:r]
        us = u[lo:r]
        ys = y[lo:r]
        a0 = 0.0
        a1 = 0.0
        a2 = 0.0
        a3 = 0.0
        for c in range(k0.shape[0]):
            x0 = k0[c]
            x1 = k1[c]
            x2 = k2[c]
            x3 = k3[c]
            uc = us[c]
            a0 += x0 * uc
            a1 += x1 * uc
            a2 += x2 * uc
            a3 += x3 * uc
            ys[c] -= x0 * u0 + x1 * u1 + x2 * u2 + x3 * u3
        for i in range(1, 4):
            for j in range(i):
                x = k[r + i, r + j]
                y[r + i] += x * u[r + j]
                y[r + j] -= x * u[r + i]
        y[r] += a0
        y[r + 1] += a1
        y[r + 2] += a2
        y[r + 3] += a3
        r += 4
    while r < n:
        ur = u[r]
        kr = k[r, lo:r]
        us = u[lo:r]
        ys = y[lo:r]
        acc = 0.0
        for c in range(kr.shape[0]):
            acc += kr[c] * us[c]
            ys[c] -= kr[c] * ur
        y[r] += acc
        r += 1


@njit(cache=True)
def tridiagonalize_unblocked(k):
    """Reduce ``k`` in place one reflector at a time.

    Returns ``(sub, tau)``; the reflectors are left in ``k`` below the
    first subdiagonal.
    """
    n = k.shape[0]
    sub = np.zeros(max(n - 1, 0))
    taus = np.zeros(max(n - 2, 0))
    y = np.zeros(n)
    u = np.zeros(n)
    for j in range(n - 2):
        x = k[j + 1 :, j].copy()
        beta, tau = larfg(x)
        sub[j] = beta
        taus[j] = tau
        for r in range(j + 2, n):
            k[r, j] = x[r - j - 1]
        if tau == 0.0:
            continue
        u[:] = 0.0
        y[:] = 0.0
        u[j + 1 :] = x
        _skew_matvec_lower(k, j + 1, u, y)
        for r in range(j + 1, n):
            y[r] *= tau
        for r in range(j + 1, n):
            ur = u[r]
            yr = y[r]
            for c in range(j + 1, r):
                k[r, c] += ur * y[c] - yr * u[c]
    if n >= 2:
        sub[n - 2] = k[n - 1, n - 2]
    return sub, taus


@njit(cache=True, fastmath=True)
def _panel(k, j0, ut, yt, sub, taus):
    # Reduce columns j0 .. j0+nb-1 without touching the trailing matrix.
    # Row i of ut / yt receives u_i / y_i (zero outside rows j0+i+1 ..).
    n = k.shape[0]
    nb = ut.shape[0]
    for i in range(nb):
        j = j0 + i
        m = n - j - 1
        # current column j below the diagonal
        x = np.empty(m)
        for r in range(m):
            x[r] = k[j + 1 + r, j]
        for l in range(i):
            a = yt[l, j]
            b = ut[l, j]
            ul = ut[l, j + 1 :]
            yl = yt[l, j + 1 :]
            for r in range(m):
                x[r] += ul[r] * a - yl[r] * b
        beta, tau = larfg(x)
        sub[j] = beta
        taus[j] = tau
        for r in range(1, m):
            k[j + 1 + r, j] = x[r]
        if tau == 0.0:
            continue
        u = ut[i]
        y = yt[i]
        for r in range(m):
            u[j + 1 + r] = x[r]
        _skew_matvec_lower(k, j + 1, u, y)
        ys = y[j + 1 :]
        # pending panel corrections: + U (Y^T u) - Y (U^T u)
        for l in range(i):
            ul = ut[l, j + 1 :]
            yl = yt[l, j + 1 :]
            a = 0.0
            b = 0.0
            for r in range(m):
                a += yl[r] * x[r]
                b += ul[r] * x[r]
            for r in range(m):
                ys[r] += ul[r] * a - yl[r] * b
        for r in range(m):
            ys[r] *= tau


@njit(cache=True, fastmath=True)
def _add_skew_lower(k, lo, g):
    # K[lo:, lo:] += tril(G - G^T), G indexed from lo
    m = g.shape[0]
    for i in range(m):
        kr = k[lo + i, lo : lo + i]
        gr = g[i, :i]
        for c in range(i):
            kr[c] += gr[c] - g[c, i]


def tridiagonalize_blocked(k, nb=PANEL):
    """Panel-blocked reduction of ``k`` in place; same outputs as the unblocked one."""
    n = k.shape[0]
    sub = np.zeros(max(n - 1, 0))
    taus = np.zeros(max(n - 2, 0))
    nref = n - 2
    j0 = 0
    while j0 < nref:
        b = min(nb, nref - j0)
        ut = np.zeros((b, n))
        yt = np.zeros((b, n))
        _panel(k, j0, ut, yt, sub, taus)
        lo = j0 + b
        if lo < n:
            g = ut[:, lo:].T @ yt[:, lo:]
            _add_skew_lower(k, lo, g)
        j0 += b
    if n >= 2:
        sub[n - 2] = k[n - 1, n - 2]
    return sub, taus


@njit(cache=True)
def accumulate_unblocked(k, taus):
    """Explicit ``Q = H_0 H_1 ... H_{n-3}`` from the reflectors stored in ``k``."""
    n = k.shape[0]
    q = np.eye(n)
    v = np.zeros(n)
    for j in range(n - 3, -1, -1):
        tau = taus[j]
        if tau == 0.0:
            continue
        v[j + 1] = 1.0
        for r in range(j + 2, n):
            v[r] = k[r, j]
        w = np.zeros(n)
        for r in range(j + 1, n):
            vr = v[r]
            for c in range(j + 1, n):
                w[c] += vr * q[r, c]
        for r in range(j + 1, n):
            f = tau * v[r]
            for c in range(j + 1, n):
                q[r, c] -= f * w[c]
    return q
