"""Compiled scalar loops behind the reference kernels.

All routines return an integer status (0 on success, 1 when the iteration
cap was hit) instead of raising, so that the Python wrappers can turn the
status into a proper exception.
"""

import math

import numpy as np
from numba import njit

_EPS = 2.220446049250313e-16


@njit(cache=True)
def larfg(x):
    """Householder reflector for the vector ``x`` (overwritten in place).

    On return ``x`` holds ``v`` with ``v[0] = 1`` and
    ``(I - tau v v^T) x_in = beta e_1``.  Returns ``(beta, tau)``.
    """
    alpha = x[0]
    xnorm = 0.0
    for i in range(1, x.shape[0]):
        xnorm += x[i] * x[i]
    xnorm = math.sqrt(xnorm)
    if xnorm == 0.0:
        x[0] = 1.0
        return alpha, 0.0
    beta = -math.copysign(math.hypot(alpha, xnorm), alpha)
    tau = (beta - alpha) / beta
    scal = 1.0 / (alpha - beta)
    for i in range(1, x.shape[0]):
        x[i] *= scal
    x[0] = 1.0
    return beta, tau


@njit(cache=True)
def _rot_cols(m, i, j, c, s):
    # [m_i, m_j] <- [c m_i + s m_j, c m_j - s m_i]
    for k in range(m.shape[0]):
        y = m[k, i]
        z = m[k, j]
        m[k, i] = y * c + z * s
        m[k, j] = z * c - y * s


@njit(cache=True)
def golub_kahan_svd(d, e, u, v, max_sweeps):
    """Implicit-shift QR on the upper bidiagonal ``(d, e)``.

    ``u`` and ``v`` must enter as identities; on exit ``B = u diag(w) v^T``
    with ``w >= 0`` (unsorted).  Returns ``(w, status)``.
    """
    p = d.shape[0]
    w = d.copy()
    rv1 = np.zeros(p)
    for i in range(1, p):
        rv1[i] = e[i - 1]
    anorm = 0.0
    for i in range(p):
        anorm = max(anorm, abs(w[i]) + abs(rv1[i]))
    tol = _EPS * anorm
    for k in range(p - 1, -1, -1):
        its = 0
        while True:
            flag = True
            l = k
            while l >= 0:
                if abs(rv1[l]) <= tol:
                    flag = False
                    break
                if abs(w[l - 1]) <= tol:
                    break
                l -= 1
            if flag:
                # w[l-1] is negligible: chase rv1[l..k] out of row l-1
                nm = l - 1
                c = 0.0
                s = 1.0
                for i in range(l, k + 1):
                    f = s * rv1[i]
                    rv1[i] = c * rv1[i]
                    if abs(f) <= tol:
                        break
                    g = w[i]
                    h = math.hypot(f, g)
                    w[i] = h
                    c = g / h
                    s = -f / h
                    _rot_cols(u, nm, i, c, s)
            z = w[k]
            if l == k:
                if z < 0.0:
                    w[k] = -z
                    for j in range(p):
                        v[j, k] = -v[j, k]
                break
            if its >= max_sweeps:
                return w, 1
            its += 1
            # Wilkinson-type shift from the trailing 2x2 of B^T B
            x = w[l]
            nm = k - 1
            y = w[nm]
            g = rv1[nm]
            h = rv1[k]
            f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y)
            g = math.hypot(f, 1.0)
            f = ((x - z) * (x + z) + h * ((y / (f + math.copysign(g, f))) - h)) / x
            c = 1.0
            s = 1.0
            for j in range(l, nm + 1):
                i = j + 1
                g = rv1[i]
                y = w[i]
                h = s * g
                g = c * g
                z = math.hypot(f, h)
                rv1[j] = z
                c = f / z
                s = h / z
                f = x * c + g * s
                g = g * c - x * s
                h = y * s
                y *= c
                _rot_cols(v, j, i, c, s)
                z = math.hypot(f, h)
                w[j] = z
                if z != 0.0:
                    c = f / z
                    s = h / z
                f = c * g + s * y
                x = c * y - s * g
                _rot_cols(u, j, i, c, s)
            rv1[l] = 0.0
            rv1[k] = f
            w[k] = x
    return w, 0


@njit(cache=True)
def householder_tridiagonal(a, q):
    """Reduce the symmetric ``a`` (in place) to tridiagonal form.

    ``q`` enters as the identity and leaves as the orthogonal factor with
    ``a_in = q T q^T``.  Returns ``(diag, offdiag)``.
    """
    n = a.shape[0]
    taus = np.zeros(max(n - 2, 0))
    vs = np.zeros((n, max(n - 2, 0)))
    off = np.zeros(max(n - 1, 0))
    for j in range(n - 2):
        x = a[j + 1 :, j].copy()
        beta, tau = larfg(x)
        off[j] = beta
        taus[j] = tau
        vs[j + 1 :, j] = x
        if tau == 0.0:
            continue
        m = n - j - 1
        # p = tau * A v ; w = p - (tau/2)(p.v) v ; A <- A - v w^T - w v^T
        pv = np.zeros(m)
        for r in range(m):
            acc = 0.0
            for c in range(m):
                acc += a[j + 1 + r, j + 1 + c] * x[c]
            pv[r] = tau * acc
        alpha = 0.0
        for r in range(m):
            alpha += pv[r] * x[r]
        alpha *= 0.5 * tau
        for r in range(m):
            pv[r] -= alpha * x[r]
        for r in range(m):
            for c in range(m):
                a[j + 1 + r, j + 1 + c] -= x[r] * pv[c] + pv[r] * x[c]
    if n >= 2:
        off[n - 2] = a[n - 1, n - 2]
    diag = np.zeros(n)
    for i in range(n):
        diag[i] = a[i, i]
    # backward accumulation q = H_0 H_1 ... H_{n-3}
    for j in range(n - 3, -1, -1):
        tau = taus[j]
        if tau == 0.0:
            continue
        for c in range(j + 1, n):
            acc = 0.0
            for r in range(j + 1, n):
                acc += vs[r, j] * q[r, c]
            acc *= tau
            for r in range(j + 1, n):
                q[r, c] -= acc * vs[r, j]
    return diag, off


@njit(cache=True)
def tridiagonal_ql(d, e, z, max_sweeps):
    """Implicit QL with Wilkinson shift on the symmetric tridiagonal (d, e).

    ``e[i]`` couples ``i`` and ``i+1``; ``z`` accumulates the eigenvectors.
    ``d`` is overwritten with the (unsorted) eigenvalues.  Returns status.
    """
    n = d.shape[0]
    ee = np.zeros(n)
    for i in range(n - 1):
        ee[i] = e[i]
    for l in range(n):
        its = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(ee[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if its >= max_sweeps:
                return 1
            its += 1
            g = (d[l + 1] - d[l]) / (2.0 * ee[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + ee[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            restart = False
            while i >= l:
                f = s * ee[i]
                b = c * ee[i]
                r = math.hypot(f, g)
                ee[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    ee[m] = 0.0
                    restart = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(z.shape[0]):
                    f = z[k, i + 1]
                    z[k, i + 1] = s * z[k, i] + c * f
                    z[k, i] = c * z[k, i] - s * f
                i -= 1
            if restart:
                continue
            d[l] -= p
            ee[l] = g
            ee[m] = 0.0
    return 0


@njit(cache=True)
def hessenberg_reduce(h, q):
    """Householder reduction of ``h`` (in place) to upper Hessenberg form.

    ``q`` enters as the identity; on exit ``h_in = q H q^T``.
    """
    n = h.shape[0]
    for j in range(n - 2):
        x = h[j + 1 :, j].copy()
        beta, tau = larfg(x)
        if tau == 0.0:
            continue
        m = n - j - 1
        # rows j+1..n-1, all columns j..n-1
        for c in range(j, n):
            acc = 0.0
            for r in range(m):
                acc += x[r] * h[j + 1 + r, c]
            acc *= tau
            for r in range(m):
                h[j + 1 + r, c] -= acc * x[r]
        # columns j+1..n-1, all rows
        for r in range(n):
            acc = 0.0
            for c in range(m):
                acc += h[r, j + 1 + c] * x[c]
            acc *= tau
            for c in range(m):
                h[r, j + 1 + c] -= acc * x[c]
        for r in range(n):
            acc = 0.0
            for c in range(m):
                acc += q[r, j + 1 + c] * x[c]
            acc *= tau
            for c in range(m):
                q[r, j + 1 + c] -= acc * x[c]
        h[j + 1, j] = beta
        for r in range(j + 2, n):
            h[r, j] = 0.0


@njit(cache=True)
def lanv2(a, b, c, d):
    """Schur factorization of a real 2x2 block in standardized form.

    Returns ``(a, b, c, d, cs, sn)`` with
    ``[[a0, b0], [c0, d0]] = R [[a, b], [c, d]] R^T``,
    ``R = [[cs, -sn], [sn, cs]]``; either ``c == 0`` or ``a == d`` and
    ``b*c < 0``.
    """
    if c == 0.0:
        cs = 1.0
        sn = 0.0
    elif b == 0.0:
        cs = 0.0
        sn = 1.0
        temp = d
        d = a
        a = temp
        b = -c
        c = 0.0
    elif (a - d) == 0.0 and math.copysign(1.0, b) != math.copysign(1.0, c):
        cs = 1.0
        sn = 0.0
    else:
        temp = a - d
        p = 0.5 * temp
        bcmax = max(abs(b), abs(c))
        bcmis = min(abs(b), abs(c)) * math.copysign(1.0, b) * math.copysign(1.0, c)
        scale = max(abs(p), bcmax)
        z = (p / scale) * p + (bcmax / scale) * bcmis
        if z >= 4.0 * _EPS:
            z = p + math.copysign(math.sqrt(scale) * math.sqrt(z), p)
            a = d + z
            d = d - (bcmax / z) * bcmis
            tau = math.hypot(c, z)
            cs = z / tau
            sn = c / tau
            b = b - c
            c = 0.0
        else:
            sigma = b + c
            tau = math.hypot(sigma, temp)
            cs = math.sqrt(0.5 * (1.0 + abs(sigma) / tau))
            sn = -(p / (tau * cs)) * math.copysign(1.0, sigma)
            aa = a * cs + b * sn
            bb = -a * sn + b * cs
            cc = c * cs + d * sn
            dd = -c * sn + d * cs
            a = aa * cs + cc * sn
            b = bb * cs + dd * sn
            c = -aa * sn + cc * cs
            d = -bb * sn + dd * cs
            temp = 0.5 * (a + d)
            a = temp
            d = temp
            if c != 0.0:
                if b != 0.0:
                    if math.copysign(1.0, b) == math.copysign(1.0, c):
                        sab = math.sqrt(abs(b))
                        sac = math.sqrt(abs(c))
                        p = math.copysign(sab * sac, c)
                        tau = 1.0 / math.sqrt(abs(b + c))
                        a = temp + p
                        d = temp - p
                        b = b - c
                        c = 0.0
                        cs1 = sab * tau
                        sn1 = sac * tau
                        temp = cs * cs1 - sn * sn1
                        sn = cs * sn1 + sn * cs1
                        cs = temp
                else:
                    b = -c
                    c = 0.0
                    temp = cs
                    cs = -sn
                    sn = temp
    return a, b, c, d, cs, sn


@njit(cache=True)
def _reflect3_rows(h, k, nr, v1, v2, tau, c0, c1):
    for c in range(c0, c1):
        s = h[k, c]
        s += v1 * h[k + 1, c]
        if nr == 3:
            s += v2 * h[k + 2, c]
        s *= tau
        h[k, c] -= s
        h[k + 1, c] -= s * v1
        if nr == 3:
            h[k + 2, c] -= s * v2


@njit(cache=True)
def _reflect3_cols(h, k, nr, v1, v2, tau, r0, r1):
    for r in range(r0, r1):
        s = h[r, k]
        s += v1 * h[r, k + 1]
        if nr == 3:
            s += v2 * h[r, k + 2]
        s *= tau
        h[r, k] -= s
        h[r, k + 1] -= s * v1
        if nr == 3:
            h[r, k + 2] -= s * v2


@njit(cache=True)
def _standardize_block(h, z, i):
    # rows/cols i, i+1 form a deflated 2x2 block
    n = h.shape[0]
    a, b, c, d, cs, sn = lanv2(h[i, i], h[i, i + 1], h[i + 1, i], h[i + 1, i + 1])
    h[i, i] = a
    h[i, i + 1] = b
    h[i + 1, i] = c
    h[i + 1, i + 1] = d
    for col in range(i + 2, n):
        x = h[i, col]
        y = h[i + 1, col]
        h[i, col] = cs * x + sn * y
        h[i + 1, col] = cs * y - sn * x
    for row in range(0, i):
        x = h[row, i]
        y = h[row, i + 1]
        h[row, i] = cs * x + sn * y
        h[row, i + 1] = cs * y - sn * x
    for row in range(z.shape[0]):
        x = z[row, i]
        y = z[row, i + 1]
        z[row, i] = cs * x + sn * y
        z[row, i + 1] = cs * y - sn * x


@njit(cache=True)
def francis_schur(h, z, max_sweeps):
    """Francis double-shift QR on the upper Hessenberg ``h`` (in place).

    ``z`` accumulates the transformations.  On success ``h`` is in real
    Schur form with standardized 2x2 blocks.  Returns status.
    """
    n = h.shape[0]
    hnorm = 0.0
    for i in range(n):
        for j in range(max(i - 1, 0), n):
            hnorm = max(hnorm, abs(h[i, j]))
    if hnorm == 0.0:
        return 0
    hi = n - 1
    its = 0
    vec = np.zeros(3)
    while hi >= 0:
        l = hi
        while l > 0:
            s = abs(h[l - 1, l - 1]) + abs(h[l, l])
            if s == 0.0:
                s = hnorm
            if abs(h[l, l - 1]) <= _EPS * s:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            hi -= 1
            its = 0
            continue
        if l == hi - 1:
            _standardize_block(h, z, hi - 1)
            hi -= 2
            its = 0
            continue
        if its >= max_sweeps:
            return 1
        its += 1
        if its == 10 or its == 20:
            s = abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2])
            h11 = 0.75 * s + h[hi, hi]
            h12 = -0.4375 * s
            h21 = s
            h22 = h11
        else:
            h11 = h[hi - 1, hi - 1]
            h12 = h[hi - 1, hi]
            h21 = h[hi, hi - 1]
            h22 = h[hi, hi]
        tr = h11 + h22
        det = h11 * h22 - h12 * h21
        x = h[l, l] * h[l, l] + h[l, l + 1] * h[l + 1, l] - tr * h[l, l] + det
        y = h[l + 1, l] * (h[l, l] + h[l + 1, l + 1] - tr)
        zz = h[l + 1, l] * h[l + 2, l + 1]
        for k in range(l, hi - 1):
            nr = 3 if k < hi - 1 else 2
            vec[0] = x
            vec[1] = y
            vec[2] = zz
            beta, tau = larfg(vec[:nr])
            v1 = vec[1]
            v2 = vec[2] if nr == 3 else 0.0
            if k > l:
                h[k, k - 1] = beta
                h[k + 1, k - 1] = 0.0
                if nr == 3:
                    h[k + 2, k - 1] = 0.0
            if tau != 0.0:
                _reflect3_rows(h, k, nr, v1, v2, tau, k, n)
                _reflect3_cols(h, k, nr, v1, v2, tau, 0, min(k + 4, hi + 1))
                _reflect3_cols(z, k, nr, v1, v2, tau, 0, z.shape[0])
            x = h[k + 1, k]
            y = h[k + 2, k]
            if k < hi - 2:
                zz = h[k + 3, k]
        # final 2-element reflector
        k = hi - 1
        vec[0] = x
        vec[1] = y
        beta, tau = larfg(vec[:2])
        v1 = vec[1]
        h[k, k - 1] = beta
        h[k + 1, k - 1] = 0.0
        if tau != 0.0:
            _reflect3_rows(h, k, 2, v1, 0.0, tau, k, n)
            _reflect3_cols(h, k, 2, v1, 0.0, tau, 0, hi + 1)
            _reflect3_cols(z, k, 2, v1, 0.0, tau, 0, z.shape[0])
    return 0
