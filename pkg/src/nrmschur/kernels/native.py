"""Kernels bound to the LAPACK shipped with SciPy.

``bidiagonal_svd`` calls ``dbdsdc`` directly through the function pointers
exported by :mod:`scipy.linalg.cython_lapack`; the remaining kernels use the
regular :mod:`scipy.linalg` wrappers (``syevd``, ``gees``, ``gehrd``/``orghr``).
"""

import ctypes
import functools

import numpy as np
import scipy.linalg as sla
from scipy.linalg import cython_lapack

from ..dense import as_matrix
from ..errors import ConvergenceError
from .reference import check_symmetric

_P = ctypes.c_void_p


@functools.lru_cache(maxsize=None)
def _lapack_fn(name, nargs):
    capsule = cython_lapack.__pyx_capi__[name]
    get_name = ctypes.pythonapi.PyCapsule_GetName
    get_name.restype = ctypes.c_char_p
    get_name.argtypes = [ctypes.py_object]
    get_ptr = ctypes.pythonapi.PyCapsule_GetPointer
    get_ptr.restype = ctypes.c_void_p
    get_ptr.argtypes = [ctypes.py_object, ctypes.c_char_p]
    ptr = get_ptr(capsule, get_name(capsule))
    return ctypes.CFUNCTYPE(None, *([_P] * nargs))(ptr)


_FLAG_U = ctypes.c_char(b"U")
_FLAG_I = ctypes.c_char(b"I")


_F8 = 8
_I4 = ctypes.sizeof(ctypes.c_int)


def _dbdsdc(d, e):
    # One float and one int buffer carved into all arguments keeps the
    # per-call ctypes overhead small (this runs once per pair block).
    p = d.shape[0]
    sizes = (p, max(p, 1), p * p, p * p, 3 * p * p + 4 * p, 1)
    offs = np.cumsum((0,) + sizes)
    buf = np.zeros(int(offs[-1]))
    buf[:p] = d
    buf[offs[1] : offs[1] + p - 1] = e
    ibuf = np.zeros(8 * p + 3, dtype=np.intc)
    ibuf[0] = p
    fb = buf.ctypes.data
    ib = ibuf.ctypes.data
    a = [fb + int(o) * _F8 for o in offs[:-1]]
    # ibuf: [n, info, iq, iwork...]; n doubles as ldu and ldvt
    _lapack_fn("dbdsdc", 14)(
        ctypes.byref(_FLAG_U), ctypes.byref(_FLAG_I), ib,
        a[0], a[1], a[2], ib, a[3], ib, a[5], ib + 2 * _I4, a[4], ib + 3 * _I4, ib + _I4,
    )
    if ibuf[1] != 0:
        raise ConvergenceError(f"dbdsdc failed with info={ibuf[1]}")
    # column-major U and VT are read as C-ordered U^T and V
    ut = buf[offs[2] : offs[3]].reshape(p, p)
    v = buf[offs[3] : offs[4]].reshape(p, p)
    return np.ascontiguousarray(ut.T), buf[:p].copy(), v.copy()


def bidiagonal_svd(b):
    d = np.asarray(b.diag, dtype=np.float64)
    e = np.asarray(b.superdiag, dtype=np.float64)
    if d.shape[0] == 1:
        s = abs(d[0])
        sign = -1.0 if d[0] < 0 else 1.0
        return np.eye(1), np.array([s]), np.array([[sign]])
    try:
        return _dbdsdc(d, e)
    except (KeyError, AttributeError):  # pragma: no cover - very old SciPy
        u, s, vt = sla.svd(b.dense(), lapack_driver="gesdd")
        return u, s, vt.T


def symmetric_evd(h):
    # divide and conquer; only the lower triangle is read
    h = check_symmetric(h)
    lam, r = sla.eigh(h, driver="evd", check_finite=False)
    return np.ascontiguousarray(r[:, ::-1]), lam[::-1].copy()


def general_real_schur(a):
    a = as_matrix(a, square=True)
    try:
        s, q = sla.schur(a, output="real", check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc
    return q, s


def hessenberg(a):
    a = as_matrix(a, square=True)
    h, q = sla.hessenberg(a, calc_q=True, check_finite=False)
    return h, q
