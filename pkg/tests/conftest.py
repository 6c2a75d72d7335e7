import numpy as np
import pytest

from nrmschur.sampling import SpectrumSpec, haar_orthogonal


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def report(capsys):
    """Print one ``PASS``/``FAIL`` line past pytest's capture."""

    def _report(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {label}: {detail}")
        return ok

    return _report


def random_skew(n, rng):
    g = rng.standard_normal((n, n))
    return g - g.T


def random_so(n, rng):
    q = haar_orthogonal(n, rng)
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def symplectic_orthogonal(m, rng):
    """Random orthogonal ``[[E, -F], [F, E]]`` from a complex unitary ``E + iF``."""
    z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    u, _ = np.linalg.qr(z)
    return np.block([[u.real, -u.imag], [u.imag, u.real]])


def spec(name, n):
    return SpectrumSpec.parse(name, n)


def jacobi_eigenvalues(h, sweeps=30):
    """Cyclic Jacobi eigenvalues of a symmetric matrix (descending); a slow oracle."""
    a = np.array(h, dtype=np.float64)
    n = a.shape[0]
    small = 1e-20 * np.linalg.norm(a)
    for _ in range(sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= 1e-300 or off <= 1e-17 * np.linalg.norm(a):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= small:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                j = np.eye(n)
                j[p, p] = j[q, q] = c
                j[p, q] = s
                j[q, p] = -s
                a = j.T @ a @ j
    return np.sort(np.diag(a))[::-1]


def jacobi_singular_values(b):
    """One-sided Jacobi singular values (descending); a slow oracle."""
    u = np.array(b, dtype=np.float64)
    n = u.shape[1]
    for _ in range(60):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = u[:, p] @ u[:, p]
                beta = u[:, q] @ u[:, q]
                gamma = u[:, p] @ u[:, q]
                if abs(gamma) <= 1e-16 * np.sqrt(alpha * beta) or gamma == 0.0:
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.sign(zeta) / (abs(zeta) + np.hypot(1.0, zeta)) if zeta != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                up = u[:, p].copy()
                u[:, p] = c * up - s * u[:, q]
                u[:, q] = s * up + c * u[:, q]
        if not rotated:
            break
    return np.sort(np.linalg.norm(u, axis=0))[::-1]
