"""Random orthogonal and normal test matrices.

Every generator takes an explicit ``rng`` (anything accepted by
:func:`numpy.random.default_rng`; integers give NumPy's PCG64 stream, which
is stable across runs and platforms).  Normal matrices are built as
``A = Q S Q^T`` with ``Q`` Haar-distributed on O(n) and ``S`` the permuted
real Schur form of the prescribed spectrum, and are returned together with
that ground truth.

Scenarios (``p`` pairs ``lam e^{+-i theta}``, ``r`` real eigenvalues):

``best_so``
    ``lam = 1``, ``theta ~ U(0, pi/4)``; odd ``n`` adds the eigenvalue 1.
``worst_so``
    ``lam = 1``, ``theta ~ U(pi/2 - sqrt(eps), pi/2 + sqrt(eps))``.
``uniform_so``
    ``lam = 1``, ``theta ~ U(0, pi)``.
``random_normal``
    ``lam ~ U(0, 1)``, ``theta ~ U(0, pi)``; odd ``n`` adds one real
    eigenvalue ``~ U(0, 1)``.
``alpha_mix(a)``
    ``r = round(a n)`` (nudged to the parity of ``n``) real eigenvalues
    ``~ N(0, 1)``; pairs with radius ``~ U(0, 2)`` and phase ``~ U(0, pi)``
    kept ``1e-3`` away from the real axis.
``worst_case_sigma``
    all imaginary parts equal to one ``sigma = |N(0, 1)| + 0.1``, real parts
    ``~ N(0, 1)``; odd ``n`` adds one real eigenvalue ``~ N(0, 1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .dense import EPS, BlockSchur, assemble_schur_matrix

SCENARIOS = ("best_so", "worst_so", "uniform_so", "random_normal", "alpha_mix", "worst_case_sigma")

#: Phases of alpha_mix pairs stay this far from 0 and pi.
PHASE_MARGIN = 1e-3

_ALPHA_RE = re.compile(r"^alpha_mix\(\s*([0-9.eE+-]+)\s*\)$")


@dataclass(frozen=True)
class SpectrumSpec:
    """Size, scenario name and (for ``alpha_mix``) the real-eigenvalue share."""

    n: int
    scenario: str
    alpha: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}; choose from {SCENARIOS}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @classmethod
    def parse(cls, text: str, n: int) -> "SpectrumSpec":
        """Build a spec from names such as ``"best_so"`` or ``"alpha_mix(0.3)"``."""
        m = _ALPHA_RE.match(text.strip())
        if m:
            return cls(n, "alpha_mix", float(m.group(1)))
        return cls(n, text.strip())

    @property
    def label(self) -> str:
        return f"alpha_mix({self.alpha:g})" if self.scenario == "alpha_mix" else self.scenario


def haar_orthogonal(n: int, rng=None) -> np.ndarray:
    """Haar-distributed ``Q`` in O(n): QR of a Gaussian matrix with ``R_ii > 0``."""
    rng = np.random.default_rng(rng)
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return np.ascontiguousarray(q * d)


def _alpha_real_count(n, alpha):
    # closest count to alpha * n with the parity of n
    r = int(round(alpha * n))
    if (n - r) % 2:
        options = [c for c in (r - 1, r + 1) if 0 <= c <= n]
        r = min(options, key=lambda c: (abs(c - alpha * n), c))
    return r


def draw_spectrum(spec: SpectrumSpec, rng=None):
    """Return ``(lam, theta, lam_real)`` for `spec` (unordered)."""
    rng = np.random.default_rng(rng)
    n = spec.n
    sc = spec.scenario
    if sc == "alpha_mix":
        r = _alpha_real_count(n, spec.alpha)
    else:
        r = n % 2
    p = (n - r) // 2
    if sc == "best_so":
        return np.ones(p), rng.uniform(0.0, np.pi / 4, p), np.ones(r)
    if sc == "worst_so":
        h = np.sqrt(EPS)
        return np.ones(p), rng.uniform(np.pi / 2 - h, np.pi / 2 + h, p), np.ones(r)
    if sc == "uniform_so":
        return np.ones(p), rng.uniform(0.0, np.pi, p), np.ones(r)
    if sc == "random_normal":
        return rng.uniform(0.0, 1.0, p), rng.uniform(0.0, np.pi, p), rng.uniform(0.0, 1.0, r)
    if sc == "alpha_mix":
        real = rng.standard_normal(r)
        radius = rng.uniform(0.0, 2.0, p)
        phase = np.clip(rng.uniform(0.0, np.pi, p), PHASE_MARGIN, np.pi - PHASE_MARGIN)
        return radius, phase, real
    # worst_case_sigma
    sigma = abs(rng.standard_normal()) + 0.1
    d = rng.standard_normal(p)
    return np.hypot(d, sigma), np.arctan2(np.full(p, sigma), d), rng.standard_normal(r)


def random_normal_matrix(spec: SpectrumSpec, rng=None):
    """Sample ``A = Q S Q^T`` for `spec`.

    Returns
    -------
    a : (n, n) ndarray
    truth : BlockSchur
        The exact factors used to build `a`, ordered like
        :func:`nrmschur.normal.normal_schur` output.
    """
    rng = np.random.default_rng(rng)
    lam, theta, real = draw_spectrum(spec, rng)
    q = haar_orthogonal(spec.n, rng)
    o = np.argsort(-(lam * np.sin(theta)), kind="stable")
    orr = np.argsort(-real, kind="stable")
    truth = BlockSchur(q, lam[o], theta[o], real[orr])
    s = assemble_schur_matrix(truth)
    return np.ascontiguousarray(q @ s @ q.T), truth


def rotation_near(base, max_angle: float, rng=None) -> np.ndarray:
    """``base @ expm(Omega)`` for a random skew ``Omega`` with ``||Omega||_2 <= max_angle``."""
    rng = np.random.default_rng(rng)
    n = base.shape[0]
    g = rng.standard_normal((n, n))
    omega = g - g.T
    nrm = np.linalg.norm(omega, 2)
    if nrm > 0:
        omega *= max_angle * rng.uniform() / nrm
    return np.ascontiguousarray(base @ sla.expm(omega))


def concentrated_rotations(n: int, count: int, max_angle: float = 0.5, rng=None, base=None) -> list[np.ndarray]:
    """`count` rotations within angle `max_angle` of `base` (Haar in SO(n) by default)."""
    rng = np.random.default_rng(rng)
    if base is None:
        base = haar_orthogonal(n, rng)
        if np.linalg.det(base) < 0:
            base[:, 0] = -base[:, 0]
    return [rotation_near(base, max_angle, rng) for _ in range(count)]
