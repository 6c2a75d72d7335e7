"""Karcher mean on SO(n) by Riemannian gradient descent.

The Karcher mean of ``Q_1, ..., Q_N`` minimizes ``sum_i d(Q_i, X)^2`` with
``d(Q_a, Q_b) = ||log(Q_a^T Q_b)||_F``.  With unit step the iteration is::

    X_{k+1} = X_k exp(-(1/N) sum_i log(Q_i^T X_k)).

Each step needs N principal logarithms and one exponential, all of which go
through a selectable Schur backend.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dense import frobenius_norm
from .errors import PrincipalLogError
from .kernels import KernelProvider, get_provider
from .matfun import METHODS, check_special_orthogonal, expm_skew, logm_normal
from .normal import NormalSchurOptions

#: Stop once the Riemannian gradient norm drops below this.
TOL_GRAD = 1e-12


@dataclass(frozen=True)
class KarcherProblem:
    """Samples in SO(n) plus the iteration budget.

    Attributes
    ----------
    samples : tuple of (n, n) ndarray
    max_iters : int
    tol_grad : float
        Early stop threshold on ``||(1/N) sum_i log(Q_i^T X)||_F``; use 0 to
        always run `max_iters` steps.
    """

    samples: tuple = field(repr=False)
    max_iters: int = 100
    tol_grad: float = TOL_GRAD

    def __post_init__(self):
        if len(self.samples) == 0:
            raise ValueError("need at least one sample")
        qs = tuple(check_special_orthogonal(q, index=i) for i, q in enumerate(self.samples))
        n = qs[0].shape[0]
        if any(q.shape[0] != n for q in qs):
            raise ValueError("all samples must have the same size")
        object.__setattr__(self, "samples", qs)

    @property
    def n(self) -> int:
        return self.samples[0].shape[0]

    @property
    def count(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class KarcherResult:
    x_c: np.ndarray
    history: np.ndarray
    converged: bool

    @property
    def iterations(self) -> int:
        return len(self.history)

    def __iter__(self):
        # unpacks as (x_c, history)
        return iter((self.x_c, self.history))


def riemannian_gradient(samples, x, kp=None, method: str = "normal_schur", opts=None) -> np.ndarray:
    """``(1/N) sum_i log(Q_i^T X)`` (a skew-symmetric matrix)."""
    g = np.zeros_like(x)
    for i, q in enumerate(samples):
        try:
            g += logm_normal(q.T @ x, kp, method=method, orthogonal=True, opts=opts)
        except PrincipalLogError as exc:
            raise PrincipalLogError(f"logarithm failed for sample {i}: {exc}") from exc
    return g / len(samples)


def karcher_mean(
    problem: KarcherProblem,
    kp: str | KernelProvider | None = None,
    *,
    method: str = "normal_schur",
    opts: NormalSchurOptions | None = None,
) -> KarcherResult:
    """Riemannian gradient descent with unit step from ``X_0 = Q_1``.

    Parameters
    ----------
    problem : KarcherProblem
    kp : KernelProvider or str, optional
    method : {"normal_schur", "general_schur"}
        Schur backend for every log and exp.
    opts : NormalSchurOptions, optional
        Options for the logarithms; the normality test is skipped by
        default since the iterates are orthogonal by construction.

    Returns
    -------
    KarcherResult
        Final iterate, the gradient norm recorded at every iteration, and
        whether the tolerance was met.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    kp = get_provider(kp)
    if opts is None:
        opts = NormalSchurOptions(skip_check=True)
    x = problem.samples[0].copy()
    history = []
    converged = False
    for _ in range(problem.max_iters):
        g = riemannian_gradient(problem.samples, x, kp, method, opts)
        gnorm = frobenius_norm(g)
        history.append(gnorm)
        if gnorm < problem.tol_grad:
            converged = True
            break
        x = x @ expm_skew(-g, kp, method=method, check=False)
    return KarcherResult(x, np.asarray(history), converged)
