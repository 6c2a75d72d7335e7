"""Pluggable kernel providers.

A :class:`KernelProvider` bundles the three dense routines the normal-matrix
algorithm relies on (bidiagonal SVD, symmetric EVD, general real Schur form)
plus a Hessenberg reduction used by the benchmark baseline.  Two providers
ship with the package:

``reference``
    compiled implementations written for this package (see
    :mod:`nrmschur.kernels.reference`);
``native``
    LAPACK via SciPy (see :mod:`nrmschur.kernels.native`).

The environment variable ``NRMSCHUR_KERNELS`` selects the default provider.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import native, reference

ENV_VAR = "NRMSCHUR_KERNELS"


@dataclass(frozen=True)
class Bidiagonal:
    """Square upper bidiagonal matrix given by its diagonal and superdiagonal."""

    diag: np.ndarray
    superdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=np.float64).ravel()
        e = np.asarray(self.superdiag, dtype=np.float64).ravel()
        if d.size < 1 or e.size != d.size - 1:
            raise ValueError(f"need len(superdiag) == len(diag) - 1, got {e.size}, {d.size}")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "superdiag", e)

    @property
    def p(self) -> int:
        return self.diag.size

    def dense(self) -> np.ndarray:
        b = np.diag(self.diag)
        if self.p > 1:
            b += np.diag(self.superdiag, 1)
        return b


@dataclass(frozen=True)
class KernelProvider:
    name: str
    bidiagonal_svd: Callable
    symmetric_evd: Callable
    general_real_schur: Callable
    hessenberg: Callable


REFERENCE = KernelProvider(
    "reference",
    reference.bidiagonal_svd,
    reference.symmetric_evd,
    reference.general_real_schur,
    reference.hessenberg,
)

NATIVE = KernelProvider(
    "native",
    native.bidiagonal_svd,
    native.symmetric_evd,
    native.general_real_schur,
    native.hessenberg,
)

_PROVIDERS = {"reference": REFERENCE, "native": NATIVE}


def get_provider(kernels: str | KernelProvider | None = None) -> KernelProvider:
    """Resolve a provider by name; ``None`` consults ``$NRMSCHUR_KERNELS``
    and falls back to ``native``."""
    if isinstance(kernels, KernelProvider):
        return kernels
    if kernels is None:
        kernels = os.environ.get(ENV_VAR, "native")
    try:
        return _PROVIDERS[kernels]
    except KeyError:
        raise ValueError(f"unknown kernel provider {kernels!r}; choose from {sorted(_PROVIDERS)}") from None


__all__ = ["Bidiagonal", "KernelProvider", "REFERENCE", "NATIVE", "get_provider"]
