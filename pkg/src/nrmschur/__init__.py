"""Real Schur decomposition of real normal matrices.

The decomposition is computed from the skew-symmetric part alone (a
tridiagonalization followed by a bidiagonal SVD), so for matrices whose
eigenvalues have distinct imaginary parts it costs about as much as a
Hessenberg reduction.  Repeated imaginary parts and real eigenvalues are
handled by small follow-up problems.

Main entry points
-----------------
normal_schur
    ``A = Q S Q^T`` for a real normal ``A``, returned as a :class:`BlockSchur`.
skew_schur_decompose
    Real Schur form of a skew-symmetric matrix.
logm_normal, expm_skew, so_distance
    Matrix functions built on top of the decomposition.
karcher_mean
    Riemannian center of mass on SO(n).
"""

from .dense import (
    BlockSchur,
    EigenDecomposition,
    assemble_schur_matrix,
    hausdorff_distance,
    normality_defect,
    orthogonality_defect,
    read_matrix,
    relative_residual,
    schur_to_eigen,
    write_matrix,
)
from .errors import (
    ClusteringError,
    ConvergenceError,
    LanczosBreakdown,
    NonFiniteError,
    NotNormalError,
    NotSkewError,
    NotSpecialOrthogonalError,
    NotSymmetricError,
    NrmSchurError,
    PrincipalLogError,
    ShapeError,
)
from .karcher import KarcherProblem, KarcherResult, karcher_mean
from .kernels import Bidiagonal, KernelProvider, get_provider
from .matfun import expm_skew, fundamental_formula_error, logm_normal, so_distance
from .normal import NormalSchurOptions, general_block_schur, normal_schur
from .sampling import SpectrumSpec, haar_orthogonal, random_normal_matrix
from .skew import SkewSchur, SkewTridiagonal, skew_schur_decompose, skew_tridiagonalize
from .symplectic import WXMatrix, wx_eigen

__version__ = "0.1.0"

__all__ = [
    "Bidiagonal",
    "BlockSchur",
    "ClusteringError",
    "ConvergenceError",
    "EigenDecomposition",
    "KarcherProblem",
    "KarcherResult",
    "KernelProvider",
    "LanczosBreakdown",
    "NonFiniteError",
    "NormalSchurOptions",
    "NotNormalError",
    "NotSkewError",
    "NotSpecialOrthogonalError",
    "NotSymmetricError",
    "NrmSchurError",
    "PrincipalLogError",
    "ShapeError",
    "SkewSchur",
    "SkewTridiagonal",
    "SpectrumSpec",
    "WXMatrix",
    "assemble_schur_matrix",
    "expm_skew",
    "fundamental_formula_error",
    "general_block_schur",
    "get_provider",
    "hausdorff_distance",
    "haar_orthogonal",
    "karcher_mean",
    "logm_normal",
    "normal_schur",
    "normality_defect",
    "orthogonality_defect",
    "random_normal_matrix",
    "read_matrix",
    "relative_residual",
    "schur_to_eigen",
    "skew_schur_decompose",
    "skew_tridiagonalize",
    "so_distance",
    "write_matrix",
    "wx_eigen",
]
