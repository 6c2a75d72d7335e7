"""Exception hierarchy shared by every module of the package."""


class NrmSchurError(Exception):
    """Base class for all errors raised by nrmschur."""


class ShapeError(NrmSchurError, ValueError):
    """Input has the wrong shape (e.g. a non-square matrix)."""


class NonFiniteError(NrmSchurError, ValueError):
    """Input contains NaN or Inf entries."""


class NotSymmetricError(NrmSchurError, ValueError):
    """A symmetric input deviates from symmetry beyond tolerance."""


class NotSkewError(NrmSchurError, ValueError):
    """A skew-symmetric input deviates from skew-symmetry beyond tolerance."""


class NotNormalError(NrmSchurError, ValueError):
    """The matrix is not normal within the configured tolerance."""

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class ConvergenceError(NrmSchurError, RuntimeError):
    """An iterative kernel exceeded its iteration cap."""


class ClusteringError(NrmSchurError, RuntimeError):
    """A repeated-singular-value subproblem is inconsistent with its cluster."""


class PrincipalLogError(NrmSchurError, ValueError):
    """The real principal logarithm does not exist (or the matrix is singular)."""


class LanczosBreakdown(NrmSchurError, RuntimeError):
    """The structured Lanczos process produced a negligible Krylov direction."""


class NotSpecialOrthogonalError(NrmSchurError, ValueError):
    """A matrix expected in SO(n) is not orthogonal or has determinant -1."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
