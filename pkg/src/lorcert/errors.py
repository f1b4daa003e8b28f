"""Exception types shared across the package."""


class LorcertError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(LorcertError, ValueError):
    """Vector/matrix sizes do not agree, or a dimension is unsupported."""


class PreconditionError(LorcertError, ValueError):
    """An operation's stated hypothesis is violated by the input."""


class StructureError(LorcertError, ValueError):
    """Input lacks the structural form an operation requires (diagonal,
    orthogonal, triangular, block, permutation...)."""


class SingularMatrixError(LorcertError, ValueError):
    """A matrix required to be invertible is singular or too ill-conditioned."""
