"""Exception types shared across the package."""


class BlockTriError(Exception):
    """Base class for all errors raised by this package."""


class MismatchedDimension(BlockTriError):
    """Operands have incompatible shapes."""


class NotFinite(BlockTriError):
    """A matrix contains NaN or infinite entries."""


class Singular(BlockTriError):
    """A pivot fell below the singularity threshold during elimination."""


class IllConditioned(BlockTriError):
    """Estimated condition number exceeds the trust bound."""


class NoConvergence(BlockTriError):
    """An iteration failed to converge within its sweep cap."""


class SpectraOverlap(BlockTriError):
    """The diagonal coefficient spectra of a Sylvester equation overlap."""


class RepeatedEigenvalues(BlockTriError):
    """Eigenvalues are closer than the distinctness gap policy allows."""


class ConstraintViolated(BlockTriError):
    """The input does not commute with the requested diagonal unit."""


class NotIdempotent(BlockTriError):
    """The matrix is not idempotent within tolerance."""


class NotRankOne(BlockTriError):
    """The matrix is not numerically rank one."""


class NotTriangular(BlockTriError):
    """The matrix is not upper-triangular within tolerance."""


class NonzeroFirstComponent(BlockTriError):
    """A shear vector must have zero first component."""


class WrongAlgebra(BlockTriError):
    """A matrix does not belong to the required block algebra."""


class NotJordanEmbedding(BlockTriError):
    """The linear map failed a structural or verification check of recovery."""


class Degenerate(BlockTriError):
    """Randomized probing exhausted its retries."""


class InvalidDocument(BlockTriError):
    """A JSON document does not match its schema."""
