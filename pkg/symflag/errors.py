"""
Exceptions raised by symflag.

They derive from the builtin ValueError / RuntimeError so callers that only
know the builtins still catch them.
"""


class FieldError(ValueError):
    """An exact scalar left the multiquadratic field it was declared in."""


class MatrixShapeError(ValueError):
    """Operands have incompatible shapes or backends."""


class MatrixIndexError(ValueError):
    """Row/column index lists are out of range, repeated or of unequal length."""


class MatrixFormatError(ValueError):
    """A matrix (or flag, triple, polynomial) document could not be parsed."""


class NotNilpotentError(ValueError):
    pass


class NotSymplecticError(ValueError):
    """A matrix does not preserve the symplectic form it was tagged with."""


class FlagError(ValueError):
    """Invalid flag data: rank deficiency, failed isotropy, Θ mismatch."""


class NotAntipodalError(FlagError):
    """The flag is not antipodal to the standard flag, so no horocyclic element moves τ^opp onto it."""


class RepresentationError(RuntimeError):
    """A representation failed its defining relations. This is a construction bug."""


class RootNotFoundError(RuntimeError):
    """No common real root of f_T and f_P was found within the jitter budget."""


class BracketingError(RuntimeError):
    """The determinant did not change sign along the search ray."""


class ConfigError(ValueError):
    """Invalid command-line configuration."""


class SignPatternError(RuntimeError):
    """An antiprincipal minor broke the sign pattern of its parity; the run stops at the first one."""
