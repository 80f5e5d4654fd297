"""Exception hierarchy.

Everything a caller can trigger with bad input derives from ``ValidationError``;
the CLI maps those to exit code 2.
"""


class ValidationError(ValueError):
    """Input violates an operation's precondition."""


class ShapeError(ValidationError):
    pass


class UnsupportedScalarError(ValidationError):
    """Operation needs a field but got e.g. epsilon-polynomials."""


class CharacteristicError(ValidationError):
    """Prime field characteristic too small for the requested identity."""


class SymmetryError(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class DegenerateMethodError(ValidationError):
    """A rank method whose value on simples is zero."""


class OracleUnavailableError(ValidationError):
    pass


class SearchSizeError(ValidationError):
    """Exhaustive search would exceed the configured cap."""


class BadSeedError(ValidationError):
    """Seed is not a root of the defining equation(s)."""


class NonEtaleError(ValidationError):
    """Derivative (or Jacobian) vanishes at the seed; no unique lift."""
