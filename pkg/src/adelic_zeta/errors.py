"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: numeric domain problems exit 1,
model/file validation problems exit 2, tolerance failures exit 3.
"""


class AdelicError(Exception):
    """Base class for all package-specific errors."""


class DomainError(AdelicError):
    """Input outside the numeric domain of an operation (divergence region,
    float mode required for an exact evaluation, zero denominator, ...)."""


class PoleError(DomainError):
    """Evaluation at, or too close to, a pole."""


class SetAlgebraError(AdelicError):
    """A measurable-set expression that does not normalize to a disjoint
    union, is not a union of unit cosets, or is not a plain box where one
    is required (e.g. for the Fourier transform)."""


class InvalidCurveData(AdelicError):
    """A zeta numerator that is not the numerator of a genuine curve
    (negative or fractional closed-point counts)."""


class UnsupportedFamilyError(AdelicError):
    """Riemann-Roch dimensions requested for a curve family other than the
    projective line or an elliptic curve."""


class ConventionViolationError(AdelicError):
    """The gamma-factor quotient expected to be a pure monomial retained
    gamma factors, indicating an inconsistent Hodge recipe."""


class ModelValidationError(AdelicError):
    """A surface description (file or in-memory model) violating a schema
    or model invariant.  ``path`` locates the offending field."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
