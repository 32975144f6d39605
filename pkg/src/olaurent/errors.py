"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for configuration problems, 3 for numeric validation failures, 4 when
the representation condition a != 0 fails.
"""


class OLaurentError(Exception):
    """Base class for all package errors."""

    exit_code = 3


# -- configuration / input errors (exit code 2) -----------------------------

class InvalidParams(OLaurentError):
    """Parameters violate a documented constraint."""

    exit_code = 2


class NonzeroCoefficientViolated(InvalidParams):
    """An explicit coefficient list contains a zero entry."""


class UnsupportedFamily(InvalidParams):
    """The requested operation has no closed form for this family kind."""


class InsufficientOrder(InvalidParams):
    """A series was realized to too low a truncation order for the request."""


class ZeroCoefficient(InvalidParams):
    """A source coefficient needed by the construction is zero."""


class MissingCoefficients(InvalidParams):
    """Recurrence data does not extend far enough for the requested index."""


# -- numeric validation errors (exit code 3) --------------------------------

class ZeroConstantTerm(OLaurentError):
    """Reciprocal of a series whose constant term vanishes."""


class EvalAtZero(OLaurentError):
    """A Laurent polynomial with negative exponents evaluated at zero."""


class WindowExceeded(OLaurentError):
    """Polynomial support falls outside the available moment window."""


class RadiusInvalid(OLaurentError):
    """Contour radius incompatible with the series' disc of convergence."""


class NearZeroDenominator(OLaurentError):
    """The integrand denominator comes too close to zero on the contour."""


class TailNotNegligible(OLaurentError):
    """Truncation tail too large for the requested quadrature accuracy."""


class DomainViolation(OLaurentError):
    """Evaluation point outside the identity's domain of validity."""


class PoleProximity(OLaurentError):
    """Evaluation point too close to a pole of the kernel."""


class DegenerateLeadingCoefficient(OLaurentError):
    """A recurrence step produced a vanishing extremal coefficient."""


class PivotVanished(OLaurentError):
    """A pivot in the triangular moment solve is numerically zero."""


# -- representation condition (exit code 4) ---------------------------------

class RepresentationCondFailed(OLaurentError):
    """The normalizing moment a = L(x^-n) vanishes; no representation."""

    exit_code = 4
