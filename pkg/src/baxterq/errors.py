"""Exception types raised across the package.

Every error derives from :class:`BaxterQError` so callers can catch the whole
family at once.  Errors that describe a failed verification carry the partial
report (when one exists) in the ``report`` attribute.
"""

from __future__ import annotations

from typing import Any, Optional


class BaxterQError(Exception):
    """Base class for all package errors."""


# -- special functions -------------------------------------------------------


class OutOfStrip(BaxterQError):
    """Argument lies outside the validity strip of the integral representation."""


class QuadratureFailure(BaxterQError):
    """A one-dimensional quadrature did not reach its tolerance."""


class PoleHit(BaxterQError):
    """Evaluation point sits on (or too close to) a pole.

    Parameters
    ----------
    message : str
        Human readable description.
    point : object, optional
        The offending lattice point or factor label.
    """

    def __init__(self, message: str, point: Any = None):
        super().__init__(message)
        self.point = point


class ShiftDepthExceeded(BaxterQError):
    """Too many functional-equation steps were needed to reach the strip."""


class RealPeriodRatio(BaxterQError):
    """The product representation needs a non-real period ratio."""


class NonconvergentProduct(BaxterQError):
    """The nome of the product representation is not inside the unit disc."""


class DegenerateLattice(BaxterQError):
    """Rational period ratio: poles merge and residues are not simple."""


class InsideCone(BaxterQError):
    """Point too close to the pole/zero cones for the asymptotic formula."""


# -- operators and kernels ---------------------------------------------------


class CoincidingCoordinates(BaxterQError):
    """Two coordinates coincide, making an operator coefficient singular."""


class StripExceeded(BaxterQError):
    """A shifted argument leaves the analyticity strip of a test function."""


class GaugeSingular(BaxterQError):
    """The gauge factor sqrt(mu) vanishes at the evaluation point."""


class SingularDenominator(BaxterQError):
    """A sine denominator in the kernel identity vanishes."""


class ZeroDenominator(BaxterQError):
    """A Pochhammer symbol with negative index has a vanishing denominator."""


class DenominatorZero(BaxterQError):
    """A sample point hits a denominator zero of one side of the duality identity.

    Parameters
    ----------
    message : str
        Description.
    factor : str, optional
        Label of the Pochhammer factor that vanished.
    """

    def __init__(self, message: str, factor: Optional[str] = None):
        super().__init__(message)
        self.factor = factor


class DegenerateConfiguration(BaxterQError):
    """Points are not in generic position for the simple-pole series."""


# -- verification outcomes ---------------------------------------------------


class VerificationError(BaxterQError):
    """Base class for failed checks.  ``report`` holds the evidence."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class IdentityViolation(VerificationError):
    """An exact identity failed at a sample point."""


class ToleranceExceeded(VerificationError):
    """A numerical identity residual exceeded its tolerance."""


class SlopeMismatch(VerificationError):
    """A fitted log-log slope is outside its admissible window."""


class ToleranceNotMet(BaxterQError):
    """Quadrature could not certify the requested accuracy."""


class NonconvergentSeries(BaxterQError):
    """The residue series is evaluated outside its convergence region."""


class RegimeViolation(BaxterQError):
    """Parameters do not satisfy the regime required by an operation."""


class ConfigError(BaxterQError):
    """Invalid run configuration.

    Parameters
    ----------
    message : str
        Description of the problem.
    field : str, optional
        Dotted path of the offending field, e.g. ``"params.g"``.
    """

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
