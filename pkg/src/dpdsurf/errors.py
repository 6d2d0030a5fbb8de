"""Domain error hierarchy.

Every recoverable failure raised by the library derives from
:class:`DomainError`, so the CLI can map any of them to a single
diagnostic line and exit status 1.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all domain-level failures."""


class NotCoprime(DomainError):
    """Modular inverse requested for non-coprime arguments."""


class ZeroPolynomial(DomainError):
    """Operation undefined for the zero polynomial."""


class PositiveSum(DomainError):
    """Divisor pair has a point where d_plus + d_minus > 0."""


class NegativeDegreeParabolic(DomainError):
    """Negative graded piece requested from a parabolic ring."""


class IrrationalLocus(DomainError):
    """A denominator does not split over the rationals."""


class FractionalPlusSpread(DomainError):
    """The fractional part of d_plus is supported at two or more points."""


class NonRationalRoots(DomainError):
    """Polynomial does not split over the rationals."""


class GcdViolation(DomainError):
    """gcd(k, root multiplicities) > 1; k is not minimal."""


class NotUnitary(DomainError):
    """Polynomial is not monic."""


class InadmissibleDegree(DomainError):
    """No homogeneous locally nilpotent derivation of this degree exists."""


class CapExceeded(DomainError):
    """Iterated application did not reach zero within the cap."""


class NoPositiveLnd(DomainError):
    """Operation requires a positive-degree derivation which does not exist."""


class NotSmallGroup(DomainError):
    """Cyclic group data with gcd(e', d) > 1 defines a non-small action."""


class UnknownName(DomainError):
    """Catalog name not recognised."""


class BadParams(DomainError):
    """Catalog parameters out of range."""


class ParseError(DomainError):
    """Input text does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidSpecFile(DomainError):
    """Surface-spec document is malformed."""
