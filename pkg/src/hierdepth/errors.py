"""Shared exception types.

Every module raises from this catalog so callers can distinguish malformed
input from domain-level failure without string matching.
"""


class HierdepthError(Exception):
    """Base class for all library errors."""


class NotPrime(HierdepthError):
    """Requested field modulus is not a prime in the supported range."""


class LatticeMismatch(HierdepthError):
    """Operands live in different divisor-class lattices."""


class ShapeMismatch(HierdepthError):
    """Sequence arguments that must align have different lengths."""


class NotEffective(HierdepthError):
    """A divisor class required to be effective is not."""


class BadTruncation(HierdepthError):
    """Section-space truncation too small for the requested degrees."""


class VacuousTransform(HierdepthError):
    """Evaluation functional vanishes on the whole subspace; no transform."""


class OverlappingSupport(HierdepthError):
    """Transform points coincide where distinct points are required."""


class NotEnoughPoints(HierdepthError):
    """More transform points requested than the line has rational points."""


class NegativeM(HierdepthError):
    """Degree budget sum(d_i) - deg(lambda0) is negative."""


class DuplicatePoint(HierdepthError):
    """Evaluation point list contains a repeated point."""


class EmptyMessageSpace(HierdepthError):
    """No sections to evaluate; the message space has dimension zero."""


class EmptyCode(HierdepthError):
    """Code has no nonzero codeword."""


class DistanceUnknown(HierdepthError):
    """Minimum distance has not been computed for this code."""
