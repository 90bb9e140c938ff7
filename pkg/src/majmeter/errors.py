"""Exception types shared across the package."""


class MajmeterError(Exception):
    """Base class for every error raised by this package."""


class EmptyPartition(MajmeterError):
    """An operation that needs a nonempty partition received an empty one."""


class InvalidRow(MajmeterError):
    """Partition rows must be positive and weakly decreasing."""


class TooShort(MajmeterError):
    """A truncation length n smaller than the number of rows was requested."""


class InvalidSimplexPoint(MajmeterError):
    """Simplex coordinates must be nonnegative, nonincreasing and sum to at most 1."""


class CapExceeded(MajmeterError):
    """A combinatorial size cap (enumeration or big-integer) was exceeded."""


class OddOrder(MajmeterError):
    """An even cumulant order was required."""


class DegenerateDistribution(MajmeterError):
    """The distribution has zero variance and cannot be standardised."""


class DomainError(MajmeterError):
    """The complex argument lies on or beyond the imaginary-axis cuts."""


class QuadratureError(MajmeterError):
    """Gauss-Legendre node doubling failed to stabilise the integral."""


class OutOfRange(MajmeterError):
    """A deviation target lies outside the admissible open interval."""


class DegenerateParameter(MajmeterError):
    """The measure is concentrated on {-1, 1} or the tilt parameter is zero."""


class ZeroAtomUnsupported(MajmeterError):
    """The requested limit diverges for measures with positive mass at 0."""
