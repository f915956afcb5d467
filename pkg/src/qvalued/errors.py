"""Exception hierarchy shared by every module of the package."""


class QValuedError(Exception):
    """Base class for all errors raised by qvalued."""


class DimensionMismatchError(QValuedError, ValueError):
    """Configurations or points with incompatible Q, n or m."""


class SizeLimitError(QValuedError, ValueError):
    """Input too large for an enumeration routine."""


class NonLipschitzError(QValuedError, ValueError):
    """Two coincident anchors carry different values."""


class CoincidenceError(QValuedError, ValueError):
    """Extension point coincides with an anchor point."""


class CapacityError(QValuedError, RuntimeError):
    """A sweep or enumeration exceeds its configured budget."""


class InstanceFormatError(QValuedError, ValueError):
    """Malformed instance or configuration file."""
