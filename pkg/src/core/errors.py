"""
Exception hierarchy for the Dynamic Cluster Editing toolkit
"""


class ClusterEditingError(Exception):
    """Base class for all toolkit errors."""


class NotClusterGraph(ClusterEditingError, ValueError):
    """Raised when a graph contains an induced P3 but a cluster graph is required."""

    def __init__(self, message: str, p3=None):
        super().__init__(message)
        self.p3 = p3


class SizeMismatch(ClusterEditingError, ValueError):
    """Raised when two objects disagree on the number of vertices."""


class NotApplicable(ClusterEditingError):
    """Raised when an operation's preconditions do not hold for the instance."""


class TooLarge(ClusterEditingError):
    """Raised when an instance exceeds the brute-force oracle cap."""


class KernelTooLargeForOracle(TooLarge):
    """Raised when a kernel is still above the oracle cap."""


class WrongVariant(ClusterEditingError, ValueError):
    """Raised when a solver is called on a variant/measure it does not handle."""


class InvalidSource(ClusterEditingError, ValueError):
    """Raised when a generator source instance is malformed."""


class PreconditionViolated(ClusterEditingError):
    """Raised when a check is called on an instance outside its precondition."""


class MalformedParts(ClusterEditingError, ValueError):
    """Raised when a four-step partition has crossing edges or bad tuples."""


class InstanceFormatError(ClusterEditingError, ValueError):
    """Raised when an instance, cluster or solution file cannot be parsed."""
