"""Exceptions raised by the solvers, generators and file readers.

Internal preconditions are plain asserts; everything a caller can trigger with
bad input or an unlucky instance is one of these.
"""


class DiskScaleError(Exception):
    """Base class for all domain errors"""


class InstanceFormatError(DiskScaleError):
    """Malformed instance, solution or embedding data"""


class UsageError(DiskScaleError):
    """An algorithm was asked to solve a class it does not handle, or a command lacks an option"""


class UnscaledMismatchError(DiskScaleError):
    """Target graph disagrees with the unit disk graph on two unscaled points"""

    def __init__(self, pair, expected_edge):
        self.pair = tuple(pair)
        self.expected_edge = expected_edge
        status = 'an edge' if expected_edge else 'a non-edge'
        super().__init__(f"unscaled pair {self.pair} must be {status} in the target graph")


class IllConditionedLpError(DiskScaleError):
    """LP result fails its own residual check or does not realize the target graph"""


class OracleBudgetError(DiskScaleError):
    """Instance exceeds the brute-force budget"""


class ConstructionError(DiskScaleError):
    """A hardness construction cannot be laid out on the given embedding"""

    def __init__(self, message, segment=None):
        self.segment = segment
        if segment is not None:
            message = f"{message} (segment {segment})"
        super().__init__(message)


class SolveTimeout(DiskScaleError):
    """Cooperative deadline expired during branching"""
