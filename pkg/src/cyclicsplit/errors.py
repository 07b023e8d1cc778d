"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for malformed input, 3 for mathematical obstructions, 4 when a seeded
search runs out of retries.
"""


class CyclicSplitError(Exception):
    exit_code = 3


class ValidationError(CyclicSplitError, ValueError):
    exit_code = 2


class FieldMismatch(ValidationError):
    pass


class ZeroInverse(CyclicSplitError, ZeroDivisionError):
    pass


class NotOnCurve(CyclicSplitError):
    pass


class SingularPoint(CyclicSplitError):
    pass


class PrecisionExhausted(CyclicSplitError):
    pass


class NonRationalIntersection(CyclicSplitError):
    pass


class CommonComponent(CyclicSplitError):
    pass


class DegenerateElimination(CyclicSplitError):
    pass


class NonzeroDegree(CyclicSplitError):
    pass


class NoSuchOrder(CyclicSplitError):
    pass


class EssentiallyRamified(CyclicSplitError):
    pass


class EmptyKernel(CyclicSplitError):
    pass


class UnrealizableOrder(CyclicSplitError):
    pass


class OracleMismatch(CyclicSplitError):
    """The group-law and interpolation routes disagree (should never happen)."""


class RetryExhausted(CyclicSplitError):
    exit_code = 4
