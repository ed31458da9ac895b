"""Exception hierarchy shared by every module."""


class PQError(Exception):
    """Base class for all errors raised by pqscp."""


class OutOfRange(PQError, ValueError):
    """An argument lies outside the domain of the operation."""


class Dependent(PQError, ValueError):
    """p and q are powers of a common integer."""


class CapExceeded(PQError):
    """An enumeration or brute-force search would exceed its configured cap."""


class BudgetExceeded(PQError):
    """A precision or depth budget was exhausted before a result was certified."""


class PrecisionEscalationFailed(BudgetExceeded):
    """A fixed-precision comparison stayed ambiguous at the maximum precision."""


class InvariantViolation(PQError, AssertionError):
    """An internal cross-check between independent computations failed."""
