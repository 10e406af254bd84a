"""
Exception hierarchy for the level-ancestor library.

Every error raised on purpose by this package derives from LevelAncestorError,
and also from the builtin exception a caller would naturally expect
(ValueError for bad input text, IndexError for bad ids, ...).
"""


class LevelAncestorError(Exception):
    """Base class for all errors raised by this package."""


class MalformedSignature(LevelAncestorError, ValueError):
    """
    A tree signature (or LA-SIG v1 file) is not a valid Euler encoding.
    Attributes:
        offset (int): 0-based byte offset of the first offending byte.
        reason (str): Short description of the problem.
    """
    def __init__(self, offset, reason):
        self.offset = offset
        self.reason = reason
        super().__init__(f"malformed signature at byte {offset}: {reason}")


class NodeOutOfRange(LevelAncestorError, IndexError):
    def __init__(self, v, n):
        self.v = v
        self.n = n
        super().__init__(f"node {v} is not in [0, {n})")


class IndexOutOfRange(LevelAncestorError, IndexError):
    def __init__(self, u, size):
        self.u = u
        self.size = size
        super().__init__(f"tour index {u} is not in [0, {size})")


class CapacityExceeded(LevelAncestorError, MemoryError):
    """
    A structure would need more memory than the configured budget.
    Attributes:
        required (int): Predicted size in bytes.
        budget (int): Configured budget in bytes.
    """
    def __init__(self, required, budget, what="structure"):
        self.required = required
        self.budget = budget
        self.what = what
        super().__init__(f"{what} needs {required} bytes, budget is {budget} bytes")


class BudgetExceeded(CapacityExceeded):
    """Raised by the benchmark before building a strategy that would not fit."""


class UnknownStrategy(LevelAncestorError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"unknown strategy '{self.name}'"


class InvariantViolation(LevelAncestorError, AssertionError):
    """A structural bound checked at build time does not hold."""
