"""Exception types raised by grouptool."""

from __future__ import annotations


class GroupToolError(Exception):
    """Base class for every error raised by this package."""


class CapExceeded(GroupToolError):
    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class InvalidPermutation(GroupToolError, ValueError):
    pass


class GroupAxiomError(GroupToolError, ValueError):
    """A multiplication table that does not define a group.

    ``kind`` is one of ``not-associative``, ``no-identity``,
    ``missing-inverse``, ``not-latin-square`` or ``bad-shape``.
    """

    def __init__(self, kind: str, detail: str = "") -> None:
        msg = kind if not detail else f"{kind}: {detail}"
        super().__init__(msg)
        self.kind = kind
        self.detail = detail


class NotNormal(GroupToolError, ValueError):
    pass


class CycleSyntaxError(GroupToolError, ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class RepeatedPointError(GroupToolError, ValueError):
    def __init__(self, point: int, position: int) -> None:
        super().__init__(f"point {point} repeated in cycle at position {position}")
        self.point = point
        self.position = position


class CayleyParseError(GroupToolError, ValueError):
    def __init__(self, message: str, row: int) -> None:
        super().__init__(f"row {row}: {message}")
        self.row = row


class UnknownGroup(GroupToolError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "unknown group"


class InvalidParams(GroupToolError, ValueError):
    pass


class NotAnMElement(GroupToolError, ValueError):
    pass


class InternalInconsistency(GroupToolError, AssertionError):
    """A computed object violates a property that is proved to hold.

    Raised when an operator result contradicts a theorem it is guaranteed
    by (for example a D-set that is not closed under multiplication); this
    always indicates a bug or a counterexample worth reporting.
    """


class OrderMismatch(GroupToolError, ValueError):
    pass


class NotAPGroup(GroupToolError, ValueError):
    pass


class NotSemidirect(GroupToolError, ValueError):
    pass


class HypothesisNotMet(GroupToolError):
    """The hypotheses of a checked statement do not hold for this input."""


class UnknownSuite(GroupToolError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown suite"
