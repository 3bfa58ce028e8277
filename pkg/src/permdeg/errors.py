"""Exception hierarchy shared by all permdeg modules."""


class PermdegError(Exception):
    """Base class for all errors raised by this package."""


class GroupFormatError(PermdegError):
    """A multiplication table violates a group axiom (names the axiom and cell)."""


class ResourceCapError(PermdegError):
    """A computation was refused because the group order exceeds a configured cap."""


class DomainError(PermdegError):
    """An operation was applied outside its mathematical domain (e.g. nonabelian input)."""


class InvalidActionError(PermdegError):
    """A semidirect-product action is not a homomorphism into Aut(G)."""


class PreconditionError(PermdegError):
    """A stated precondition of an operation does not hold for the given input."""


class InternalInvariantError(PermdegError):
    """A fact guaranteed by theory failed to hold; indicates a bug, not bad input."""


class ExprSyntaxError(PermdegError):
    """Group-expression parse failure; carries the offending position."""

    def __init__(self, message: str, position: int, expected: str = ""):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
