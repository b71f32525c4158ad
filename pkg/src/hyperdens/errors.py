"""Exception types shared across the package."""


class HyperdensError(Exception):
    """Base class for all package errors."""


class FormatError(HyperdensError):
    """Malformed hypergraph or family file content."""


class DomainError(HyperdensError):
    """An operation's precondition was violated."""


class CapError(HyperdensError):
    """A configured resource cap refused the computation."""
