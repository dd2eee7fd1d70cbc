class GroupError(Exception):
    """Base class for errors raised by nilinj."""


class DomainError(GroupError, ValueError):
    """An argument violates an operation's preconditions."""


class ResourceLimitError(GroupError, RuntimeError):
    """A computation would exceed a configured size cap."""
