"""Exception types shared by every module of the package."""


class GitLociError(Exception):
    """Base class for all errors raised by :mod:`gitloci`."""


class ParseError(GitLociError, ValueError):
    """Malformed text input (field elements, configs, maps, problem files)."""


class DomainError(GitLociError, ValueError):
    """A mathematical precondition of an operation is violated."""
