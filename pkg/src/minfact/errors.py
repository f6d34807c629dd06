"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class MinfactError(Exception):
    """Base class for all library errors."""


class ValidationError(MinfactError, ValueError):
    """Malformed value (bad label, broken invariant, inconsistent state)."""


class ParseError(MinfactError, ValueError):
    """Unparseable textual or JSON input."""


class CapExceededError(MinfactError, ValueError):
    """A size cap on an exhaustive computation was exceeded."""


class DomainError(MinfactError, ValueError):
    """Well-formed input outside an operation's domain (e.g. non-minimal)."""
