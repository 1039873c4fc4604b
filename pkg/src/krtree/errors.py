"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class KRError(Exception):
    exit_code = 1


class InputError(KRError, ValueError):
    """Malformed or inconsistent user input."""

    exit_code = 1


class InvariantError(KRError):
    """An internal invariant failed. On valid input this is always a bug."""

    exit_code = 2


class ResourceError(KRError):
    """A configured size cap was exceeded."""

    exit_code = 3
