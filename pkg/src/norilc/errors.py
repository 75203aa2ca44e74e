"""Exception types shared by the engine and the command line."""


class InputError(ValueError):
    """Malformed or inconsistent input (CLI exit code 1)."""


class VerificationError(RuntimeError):
    """A property that must hold mathematically failed to verify (exit code 2)."""
