"""Exception hierarchy shared by the library and the CLI."""


class HsimError(Exception):
    """Base class for all hsim errors."""


class InputError(HsimError, ValueError):
    """Invalid user input (bad arguments, width mismatch, malformed files)."""


class ParseError(InputError):
    """Malformed Hamiltonian file. ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapabilityError(HsimError):
    """Problem too large for dense simulation."""


class SynthesisError(HsimError, RuntimeError):
    """Internal consistency failure in circuit construction."""
