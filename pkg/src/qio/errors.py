"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class QioError(Exception):
    """Base class for all errors raised by :mod:`qio`."""


class CircuitParseError(QioError, ValueError):
    """Malformed ``.qc`` source. ``line`` is 1-based, or ``None`` for file-level problems."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class NonCliffordError(QioError, ValueError):
    """A T gate reached an operation that only accepts Clifford gates."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message)


class TermLimitExceeded(QioError):
    """Pauli-sum propagation would exceed the configured term cap."""


class TCountExceeded(TermLimitExceeded):
    """The general teleportation scheme was asked to handle too many T gates."""


class CapExceeded(QioError):
    """Desk-scale qubit cap of the simulator or the dense oracle was exceeded."""


class ProgramFormatError(QioError, ValueError):
    """A serialized obfuscated program could not be decoded.

    ``path`` names the offending field, e.g. ``payload.correction``.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
