"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto exit codes: ``ApplicabilityError`` and ``InputError``
exit with 2, ``CapacityError`` with 3, everything else with 1.
"""

from __future__ import annotations


class RainbowError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RainbowError, ValueError):
    """Malformed arguments: out-of-range indices, bad shapes, bad ranges."""


class ParseError(InputError):
    """Serialized assignment could not be parsed."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ApplicabilityError(RainbowError):
    """A recipe or bound was requested outside the residues it covers."""


class CapacityError(RainbowError):
    """An exact engine would exceed its configured enumeration/state budget."""


class ConstructionError(RainbowError):
    """A construction failed its own verification. Always a bug."""
