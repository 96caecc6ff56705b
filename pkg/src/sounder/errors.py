"""
src.sounder.errors
~~~~~~~~~~~~~~~~~~

Custom exception classes for the sounder package.

Every named failure derives from :class:`SounderError` and carries the
process exit code the CLI reports for it.  None of them subclass
``ValueError`` so they pass through pydantic validators untouched.
"""

from __future__ import annotations


class SounderError(Exception):
    """Base class for all named sounder failures."""

    exit_code: int = 1


# --------------------------------------------------------------------------- #
# Data / format errors (exit 3)                                               #
# --------------------------------------------------------------------------- #
class DataError(SounderError):
    """Input data or configuration could not be understood."""

    exit_code = 3


class SchemaError(DataError):
    """Model or sequence config does not match the expected schema."""


class OverlappingSegments(DataError):
    """Two PDP segments claim the same delay range."""


class NegativeInterval(DataError):
    """A PDP segment has ``tau_lo`` >= ``tau_hi`` or a negative start."""


class FormatError(DataError):
    """Capture payload or sidecar is malformed or inconsistent."""


class ParseError(DataError):
    """A text table could not be parsed."""


class NonFiniteSample(DataError):
    """An imported sample is NaN or infinite."""


# --------------------------------------------------------------------------- #
# Numeric / domain errors (exit 4)                                            #
# --------------------------------------------------------------------------- #
class DomainError(SounderError):
    """Inputs are well-formed but numerically unusable."""

    exit_code = 4


class NonPrimitivePolynomial(DomainError):
    """LFSR feedback does not yield a maximal-length sequence."""


class ZeroSeed(DomainError):
    """LFSR seeded with the all-zeros state."""


class NegativeDelay(DomainError):
    """A model was evaluated at a negative delay."""


class EmptyTapSet(DomainError):
    """No taps are left to work with."""


class OffGridDelay(DomainError):
    """A tap delay is not an integer number of samples."""


class ZeroSignalPower(DomainError):
    """Noise cannot be scaled against a zero-power signal."""


class InputTooShort(DomainError):
    """Received stream is shorter than one sequence."""


class NoCompleteFrame(DomainError):
    """Not a single full CIR window fits in the correlation stream."""


class EmptyGuard(DomainError):
    """The noise guard region holds no grid points."""


class ZeroSpread(DomainError):
    """Coherence bandwidth requested for a zero delay spread."""
