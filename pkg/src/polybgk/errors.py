"""Exception hierarchy shared across the package.

Configuration-time problems derive from :class:`ConfigError`; runtime
numerical failures derive from :class:`NumericalError`.  The CLI maps these
onto distinct exit codes.
"""

from __future__ import annotations


class PolybgkError(Exception):
    """Base class for all package errors."""


class ConfigError(PolybgkError):
    """Invalid or inconsistent configuration input."""


class TruncationError(ConfigError):
    """Velocity or internal-energy box too small: reference Gaussian loses
    more mass to truncation than the configured tolerance."""


class NumericalError(PolybgkError):
    """Runtime numerical failure with diagnostic context."""


class VacuumError(NumericalError):
    """Density fell below the vacuum floor; bulk velocity and temperatures
    are undefined there."""


class NegativeTemperatureError(NumericalError):
    """A relaxation or exchange temperature left the admissible (positive)
    region."""


class StepSizeError(NumericalError):
    """Relaxation exponent for the requested time step exceeds the guard
    threshold; frozen-coefficient integration would be stale."""


class InsufficientDecayError(NumericalError):
    """Equilibration signal is below the noise floor; no rate can be fit."""


class NonContractionWarning(UserWarning):
    """Successive fixed-point iterates stopped contracting after burn-in."""
