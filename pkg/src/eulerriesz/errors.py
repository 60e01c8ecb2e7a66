"""Exception types shared across the package."""

from __future__ import annotations


class EulerRieszError(Exception):
    """Base class for all package errors."""

    kind = "error"


class ConfigError(EulerRieszError):
    """Invalid configuration file or parameter combination."""

    kind = "config"


class DomainError(EulerRieszError):
    """Operator applied outside its mathematical domain."""

    kind = "domain"


class FitError(EulerRieszError):
    """Rate fit could not be performed on the given series."""

    kind = "fit"


class FormatError(EulerRieszError):
    """Malformed on-disk artifact (CSV, checkpoint, manifest)."""

    kind = "format"


class BlowUpError(EulerRieszError):
    """Density dropped to the positivity floor during time stepping.

    Carries the simulation time and the offending minimum density so the
    run loop can flush a final record and report a structured status.
    """

    kind = "blow-up"

    def __init__(self, t: float, min_density: float):
        self.t = t
        self.min_density = min_density
        super().__init__(
            f"density floor reached at t={t:.6g} (min density {min_density:.6g})"
        )
