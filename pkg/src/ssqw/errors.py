"""Exception hierarchy shared across the package.

Every error carries a short machine-parsable ``code`` so the CLI can emit a
single diagnostic line and map it to an exit status.
"""


class SsqwError(Exception):
    """Base class for all package-specific errors."""

    code = "E_GENERIC"


class ParameterValidationError(SsqwError):
    """Coin parameters violate a normalization or strong-shift condition."""

    code = "E_PARAMS"


class SpectralDomainError(SsqwError):
    """A spectral quantity was requested outside its domain of definition."""

    code = "E_DOMAIN"


class UnsupportedModeError(SsqwError):
    """A closed-form route was requested for parameters it does not cover."""

    code = "E_MODE"


class ThresholdConditionError(SsqwError):
    """A threshold-resonance construction needs |phi22| == |omega22|."""

    code = "E_THRESHOLD"


class PreconditionError(SsqwError):
    """An operation precondition failed (e.g. mu is not an eigenvalue)."""

    code = "E_PRECONDITION"


class LightConeViolationError(SsqwError):
    """Requested evolution would let the light cone reach the window edge."""

    code = "E_LIGHTCONE"


class ConfigError(SsqwError):
    """Malformed configuration or parameter file."""

    code = "E_CONFIG"
