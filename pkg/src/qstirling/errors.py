"""Exception types raised by qstirling."""


class QStirlingError(Exception):
    """Base class for all package errors."""


class DomainError(QStirlingError, ValueError):
    """An argument lies outside the domain of the operation."""


class ValidationError(QStirlingError, ValueError):
    """A parameter object failed its invariants."""


class ContractError(QStirlingError):
    """Inputs are individually valid but inconsistent with each other."""


class PerturbativeRegimeError(QStirlingError):
    """The thermal ensemble occupies levels past the spectrum turnover.

    The corrected spectra are truncated expansions; once the Boltzmann
    weight at the turnover is non-negligible the partition sum no longer
    describes the physical system.
    """


class ConfigError(QStirlingError, ValueError):
    """Bad command-line flag or config-file entry."""
