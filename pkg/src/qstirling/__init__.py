"""Quantum Stirling engines with relativistic and NC/GUP-corrected media."""

from .errors import (ConfigError, ContractError, DomainError,
                     PerturbativeRegimeError, QStirlingError, ValidationError)
from .params import PhysicalParams, UnitSystem, correction_factor
from .spectra import (Corrections, Level, Medium, OscillatorGeometry, PRESETS,
                      SpectrumModel, TabulatedSpectrum, WellGeometry,
                      energy_double_well, energy_oscillator, energy_well,
                      turnover_cutoff)
from .statmech import (PartitionResult, TruncationPolicy, internal_energy_fd,
                       partition_sum)

__version__ = "0.1.0"
