"""Energy levels of the working media with relativistic and NC/GUP terms.

Quantum numbers start at 1 for the wells and at 0 for the oscillator.  All
energy functions accept either a scalar or an integer array ``n`` and are
vectorised with numpy.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, ValidationError
from .params import PhysicalParams, correction_factor

DEFAULT_HARD_CAP = 10**6


class Medium(enum.Enum):
    WELL = "well"
    DOUBLE_WELL = "double_well"
    OSCILLATOR = "oscillator"


@dataclass(frozen=True)
class Corrections:
    relativistic: bool = False
    ncgup: bool = False

    @classmethod
    def preset(cls, name: str) -> "Corrections":
        try:
            return PRESETS[name]
        except KeyError:
            raise ValidationError(
                f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


PRESETS = {
    "textbook": Corrections(False, False),
    "relativistic": Corrections(True, False),
    "ncgup-full": Corrections(True, True),
}


@dataclass(frozen=True)
class WellGeometry:
    """Infinite square well of coordinate width ``L0``.

    With ``use_physical_length`` the spectrum uses the NC-rescaled width
    ``L0 * (1 + g)`` instead of ``L0``.
    """

    L0: float
    use_physical_length: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.L0) and self.L0 > 0):
            raise ValidationError(f"L0 must be positive, got {self.L0!r}")

    def length(self, p: PhysicalParams, ncgup: bool = True) -> float:
        if not (self.use_physical_length and ncgup):
            return self.L0
        return self.L0 * (1.0 + correction_factor(p))


@dataclass(frozen=True)
class OscillatorGeometry:
    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValidationError(f"omega must be positive, got {self.omega!r}")


@dataclass(frozen=True)
class Level:
    n: int
    energy: float
    degeneracy: int


def _as_n(n, origin):
    arr = np.asarray(n)
    if arr.dtype.kind not in "iu":
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise DomainError(f"quantum numbers must be integers, got {n!r}")
    if np.any(arr < origin):
        raise DomainError(f"quantum number must be >= {origin}, got {n!r}")
    return arr.astype(np.float64)


def energy_well(n, g: WellGeometry, p: PhysicalParams,
                flags: Corrections = Corrections(), *, strict_paper_sign=False):
    """Levels of the corrected infinite well of width ``g.L0``.

    E_n = n^2 hbar^2 pi^2 / (2 m L^2) * (1 + 3g/2) - hbar^4 (n pi / L)^4 / (8 m^3 c^2)

    The quartic term is present only with ``flags.relativistic``.
    ``strict_paper_sign`` flips the sign of the kinetic term; such spectra
    are unbounded below and are rejected by the partition sum.
    """
    nf = _as_n(n, 1)
    gc = correction_factor(p) if flags.ncgup else 0.0
    L = g.length(p, flags.ncgup)
    # explicit products keep scalar and array evaluation bit-identical
    hk = p.hbar * nf * math.pi / L
    hk2 = hk * hk
    kinetic = hk2 / (2.0 * p.m) * (1.0 + 1.5 * gc)
    if strict_paper_sign:
        kinetic = -kinetic
    if flags.relativistic:
        return kinetic - hk2 * hk2 / (8.0 * p.m**3 * p.c**2)
    return kinetic


def energy_double_well(n, parent: WellGeometry, p: PhysicalParams,
                       flags: Corrections = Corrections(), *,
                       strict_paper_sign=False) -> Level:
    """Level ``n`` after a barrier splits ``parent`` into two halves.

    Only the parent's even levels survive, each doubly degenerate.
    """
    _as_n(n, 1)
    e = energy_well(2 * int(n), parent, p, flags,
                    strict_paper_sign=strict_paper_sign)
    return Level(int(n), float(e), 2)


def energy_oscillator(n, g: OscillatorGeometry, p: PhysicalParams,
                      flags: Corrections = Corrections()):
    """Levels of the corrected harmonic oscillator.

    E_n = hbar w (n + 1/2)(1 - g/2)
          - hbar^2 w^2 / (32 m c^2) (1 - 4g)(5 n (n+1) + 3)
    """
    nf = _as_n(n, 0)
    gc = correction_factor(p) if flags.ncgup else 0.0
    hw = p.hbar * g.omega
    e = hw * (nf + 0.5) * (1.0 - 0.5 * gc)
    if flags.relativistic:
        e = e - hw * hw / (32.0 * p.m * p.c**2) * (1.0 - 4.0 * gc) * (
            5.0 * nf * (nf + 1.0) + 3.0)
    return e


@dataclass(frozen=True)
class SpectrumModel:
    """A working medium: level energies, degeneracy and quantum-number origin.

    ``shift`` is a constant added to every level; it exists for invariance
    checks and has no physical meaning.
    """

    medium: Medium
    geometry: WellGeometry | OscillatorGeometry
    params: PhysicalParams
    corrections: Corrections = field(default_factory=Corrections)
    strict_paper_sign: bool = False
    shift: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "medium", Medium(self.medium))
        want = OscillatorGeometry if self.medium is Medium.OSCILLATOR else WellGeometry
        if not isinstance(self.geometry, want):
            raise ValidationError(
                f"{self.medium.value} needs {want.__name__}, "
                f"got {type(self.geometry).__name__}")
        if self.strict_paper_sign and self.medium is Medium.OSCILLATOR:
            raise ValidationError("strict_paper_sign only applies to wells")

    @property
    def origin(self) -> int:
        return 0 if self.medium is Medium.OSCILLATOR else 1

    @property
    def n_max(self) -> int | None:
        return None

    def energies(self, n) -> np.ndarray:
        n = np.asarray(n)
        if self.medium is Medium.OSCILLATOR:
            e = energy_oscillator(n, self.geometry, self.params, self.corrections)
        elif self.medium is Medium.WELL:
            e = energy_well(n, self.geometry, self.params, self.corrections,
                            strict_paper_sign=self.strict_paper_sign)
        else:
            _as_n(n, 1)
            e = energy_well(2 * n, self.geometry, self.params, self.corrections,
                            strict_paper_sign=self.strict_paper_sign)
        return np.asarray(e, dtype=np.float64) + self.shift

    def degeneracies(self, n) -> np.ndarray:
        d = 2 if self.medium is Medium.DOUBLE_WELL else 1
        return np.full(np.shape(n), d, dtype=np.int64)

    def level(self, n: int) -> Level:
        return Level(int(n), float(self.energies(n)), int(self.degeneracies(n)))

    def levels(self, n_max: int) -> list[Level]:
        ns = np.arange(self.origin, n_max + 1)
        es = self.energies(ns)
        ds = self.degeneracies(ns)
        return [Level(int(a), float(b), int(c)) for a, b, c in zip(ns, es, ds)]

    def with_params(self, params: PhysicalParams) -> "SpectrumModel":
        return replace(self, params=params)

    def with_shift(self, shift: float) -> "SpectrumModel":
        return replace(self, shift=shift)

    def momentum_ratio(self, n) -> np.ndarray:
        """Characteristic p_n/(m c) of level ``n``.

        Values approaching 1 mean the relativistic expansion is no longer
        trustworthy at that level.
        """
        p = self.params
        nf = np.asarray(n, dtype=np.float64)
        if self.medium is Medium.OSCILLATOR:
            # <p^2> = m hbar w (n + 1/2)
            return np.sqrt(p.hbar * self.geometry.omega * (nf + 0.5) / (p.m * p.c**2))
        if self.medium is Medium.DOUBLE_WELL:
            nf = 2.0 * nf
        L = self.geometry.length(p, self.corrections.ncgup)
        return p.hbar * nf * math.pi / L / (p.m * p.c)


@dataclass(frozen=True)
class TabulatedSpectrum:
    """A finite spectrum given explicitly; handy for toy systems."""

    values: tuple[float, ...]
    degeneracy: tuple[int, ...] | None = None
    shift: float = 0.0
    k_B: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.degeneracy is None:
            object.__setattr__(self, "degeneracy", (1,) * len(self.values))
        if len(self.degeneracy) != len(self.values) or not self.values:
            raise ValidationError("values and degeneracy must be non-empty and match")
        if any(d < 1 for d in self.degeneracy):
            raise ValidationError("degeneracies must be positive")

    origin = 0

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def energies(self, n) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)[np.asarray(n)] + self.shift

    def degeneracies(self, n) -> np.ndarray:
        return np.asarray(self.degeneracy, dtype=np.int64)[np.asarray(n)]

    def with_shift(self, shift: float) -> "TabulatedSpectrum":
        return replace(self, shift=shift)


def _chunks(origin: int, stop: int, first: int = 256, largest: int = 1 << 16):
    size = first
    lo = origin
    while lo <= stop:
        hi = min(lo + size, stop + 1)
        yield lo, hi
        lo = hi
        size = min(size * 2, largest)


def turnover_cutoff(model, hard_cap: int = DEFAULT_HARD_CAP) -> int:
    """Largest n such that the spectrum is strictly increasing up to n.

    The scan stops at the first level that does not exceed its predecessor.
    If no turnover occurs up to ``hard_cap`` (or the end of a finite spectrum)
    that bound is returned.
    """
    stop = hard_cap
    if getattr(model, "n_max", None) is not None:
        stop = min(stop, model.n_max)
    prev = None
    for lo, hi in _chunks(model.origin, stop):
        e = model.energies(np.arange(lo, hi))
        if prev is not None:
            e = np.concatenate(([prev], e))
            base = lo - 1
        else:
            base = lo
        bad = np.flatnonzero(np.diff(e) <= 0)
        if bad.size:
            return int(base + bad[0])
        prev = e[-1]
    return stop
