"""Physical constants, unit conventions and the NC/GUP parameter set.

Two unit systems are supported.  ``SI`` uses CODATA values from
:mod:`scipy.constants`.  ``NATURAL`` sets hbar = c = k_B = 1 and measures
energy in units of k_B * 1 K, so a temperature of ``2`` means 2 K and a
frequency of ``4`` means hbar*omega = 4 k_B K.  Lengths are then in units of
hbar*c/(k_B K) (about 2.29 mm) and masses in units of k_B K / c**2.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, replace

from scipy import constants as _sc

from .errors import ValidationError

ALPHA_BOUND = 1e41

#: SI reference values.
HBAR_SI = _sc.hbar
C_SI = _sc.c
KB_SI = _sc.k
ELECTRON_MASS_SI = _sc.m_e
PLANCK_MASS_SI = _sc.physical_constants["Planck mass"][0]

#: Energy unit of the natural system, in joules.
NATURAL_ENERGY_UNIT = KB_SI * 1.0


class UnitSystem(enum.Enum):
    SI = "si"
    NATURAL = "natural"

    @classmethod
    def parse(cls, value: "UnitSystem | str") -> "UnitSystem":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValidationError(f"unknown unit system {value!r}") from None


# conversions from SI to the natural system (energy unit k_B * 1 K)

def energy_to_natural(energy_si: float) -> float:
    return energy_si / NATURAL_ENERGY_UNIT


def mass_to_natural(mass_si: float) -> float:
    return mass_si * C_SI**2 / NATURAL_ENERGY_UNIT


def length_to_natural(length_si: float) -> float:
    return length_si * NATURAL_ENERGY_UNIT / (HBAR_SI * C_SI)


def frequency_to_natural(omega_si: float) -> float:
    return omega_si * HBAR_SI / NATURAL_ENERGY_UNIT


def length_to_si(length_nat: float) -> float:
    return length_nat * HBAR_SI * C_SI / NATURAL_ENERGY_UNIT


def frequency_to_si(omega_nat: float) -> float:
    return omega_nat * NATURAL_ENERGY_UNIT / HBAR_SI


def _check_finite(**values):
    for name, v in values.items():
        if v is None:
            continue
        if not math.isfinite(v):
            raise ValidationError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """Constants, particle mass and deformation parameters for one run.

    ``zeta`` defaults to ``1/(c*M_pl)``; pass ``zeta_override`` to decouple it
    from the Planck mass.  Build instances with :meth:`si` or :meth:`natural`
    unless every constant is being set by hand.
    """

    hbar: float
    c: float
    k_B: float
    m: float
    M_pl: float
    alpha: float = 0.0
    zeta_override: float | None = None
    units: UnitSystem = UnitSystem.SI
    alpha_bound: float = field(default=ALPHA_BOUND, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "units", UnitSystem.parse(self.units))
        _check_finite(hbar=self.hbar, c=self.c, k_B=self.k_B, m=self.m,
                      M_pl=self.M_pl, alpha=self.alpha,
                      zeta_override=self.zeta_override)
        for name in ("hbar", "c", "k_B", "m", "M_pl"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name} must be positive")
        if self.alpha < 0:
            raise ValidationError(f"alpha must be >= 0, got {self.alpha!r}")
        if self.zeta_override is not None and self.zeta_override < 0:
            raise ValidationError("zeta must be >= 0")
        if self.alpha > self.alpha_bound:
            warnings.warn(
                f"alpha={self.alpha:g} exceeds the bound {self.alpha_bound:g}",
                stacklevel=3,
            )

    @classmethod
    def si(cls, m: float = ELECTRON_MASS_SI, alpha: float = 0.0,
           zeta: float | None = None) -> "PhysicalParams":
        return cls(hbar=HBAR_SI, c=C_SI, k_B=KB_SI, m=m, M_pl=PLANCK_MASS_SI,
                   alpha=alpha, zeta_override=zeta, units=UnitSystem.SI)

    @classmethod
    def natural(cls, m: float | None = None, alpha: float = 0.0,
                zeta: float | None = None,
                M_pl: float | None = None) -> "PhysicalParams":
        """Natural-unit parameters; masses default to electron and Planck."""
        if m is None:
            m = mass_to_natural(ELECTRON_MASS_SI)
        if M_pl is None:
            M_pl = mass_to_natural(PLANCK_MASS_SI)
        return cls(hbar=1.0, c=1.0, k_B=1.0, m=m, M_pl=M_pl, alpha=alpha,
                   zeta_override=zeta, units=UnitSystem.NATURAL)

    @property
    def zeta(self) -> float:
        if self.zeta_override is not None:
            return self.zeta_override
        return 1.0 / (self.c * self.M_pl)

    def with_alpha(self, alpha: float) -> "PhysicalParams":
        return replace(self, alpha=alpha)

    def to_natural(self) -> "PhysicalParams":
        """Same physical situation expressed in the natural system."""
        if self.units is UnitSystem.NATURAL:
            return self
        zeta = None
        if self.zeta_override is not None:
            # zeta is an inverse momentum; natural momentum unit is k_B K / c
            zeta = self.zeta_override * NATURAL_ENERGY_UNIT / C_SI
        return PhysicalParams.natural(m=mass_to_natural(self.m), alpha=self.alpha,
                                      zeta=zeta, M_pl=mass_to_natural(self.M_pl))

    def to_dict(self) -> dict:
        return {
            "units": self.units.value,
            "hbar": self.hbar,
            "c": self.c,
            "k_B": self.k_B,
            "m": self.m,
            "M_pl": self.M_pl,
            "alpha": self.alpha,
            "zeta": self.zeta_override,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PhysicalParams":
        return cls(hbar=d["hbar"], c=d["c"], k_B=d["k_B"], m=d["m"],
                   M_pl=d["M_pl"], alpha=d.get("alpha", 0.0),
                   zeta_override=d.get("zeta"), units=d.get("units", "si"))


def correction_factor(p: PhysicalParams) -> float:
    """Dimensionless NC/GUP correction ``alpha * zeta**2 * m**2 * c**2``."""
    g = p.alpha * p.zeta**2 * p.m**2 * p.c**2
    if not math.isfinite(g):
        raise ValidationError(f"correction factor is not finite ({g!r})")
    return g
