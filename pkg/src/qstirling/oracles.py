"""Closed-form partition functions and the error function.

The closed forms are continuum or algebraic approximations valid only in
limited regimes.  Each evaluation is paired with the direct sum and the gap
is reported in an :class:`OracleReport`; nothing here is used to drive the
cycle calculations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .errors import DomainError
from .params import PhysicalParams, UnitSystem, correction_factor, frequency_to_natural
from .spectra import Corrections, Medium, OscillatorGeometry, SpectrumModel, WellGeometry
from .statmech import TruncationPolicy, partition_sum

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_SERIES_LIMIT = 3.0


def _erf_series(x: float) -> float:
    # erf(x) = 2/sqrt(pi) exp(-x^2) sum_k 2^k x^(2k+1) / (2k+1)!!  (all terms positive)
    x2 = x * x
    term = x
    total = x
    for k in range(1, 200):
        term *= 2.0 * x2 / (2 * k + 1)
        total += term
        if term <= total * 1e-17:
            break
    return _TWO_OVER_SQRT_PI * math.exp(-x2) * total


def _erfc_cf(x: float) -> float:
    # erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    # evaluated with the modified Lentz method.
    tiny = 1e-300
    f = x
    C = x
    D = 0.0
    k = 1
    while k < 500:
        a = 0.5 * k
        D = x + a * D
        D = 1.0 / (D if D != 0.0 else tiny)
        C = x + a / C
        if C == 0.0:
            C = tiny
        delta = C * D
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
        k += 1
    return math.exp(-x * x) / (math.sqrt(math.pi) * f)


def _erf_scalar(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"erf needs a finite argument, got {x!r}")
    ax = abs(x)
    if ax == 0.0:
        return x
    if ax <= _SERIES_LIMIT:
        v = _erf_series(ax)
    else:
        v = 1.0 - _erfc_cf(ax)
    return v if x > 0 else -v


def erf(x):
    """Error function, accurate to about 1e-15 absolute.

    Uses a positive-term power series up to |x| = 3 and a continued fraction
    for the complement beyond.  Odd symmetry holds exactly.  Accepts scalars
    or arrays.
    """
    if np.ndim(x) == 0:
        return _erf_scalar(x)
    arr = np.asarray(x, dtype=np.float64)
    out = np.empty_like(arr)
    flat = out.reshape(-1)
    for i, v in enumerate(arr.reshape(-1)):
        flat[i] = _erf_scalar(v)
    return out


@dataclass(frozen=True)
class OracleReport:
    closed_form_value: float | complex | None
    direct_sum_value: float | None
    relative_gap: float | None
    regime_valid: bool
    regime_notes: str
    real: bool = True

    def to_dict(self) -> dict:
        d = asdict(self)
        if isinstance(d["closed_form_value"], complex):
            d["closed_form_value"] = repr(d["closed_form_value"])
        return d


def _gap(closed, direct):
    return abs(closed - direct) / max(abs(direct), 1e-300)


def z_well_closed(g: WellGeometry, p: PhysicalParams, T: float,
                  flags: Corrections = Corrections(ncgup=True)) -> float:
    """Continuum approximation to the well partition function.

    Z ~ 1 / (sqrt(pi) * sqrt(beta hbar^2 (2 + 3 g) / (L^2 m)))

    The relativistic quartic term is absent from this form.
    """
    if not (math.isfinite(T) and T > 0):
        raise DomainError(f"temperature must be positive, got {T!r}")
    beta = 1.0 / (p.k_B * T)
    gc = correction_factor(p) if flags.ncgup else 0.0
    L = g.length(p, flags.ncgup)
    return 1.0 / (math.sqrt(math.pi)
                  * math.sqrt(beta * p.hbar**2 * (2.0 + 3.0 * gc) / (L**2 * p.m)))


def audit_well(g: WellGeometry, p: PhysicalParams, T: float,
               flags: Corrections = Corrections(ncgup=True),
               policy: TruncationPolicy = TruncationPolicy(),
               spacing_ratio: float = 0.1) -> OracleReport:
    """Compare :func:`z_well_closed` with the direct sum at temperature ``T``.

    The closed form is declared in-regime when the ground level is below
    ``spacing_ratio`` * k_B T and the quartic term shifts the thermally
    relevant levels by less than that same fraction.
    """
    closed = z_well_closed(g, p, T, flags)
    model = SpectrumModel(Medium.WELL, g, p, flags)
    direct = partition_sum(model, T, policy)
    kT = p.k_B * T
    e1 = SpectrumModel(Medium.WELL, g, p, Corrections(False, flags.ncgup)).energies(1)
    notes = []
    valid = True
    if e1 > spacing_ratio * kT:
        valid = False
        notes.append(f"ground level {float(e1 / kT):.3g} k_B T; continuum limit not reached")
    if flags.relativistic:
        L = g.length(p, flags.ncgup)
        # quartic term at the level where the kinetic energy is a few k_B T
        n_th = math.sqrt(10.0 * kT / float(e1))
        quartic = (p.hbar * n_th * math.pi / L) ** 4 / (8.0 * p.m**3 * p.c**2)
        if quartic > spacing_ratio * kT:
            valid = False
            notes.append("relativistic quartic term is thermally significant")
    return OracleReport(closed, direct.Z, _gap(closed, direct.Z), valid,
                        "; ".join(notes) or "continuum regime")


def z_ho_closed(g: OscillatorGeometry, p: PhysicalParams, T: float) -> OracleReport:
    """Evaluate the erf-based oscillator closed form as printed.

    The expression is written in hbar = c = 1 form, so SI parameters are
    converted to the natural system first.  Its denominator
    sqrt(beta w^2 (4 alpha zeta^2 - 1)) is imaginary whenever
    4 alpha zeta^2 < 1, which covers every physical deformation; such cases
    are flagged non-real and no value is produced.
    """
    if not (math.isfinite(T) and T > 0):
        raise DomainError(f"temperature must be positive, got {T!r}")
    omega = g.omega
    if p.units is UnitSystem.SI:
        omega = frequency_to_natural(omega)
        p = p.to_natural()
    hbar, c, m, a, z = p.hbar, p.c, p.m, p.alpha, p.zeta
    beta = 1.0 / (p.k_B * T)
    radicand = beta * omega**2 * (4.0 * a * z**2 - 1.0)
    if radicand <= 0.0:
        return OracleReport(None, None, None, False,
                            f"Theta^2 = {radicand:.6g} <= 0: expression is not real",
                            real=False)
    theta = math.sqrt(radicand)
    xi = (-1024.0 * c**6 * m**4 * a * z**2 + 256.0 * m**6 * a**2 * z**4
          - 35.0 * hbar**2 * omega**2 + 280.0 * c**2 * hbar**2 * m**2 * a * z**2 * omega**2
          - 16.0 * c**4 * m**2 * (-64.0 + 35.0 * hbar**2 * m**2 * a**2 * z**4 * omega**2))
    kappa = beta * xi / (640.0 * c**2 * m * (-1.0 + 4.0 * c**2 * m**2 * a * z**2))
    arg = hbar * beta * omega * (16.0 * c**4 * m**3 * a * z**2 + 5.0 * hbar * omega
                                 - 4.0 * c**2 * m * (8.0 + 5.0 * hbar * m * a * z**2 * omega)
                                 ) / theta
    chi = 1.0 + erf(arg)
    try:
        value = 2.0 * math.sqrt(2.0 * math.pi / 5.0) * math.exp(kappa) * chi / theta
    except OverflowError:
        value = math.inf
    model = SpectrumModel(Medium.OSCILLATOR, OscillatorGeometry(omega), p,
                          Corrections(True, True))
    try:
        direct = partition_sum(model, T).Z
    except Exception as exc:  # noqa: BLE001 - report, never raise
        return OracleReport(value, None, None, False, f"direct sum failed: {exc}")
    return OracleReport(value, direct, _gap(value, direct), True,
                        "hypothetical regime 4 alpha zeta^2 > 1")
