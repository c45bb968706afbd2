"""Four-stroke quantum Stirling cycle.

Strokes, with heats counted positive when absorbed by the working medium::

    A --(isothermal, T_hot)--> B --(isochoric)--> C
    ^                                             |
    +----(isochoric)---- D <--(isothermal, T_cold)+

A and D use the hot-start spectrum (full well, or frequency omega); B and C
use the hot-end spectrum (barrier-split well, or omega').
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ContractError, DomainError, QStirlingError, ValidationError
from .params import PhysicalParams
from .spectra import (Corrections, Medium, OscillatorGeometry, SpectrumModel,
                      WellGeometry)
from .statmech import PartitionResult, TruncationPolicy, partition_sum

STROKES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class StirlingCycleSpec:
    medium_hot_start: object
    medium_hot_end: object
    T_hot: float
    T_cold: float
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)

    def __post_init__(self):
        for name in ("T_hot", "T_cold"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValidationError(f"{name} must be positive, got {v!r}")
        if self.T_hot < self.T_cold:
            raise ValidationError(
                f"T_hot={self.T_hot} must not be below T_cold={self.T_cold}")

    def with_alpha(self, alpha: float) -> "StirlingCycleSpec":
        from dataclasses import replace
        a = self.medium_hot_start
        b = self.medium_hot_end
        return replace(self,
                       medium_hot_start=a.with_params(a.params.with_alpha(alpha)),
                       medium_hot_end=b.with_params(b.params.with_alpha(alpha)))

    def with_shift(self, shift: float) -> "StirlingCycleSpec":
        from dataclasses import replace
        return replace(self,
                       medium_hot_start=self.medium_hot_start.with_shift(shift),
                       medium_hot_end=self.medium_hot_end.with_shift(shift))


@dataclass(frozen=True)
class CycleResult:
    Q_AB: float
    Q_BC: float
    Q_CD: float
    Q_DA: float
    W: float
    eta: float | None
    eta_carnot: float
    states: dict[str, PartitionResult]
    degenerate: bool = False
    note: str = ""

    @property
    def Q_in(self) -> float:
        return self.Q_DA + self.Q_AB

    @property
    def diagnostics(self) -> dict[str, dict]:
        return {k: v.summary() for k, v in self.states.items()}

    def eta_paper_form(self) -> float:
        return 1.0 + (self.Q_BC + self.Q_CD) / (self.Q_DA + self.Q_AB)


def carnot_bound(T_hot: float, T_cold: float) -> float:
    if not (T_hot > T_cold > 0):
        raise DomainError(f"need T_hot > T_cold > 0, got ({T_hot}, {T_cold})")
    return 1.0 - T_cold / T_hot


def heat_isothermal(state_from: PartitionResult, state_to: PartitionResult,
                    T: float) -> float:
    """dU + k_B T d(lnZ) between two equilibrium states at temperature ``T``.

    The ground-energy offsets cancel analytically, so only the shifted
    quantities enter.
    """
    for s in (state_from, state_to):
        if not math.isclose(s.T, T, rel_tol=1e-12):
            raise ContractError(f"state at T={s.T} used in an isothermal stroke at T={T}")
    kT = state_to.kT
    return ((state_to.U_shifted - state_from.U_shifted)
            + kT * (state_to.lnZ_shifted - state_from.lnZ_shifted))


def heat_isochoric(state_from: PartitionResult, state_to: PartitionResult) -> float:
    """U_to - U_from for a temperature change at fixed spectrum."""
    return ((state_to.ground_energy - state_from.ground_energy)
            + (state_to.U_shifted - state_from.U_shifted))


def assemble_cycle(A: PartitionResult, B: PartitionResult, C: PartitionResult,
                   D: PartitionResult) -> CycleResult:
    """Heats, work and efficiency from the four corner states.

    A and B must share one temperature, C and D another.
    """
    T_hot, T_cold = A.T, D.T
    q_ab = heat_isothermal(A, B, T_hot)
    q_bc = heat_isochoric(B, C)
    q_cd = heat_isothermal(C, D, T_cold)
    q_da = heat_isochoric(D, A)
    w = q_ab + q_bc + q_cd + q_da
    q_in = q_da + q_ab
    states = dict(zip(STROKES, (A, B, C, D)))
    eta_c = 1.0 - T_cold / T_hot
    if T_hot == T_cold:
        return CycleResult(q_ab, q_bc, q_cd, q_da, w, None, eta_c, states, True,
                           "no temperature gradient")
    if not q_in > 0:
        return CycleResult(q_ab, q_bc, q_cd, q_da, w, None, eta_c, states, True,
                           "heat input is not positive; not an engine")
    note = "" if w > 0 else "negative work output"
    return CycleResult(q_ab, q_bc, q_cd, q_da, w, w / q_in, eta_c, states, False, note)


def stroke_states(spec: StirlingCycleSpec) -> dict[str, PartitionResult]:
    plan = {
        "A": (spec.medium_hot_start, spec.T_hot),
        "B": (spec.medium_hot_end, spec.T_hot),
        "C": (spec.medium_hot_end, spec.T_cold),
        "D": (spec.medium_hot_start, spec.T_cold),
    }
    out = {}
    for name, (model, T) in plan.items():
        try:
            out[name] = partition_sum(model, T, spec.policy)
        except QStirlingError as exc:
            raise type(exc)(f"stroke {name}: {exc}") from exc
    return out


def run_stirling(spec: StirlingCycleSpec) -> CycleResult:
    s = stroke_states(spec)
    return assemble_cycle(s["A"], s["B"], s["C"], s["D"])


def well_cycle(params: PhysicalParams, L: float, T_hot: float, T_cold: float,
               corrections: Corrections = Corrections(), *,
               use_physical_length: bool = True,
               policy: TruncationPolicy = TruncationPolicy()) -> StirlingCycleSpec:
    """Barrier-insertion cycle on a well of full width ``2 * L``."""
    geom = WellGeometry(2.0 * L, use_physical_length)
    return StirlingCycleSpec(
        SpectrumModel(Medium.WELL, geom, params, corrections),
        SpectrumModel(Medium.DOUBLE_WELL, geom, params, corrections),
        T_hot, T_cold, policy)


def oscillator_cycle(params: PhysicalParams, omega: float, omega_prime: float,
                     T_hot: float, T_cold: float,
                     corrections: Corrections = Corrections(), *,
                     policy: TruncationPolicy = TruncationPolicy()) -> StirlingCycleSpec:
    """Frequency-change cycle: omega at A/D, omega_prime at B/C."""
    return StirlingCycleSpec(
        SpectrumModel(Medium.OSCILLATOR, OscillatorGeometry(omega), params, corrections),
        SpectrumModel(Medium.OSCILLATOR, OscillatorGeometry(omega_prime), params,
                      corrections),
        T_hot, T_cold, policy)
