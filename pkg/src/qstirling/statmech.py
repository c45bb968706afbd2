"""Canonical partition sums by truncated direct summation.

Energies are measured from the lowest included level before exponentiating,
so SI-sized spectra never overflow; the shift is put back into ``lnZ`` and
``U`` and also kept separately so that heat differences can cancel it
exactly.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError, PerturbativeRegimeError, ValidationError
from .spectra import DEFAULT_HARD_CAP, _chunks


@dataclass(frozen=True)
class TruncationPolicy:
    """How a Boltzmann sum is cut off.

    Summation stops at the first level whose geometric tail bound falls below
    ``weight_epsilon`` times the partial sum, at the spectrum turnover (when
    ``respect_turnover``), or at ``hard_cap``, whichever comes first.
    Reaching the turnover with a last weight above ``violation_threshold``
    of Z raises :class:`PerturbativeRegimeError`.
    """

    weight_epsilon: float = 1e-16
    hard_cap: int = DEFAULT_HARD_CAP
    respect_turnover: bool = True
    violation_threshold: float = 1e-6

    def __post_init__(self):
        if not 0.0 < self.weight_epsilon < 1.0:
            raise ValidationError("weight_epsilon must lie in (0, 1)")
        if int(self.hard_cap) != self.hard_cap or self.hard_cap < 10:
            raise ValidationError("hard_cap must be an integer >= 10")
        if not 0.0 < self.violation_threshold <= 1.0:
            raise ValidationError("violation_threshold must lie in (0, 1]")


@dataclass(frozen=True)
class PartitionResult:
    Z: float
    lnZ: float
    U: float
    F: float
    n_used: int
    tail_weight_estimate: float
    turnover_hit: bool
    T: float
    kT: float
    ground_energy: float
    lnZ_shifted: float
    U_shifted: float
    cap_hit: bool = False
    momentum_ratio: float | None = None

    @property
    def beta(self) -> float:
        return 1.0 / self.kT

    def summary(self) -> dict:
        return {
            "T": self.T,
            "lnZ": self.lnZ,
            "U": self.U,
            "n_used": self.n_used,
            "tail_weight_estimate": self.tail_weight_estimate,
            "turnover_hit": self.turnover_hit,
            "cap_hit": self.cap_hit,
            "momentum_ratio": self.momentum_ratio,
        }


def boltzmann_constant(model) -> float:
    params = getattr(model, "params", None)
    if params is not None:
        return params.k_B
    return getattr(model, "k_B", 1.0)


def _tail_bound(w_last, w_prev):
    if w_last == 0.0:
        return 0.0
    if w_prev is None or w_prev <= 0.0:
        return math.inf
    r = w_last / w_prev
    if r >= 1.0:
        return math.inf
    return w_last * r / (1.0 - r)


def partition_sum(model, T: float, policy: TruncationPolicy = TruncationPolicy()
                  ) -> PartitionResult:
    """Z, lnZ, U and F of ``model`` in contact with a bath at temperature ``T``."""
    if not (math.isfinite(T) and T > 0):
        raise DomainError(f"temperature must be positive, got {T!r}")
    if getattr(model, "strict_paper_sign", False):
        raise ContractError(
            "spectrum uses the negative kinetic sign and is unbounded below; "
            "partition sums are refused")
    kT = boltzmann_constant(model) * T
    beta = 1.0 / kT
    stop = int(policy.hard_cap)
    n_max = getattr(model, "n_max", None)
    if n_max is not None:
        stop = min(stop, n_max)

    eps = policy.weight_epsilon
    e0 = None
    e_prev = None
    w_prev = None
    running = 0.0
    kept_w, kept_de = [], []
    reason = "cap"
    n_last = model.origin

    for lo, hi in _chunks(model.origin, stop):
        ns = np.arange(lo, hi)
        e = model.energies(ns)
        d = model.degeneracies(ns)
        if e0 is None:
            e0 = float(e[0])
        turnover_at = None
        if policy.respect_turnover:
            diffs = np.diff(e if e_prev is None else np.concatenate(([e_prev], e)))
            bad = np.flatnonzero(diffs <= 0)
            if bad.size:
                # index (in this chunk) of the last level before the turnover
                turnover_at = int(bad[0]) - (0 if e_prev is None else 1)
        if turnover_at is not None:
            e, d, ns = e[:turnover_at + 1], d[:turnover_at + 1], ns[:turnover_at + 1]
        de = e - e0
        with np.errstate(over="ignore"):
            w = d * np.exp(-beta * de)
        if not np.all(np.isfinite(w)):
            raise PerturbativeRegimeError(
                "Boltzmann weights overflow; the spectrum is not bounded below "
                "over the summed range")

        stop_at = None
        if w.size:
            zp = running + np.cumsum(w)
            prev = np.concatenate(([np.nan if w_prev is None else w_prev], w[:-1]))
            with np.errstate(divide="ignore", invalid="ignore"):
                r = w / prev
                tail = np.where(w == 0.0, 0.0,
                                np.where((r < 1.0) & (prev > 0), w * r / (1.0 - r), np.inf))
            hits = np.flatnonzero(tail <= eps * zp)
            if hits.size:
                stop_at = int(hits[0])
        if stop_at is not None and (turnover_at is None or stop_at <= turnover_at):
            kept_w.append(w[:stop_at + 1])
            kept_de.append(de[:stop_at + 1])
            n_last = int(ns[stop_at])
            reason = "converged"
            break
        if w.size:
            kept_w.append(w)
            kept_de.append(de)
            running = float(zp[-1])
            n_last = int(ns[-1])
        if turnover_at is not None:
            reason = "turnover"
            break
        e_prev = float(e[-1])
        w_prev = float(w[-1])
    else:
        reason = "exhausted" if n_max is not None and n_max <= policy.hard_cap else "cap"

    w_all = np.concatenate(kept_w)
    de_all = np.concatenate(kept_de)
    zs = math.fsum(w_all)
    us = math.fsum(w_all * de_all) / zs

    if reason == "exhausted":
        tail = 0.0
    else:
        tail = _tail_bound(float(w_all[-1]),
                           float(w_all[-2]) if w_all.size > 1 else None) / zs

    turnover_hit = reason == "turnover"
    if turnover_hit and w_all[-1] / zs > policy.violation_threshold:
        raise PerturbativeRegimeError(
            f"spectrum turns over at n={n_last} while its Boltzmann weight is "
            f"{w_all[-1] / zs:.3g} of Z (threshold {policy.violation_threshold:g}); "
            "the ensemble reaches levels where the expansion is invalid")
    if reason == "cap" and tail > eps:
        warnings.warn(
            f"partition sum hit hard_cap={policy.hard_cap} with tail estimate {tail:.3g}",
            stacklevel=2)

    lnzs = math.log(zs)
    lnZ = lnzs - beta * e0
    U = e0 + us
    ratio = None
    if hasattr(model, "momentum_ratio"):
        ratio = float(model.momentum_ratio(n_last))
    return PartitionResult(
        Z=math.exp(lnZ) if lnZ < 709.0 else math.inf,
        lnZ=lnZ,
        U=U,
        F=-kT * lnZ,
        n_used=n_last,
        tail_weight_estimate=tail,
        turnover_hit=turnover_hit,
        T=T,
        kT=kT,
        ground_energy=e0,
        lnZ_shifted=lnzs,
        U_shifted=us,
        cap_hit=reason == "cap",
        momentum_ratio=ratio,
    )


def internal_energy_fd(model, T: float, policy: TruncationPolicy = TruncationPolicy(),
                       h: float = 1e-5) -> float:
    """U from a central difference of lnZ in beta with relative step ``h``."""
    if not 1e-8 < h < 1e-2:
        raise DomainError(f"relative step must lie in (1e-8, 1e-2), got {h!r}")
    if not (math.isfinite(T) and T > 0):
        raise DomainError(f"temperature must be positive, got {T!r}")
    kB = boltzmann_constant(model)
    beta = 1.0 / (kB * T)
    lo = partition_sum(model, 1.0 / (kB * beta * (1.0 - h)), policy).lnZ
    hi = partition_sum(model, 1.0 / (kB * beta * (1.0 + h)), policy).lnZ
    return -(hi - lo) / (2.0 * beta * h)
