"""Exit criteria.  Each test prints one PASS/FAIL line to the terminal."""
import math
import time

import mpmath
import numpy as np
import pytest

from qstirling import (PRESETS, Medium, OscillatorGeometry, PhysicalParams, SpectrumModel,
                       WellGeometry, internal_energy_fd, partition_sum)
from qstirling.cycle import carnot_bound, oscillator_cycle, run_stirling, well_cycle
from qstirling.oracles import audit_well, erf, z_ho_closed
from qstirling.params import HBAR_SI, ELECTRON_MASS_SI, length_to_natural
from qstirling.spectra import Corrections
from qstirling.sweep import SweepSpec, run_sweep

from conftest import brute_well_eta, geometric_oscillator_eta

FULL = PRESETS["ncgup-full"]
UNIT = PhysicalParams.natural(m=1.0)


@pytest.fixture
def report(capsys):
    def _report(number, name, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {name}: {detail}")
        return ok
    return _report


def test_criterion_1_commutative_limit(report):
    t0 = time.perf_counter()
    gaps = {}
    r = run_stirling(oscillator_cycle(UNIT, 4.0, 3.0, 2.0, 1.0))
    ref = geometric_oscillator_eta(4.0, 3.0, 2.0, 1.0)
    gaps["oscillator"] = abs(r.eta - ref) / abs(ref)

    # unit-mass well with half width 1: full width 2, ground level pi^2/8
    r = run_stirling(well_cycle(UNIT, 1.0, 2.0, 1.0))
    ref = brute_well_eta(math.pi**2 / 8, 2.0, 1.0)
    gaps["well natural"] = abs(r.eta - ref) / abs(ref)

    # 5 nm half width, electron, SI
    p = PhysicalParams.si()
    r = run_stirling(well_cycle(p, 5e-9, 2.0, 1.0))
    e1 = HBAR_SI**2 * math.pi**2 / (2 * ELECTRON_MASS_SI * (10e-9) ** 2)
    ref = brute_well_eta(e1, 2.0, 1.0, kB=p.k_B)
    gaps["well 5nm"] = abs(r.eta - ref) / abs(ref)
    elapsed = time.perf_counter() - t0

    ok = max(gaps.values()) <= 1e-8 and elapsed < 5.0
    detail = ", ".join(f"{k} gap={v:.2e}" for k, v in gaps.items()) + f", {elapsed:.2f}s"
    assert report(1, "commutative-limit reduction", ok, detail)


def test_criterion_2_carnot_compliance(report):
    t0 = time.perf_counter()
    T_hots = np.geomspace(0.5, 50.0, 10)
    fracs = np.linspace(0.05, 0.95, 10)
    worst = -math.inf
    checked = 0
    si = PhysicalParams.si()
    for T_h in T_hots:
        for f in fracs:
            T_c = T_h * f
            bound = carnot_bound(T_h, T_c)
            for spec in (oscillator_cycle(UNIT, 4.0, 3.0, T_h, T_c),
                         well_cycle(si, 5e-9, T_h, T_c)):
                r = run_stirling(spec)
                if r.eta is None:
                    continue
                checked += 1
                worst = max(worst, r.eta - bound)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 30.0
    assert report(2, "Carnot compliance (textbook media)", ok,
                  f"{checked} cycles, max(eta - carnot)={worst:.3e}, {elapsed:.2f}s")


def _sweep_etas(**kw):
    rows = list(run_sweep(SweepSpec(**kw)))
    assert not any(r.failed for r in rows), [r.warnings for r in rows if r.failed]
    return rows


def test_criterion_3_fig3_flat_efficiency(report):
    t0 = time.perf_counter()
    rows = _sweep_etas(medium="well", preset="ncgup-full", units="si", L=5e-9,
                       T_hot=2.0, T_cold=1.0)
    etas = np.array([r.eta for r in rows])
    spread = (etas.max() - etas.min()) / abs(etas.mean())
    elapsed = time.perf_counter() - t0
    ok = spread < 0.01 and elapsed < 60.0
    assert report(3, "Fig. 3 flat well efficiency", ok,
                  f"{len(rows)} rows, relative spread={spread:.2e}, {elapsed:.2f}s")


def test_criterion_3_fig3_commutative_anchor(report):
    rows = _sweep_etas(medium="well", preset="ncgup-full", units="si", L=5e-9,
                       T_hot=2.0, T_cold=1.0, steps=2)
    anchor = rows[0]
    assert anchor.alpha == 0.0
    ok = abs(anchor.eta - 0.2) <= 0.05
    assert report(3, "Fig. 3 commutative anchor near 0.2", ok,
                  f"eta(alpha=0)={anchor.eta:.12f}, band 0.2 +/- 0.05")


def test_criterion_4_fig4_rising_efficiency(report):
    t0 = time.perf_counter()
    rows = _sweep_etas(medium="oscillator", preset="ncgup-full", units="natural",
                       omega=4.0, omega_prime=3.0, T_hot=2.0, T_cold=1.0)
    etas = np.array([r.eta for r in rows])
    worst_drop = float(np.min(np.diff(etas)))
    rise = etas[-1] - etas[0]
    elapsed = time.perf_counter() - t0
    ok = worst_drop >= -1e-10 and rise > 0 and elapsed < 60.0
    assert report(4, "Fig. 4 oscillator efficiency rises with alpha", ok,
                  f"eta(0)={etas[0]:.12f}, eta(1e41)={etas[-1]:.12f}, rise={rise:.3e}, "
                  f"min step={worst_drop:.2e}, {elapsed:.2f}s")


def test_criterion_5_internal_energy_consistency(report):
    worst = 0.0
    points = 0
    for T_h in (1.0, 2.0, 5.0, 10.0, 20.0):
        for alpha in (0.0, 1e35, 1e40, 1e41):
            points += 1
            specs = (oscillator_cycle(PhysicalParams.natural(alpha=alpha), 4.0, 3.0,
                                      T_h, T_h / 2, FULL),
                     well_cycle(PhysicalParams.si(alpha=alpha), 5e-9, T_h, T_h / 2, FULL))
            for spec in specs:
                for model, T in ((spec.medium_hot_start, spec.T_hot),
                                 (spec.medium_hot_end, spec.T_hot),
                                 (spec.medium_hot_end, spec.T_cold),
                                 (spec.medium_hot_start, spec.T_cold)):
                    r = partition_sum(model, T)
                    fd = internal_energy_fd(model, T, h=1e-5)
                    worst = max(worst, abs(r.U - fd) / max(abs(r.U), r.kT))
    ok = worst <= 1e-6
    assert report(5, "analytic vs finite-difference U", ok,
                  f"{points} (T, alpha) points x 8 strokes, worst={worst:.2e}")


def test_criterion_6_shift_invariance(report):
    specs = {
        "oscillator": oscillator_cycle(PhysicalParams.natural(alpha=1e41), 4.0, 3.0, 2.0, 1.0, FULL),
        "well": well_cycle(PhysicalParams.si(alpha=1e41), 5e-9, 2.0, 1.0, FULL),
        "textbook oscillator": oscillator_cycle(UNIT, 4.0, 3.0, 2.0, 1.0),
    }
    worst = 0.0
    for spec in specs.values():
        r0 = run_stirling(spec)
        ground = float(spec.medium_hot_start.energies(spec.medium_hot_start.origin))
        r1 = run_stirling(spec.with_shift(1e3 * ground))
        for name in ("Q_AB", "Q_BC", "Q_CD", "Q_DA", "W", "eta"):
            a, b = getattr(r0, name), getattr(r1, name)
            if a == b:
                continue
            worst = max(worst, abs(a - b) / abs(a))
    ok = worst <= 1e-10
    assert report(6, "uniform level shift leaves heats, W, eta unchanged", ok,
                  f"worst relative change={worst:.2e}")


def test_criterion_7_barrier_insertion_identity(report):
    mismatches = 0
    for p, L in ((PhysicalParams.si(alpha=1e41), 10e-9), (UNIT, 2.0),
                 (PhysicalParams.natural(alpha=1e41), length_to_natural(10e-9))):
        for flags in PRESETS.values():
            parent = SpectrumModel(Medium.WELL, WellGeometry(L), p, flags)
            child = SpectrumModel(Medium.DOUBLE_WELL, WellGeometry(L), p, flags)
            for lv in child.levels(50):
                ref = parent.level(2 * lv.n)
                mismatches += (lv.energy != ref.energy) + (lv.degeneracy != 2)
    assert report(7, "double well = parent even levels, degeneracy 2", mismatches == 0,
                  f"{mismatches} mismatches over n <= 50")


def test_criterion_8_erf_contract(report):
    mpmath.mp.dps = 40
    xs = np.linspace(-6.0, 6.0, 10_000)
    worst = max(abs(erf(x) - float(mpmath.erf(mpmath.mpf(x)))) for x in xs)
    odd = all(erf(x) == -erf(-x) for x in xs)
    ok = worst <= 1e-12 and odd
    assert report(8, "erf accuracy and odd symmetry", ok,
                  f"max abs error={worst:.2e} on 1e4 points, odd symmetry exact={odd}")


def test_criterion_9_closed_form_audit(report):
    temps = (1.0, 2.0, 5.0, 10.0, 20.0)
    gaps = [audit_well(WellGeometry(1.0), UNIT, T, Corrections()).relative_gap for T in temps]
    decreasing = all(a > b for a, b in zip(gaps, gaps[1:]))
    flagged = True
    for alpha in np.concatenate(([0.0], np.geomspace(1.0, 1e41, 42))):
        for p, w in ((PhysicalParams.natural(alpha=alpha), 4.0),
                     (PhysicalParams.si(alpha=alpha), 5.236e11)):
            for T in temps:
                flagged &= not z_ho_closed(OscillatorGeometry(w), p, T).real
    ok = decreasing and flagged
    assert report(9, "closed-form audit", ok,
                  "well gaps " + ", ".join(f"{g:.3g}" for g in gaps)
                  + f"; oscillator non-real flagged for all alpha={flagged}")
