"""
Barrier-insertion cycle on an infinite well
===========================================

Inserting a barrier at the midpoint of a box of full width 2L leaves only the
even levels of the parent box, each now doubly degenerate. The Stirling cycle
uses that as its "volume" change.

This script shows why an electron in a nanometre box is a ground-state
engine at kelvin temperatures: beta * E1 is large, so the efficiency pins to
the Carnot value.
"""

# %%
import numpy as np

from qstirling import (Corrections, Medium, PhysicalParams, SpectrumModel,
                       WellGeometry)
from qstirling.cycle import run_stirling, well_cycle
from qstirling.params import length_to_natural

p = PhysicalParams.natural()  # electron mass by default
L = length_to_natural(5e-9)   # half width

# %%
# Level tables: the double well is the parent's even levels, degeneracy 2
geom = WellGeometry(2 * L)
well = SpectrumModel(Medium.WELL, geom, p)
double = SpectrumModel(Medium.DOUBLE_WELL, geom, p)
n = np.arange(1, 6)
print("parent E_2n :", well.energies(n * 2))
print("double E_n  :", double.energies(n))
print("degeneracies:", double.degeneracies(n))

# %%
# How deep in the ground state are we?
for T in (1.0, 2.0):
    print(f"T={T}: beta*E1 = {well.energies(np.array([1]))[0] / T:.2f}")

# %%
# The cycle, textbook and fully corrected
for name, corr in [("textbook", Corrections()),
                   ("ncgup-full", Corrections.preset("ncgup-full"))]:
    r = run_stirling(well_cycle(p.with_alpha(1e41), L, 2.0, 1.0, corr))
    print(f"{name:10s} W={r.W:.6e}  eta={r.eta:.15f}")

# %%
# Heavier particles leave the ground-state regime; eta falls steeply and
# turns negative (no longer an engine) near 95 electron masses
for k in (20, 50, 68, 80, 120):
    heavy = PhysicalParams.natural(m=k * p.m)
    r = run_stirling(well_cycle(heavy, L, 2.0, 1.0))
    print(f"m = {k:3d} m_e: eta = {r.eta:.4f}")
