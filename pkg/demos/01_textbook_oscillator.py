"""
Textbook oscillator Stirling cycle
==================================

A harmonic oscillator is held at frequency ``omega`` while it takes heat
from a hot bath, switched to ``omega_prime`` at constant temperature, cooled
at fixed frequency, then switched back. With no corrections the partition
function is a geometric series, so every number here can be checked by hand.

Natural units throughout: hbar = c = k_B = 1, energies in k_B * 1 K.
"""

# %%
# Parameters
import math

from qstirling import PhysicalParams, partition_sum
from qstirling.cycle import oscillator_cycle, run_stirling

p = PhysicalParams.natural()
omega, omega_prime = 4.0, 3.0
T_hot, T_cold = 2.0, 1.0

# %%
# One partition sum, compared with e^{-x/2} / (1 - e^{-x}) for x = omega / T
from qstirling import Medium, OscillatorGeometry, SpectrumModel

model = SpectrumModel(Medium.OSCILLATOR, OscillatorGeometry(omega), p)
res = partition_sum(model, T_hot)
x = omega / T_hot
print(res.summary())
print("geometric series:", math.exp(-x / 2) / (1 - math.exp(-x)))

# %%
# The full cycle
cyc = run_stirling(oscillator_cycle(p, omega, omega_prime, T_hot, T_cold))
for k in ("Q_AB", "Q_BC", "Q_CD", "Q_DA", "W"):
    print(f"{k:5s} {getattr(cyc, k): .12f}")
print(f"eta   {cyc.eta:.12f}   (Carnot {cyc.eta_carnot:.3f})")

# %%
# Efficiency stays under Carnot across a temperature grid
import numpy as np

worst = -np.inf
for th in np.linspace(1.5, 20, 8):
    for tc in np.linspace(0.5, th * 0.95, 8):
        r = run_stirling(oscillator_cycle(p, omega, omega_prime, th, tc))
        if r.eta is not None:
            worst = max(worst, r.eta - r.eta_carnot)
print("max(eta - eta_carnot) =", worst)
