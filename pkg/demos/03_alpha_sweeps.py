"""
Efficiency against the non-commutative parameter
================================================

Sweeps alpha over [1e30, 1e41] on a log grid, with an alpha = 0 anchor row,
for both working media. The well efficiency is flat. The oscillator
efficiency rises slowly with alpha because g = alpha * (m / M_pl)^2 reaches
about 1.75e-4 at the top of the range.

Writes CSV to stdout. Redirect it to a file to plot.
"""

# %%
import sys

import numpy as np

from qstirling.sweep import SweepSpec, emit_csv, run_sweep

# %%
# Oscillator, omega = 4 -> 3
osc = list(run_sweep(SweepSpec(medium="oscillator", steps=12)))
eta = np.array([r.eta for r in osc])
print(f"# oscillator: eta(0) = {eta[0]:.12f}, eta(1e41) = {eta[-1]:.12f}, "
      f"rise = {eta[-1] - eta[0]:.3e}", file=sys.stderr)
print(f"# monotone: {bool(np.all(np.diff(eta) >= -1e-10))}", file=sys.stderr)

# %%
# Well, 5 nm half width
well = list(run_sweep(SweepSpec(medium="well", steps=12)))
eta_w = np.array([r.eta for r in well])
print(f"# well: spread = {np.ptp(eta_w) / abs(eta_w.mean()):.3e}", file=sys.stderr)

# %%
sys.stdout.write(emit_csv(osc))
