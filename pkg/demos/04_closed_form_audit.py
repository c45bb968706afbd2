"""
Closed forms against direct sums
================================

The continuum closed form for the well partition function improves as the
temperature rises and more levels contribute. The printed erf-based
oscillator form has an imaginary argument for every physical alpha, and the
audit reports that instead of producing a number.
"""

# %%
from qstirling import Corrections, OscillatorGeometry, PhysicalParams, WellGeometry
from qstirling.oracles import audit_well, erf, z_ho_closed

p = PhysicalParams.natural(m=1.0)
g = WellGeometry(5.0, use_physical_length=False)

# %%
# Relative gap shrinks with T
for T in (1, 2, 5, 10, 20):
    rep = audit_well(g, p, T, Corrections())
    print(f"T={T:3d}  closed={rep.closed_form_value:.6f}  "
          f"direct={rep.direct_sum_value:.6f}  gap={rep.relative_gap:.3e}")

# %%
# Oscillator closed form: flagged non-real
pe = PhysicalParams.natural()
for a in (1e30, 1e35, 1e41):
    rep = z_ho_closed(OscillatorGeometry(4.0), pe.with_alpha(a), 2.0)
    print(f"alpha={a:.0e}  real={rep.real}  notes={rep.regime_notes}")

# %%
# erf itself
for x in (0.5, 1.0, 2.0, 4.0):
    print(x, erf(x))
