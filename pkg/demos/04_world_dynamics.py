"""Coupled economy-climate dynamics under fixed policies.

Simulates the bundled 27-region fixture with hand-picked constant
actions and prints the global trajectory digest: emissions, atmospheric
carbon and warming, plus one region's economic path.
"""

import numpy as np

from climneg.fixtures import load_example27
from climneg.world import run_simulation

cfg = load_example27()
scn = cfg.compile()
horizon = cfg.horizon

# Everyone saves 20% and mitigates at whichever is higher: 40% or their
# base floor (the uniform regime pins this at 90%).
s_sched = np.full((horizon, 27), 0.2)
mu_sched = np.maximum(np.full((horizon, 27), 0.4), scn.base_floors.as_array())

result = run_simulation(scn, s_sched, mu_sched, record=True)
rec = result.record

print(f"{'t':>3} {'E_global':>9} {'mAT':>8} {'tAT':>6}")
for t in range(0, horizon, 4):
    print(f"{t:>3} {rec.E[t].sum():>9.2f} {rec.mAT[t]:>8.1f} {rec.tAT[t]:>6.3f}")
print(f"cumulative emissions: {float(result.cumulative_emissions):.1f} GtC, "
      f"final tAT {float(result.final_tAT):.3f} degC, "
      f"infeasible steps {int(result.infeasible_count)}")

# One region's economic series.
pos = 0
print(f"\nregion {scn.table.labels[pos]}:")
print(f"{'t':>3} {'K':>9} {'Q':>9} {'C':>9} {'U':>10}")
for t in range(0, horizon, 4):
    print(f"{t:>3} {rec.K[t, pos]:>9.1f} {rec.Q[t, pos]:>9.1f} "
          f"{rec.C[t, pos]:>9.1f} {rec.U[t, pos]:>10.2f}")
