"""How the savings-credit weight changes what a region chooses to save.

The baseline reward only sees consumption, so saving is pure pain: the
optimizer parks the savings rate at the lowest grid point. Crediting the
invested share of output (omega > 0) makes the same region save.
"""

import numpy as np

from climneg.econ import Action
from climneg.fixtures import single_region_scenario
from climneg.optimize import (Policy, Profile, evaluate_profile,
                              iterated_best_response)

###############################################################################
# The return landscape over the savings grid, before any credit.

cfg = single_region_scenario(omega=0.0)
scn = cfg.compile()
mu_star = 0.0

print("Discounted return as a function of the (constant) savings rate:")
print(f"{'s':>6}  {'omega=0':>12}  {'omega=0.5':>12}")
scn_half = single_region_scenario(omega=0.5).compile()
for s in np.round(np.linspace(0.0, 0.9, 11), 12):
    profile = Profile((Policy.constant(Action(s=float(s), mu=mu_star)),))
    r0 = float(evaluate_profile(profile, scn)[0])
    r5 = float(evaluate_profile(profile, scn_half)[0])
    print(f"{s:>6.2f}  {r0:>12.3f}  {r5:>12.3f}")

###############################################################################
# Let the optimizer pick. With omega=0 it refuses to save; with the
# savings credit switched on, the converged rate moves strictly up.

for omega in (0.0, 0.5):
    cfg = single_region_scenario(omega=omega)
    profile, rounds, converged = iterated_best_response(cfg.compile(), cfg.optimizer)
    act = profile.policies[0].schedule[0]
    print(f"omega={omega}: converged={converged} after {rounds} sweep(s), "
          f"s*={act.s:.2f}, mu*={act.mu:.2f}")
