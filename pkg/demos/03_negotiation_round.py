"""One negotiation round, step by step.

Continental groups form from the adjacency graph; every region offers
its own intended mitigation rate to its group peers; targets accept or
reject by a two-step lookahead of their own reward; accepted requests
raise the effective floors.
"""

import numpy as np

from climneg.econ import Action
from climneg.fixtures import load_example27
from climneg.negotiation import (evaluate_proposals, propose_floors,
                                 resolve_floors)
from climneg.world import StepContext

cfg = load_example27()
scn = cfg.compile()
tb = scn.table

###############################################################################
# Groups are same-continent connected components; cross-continent edges
# in the fixture are dropped.

print("groups:")
for group in scn.grouping.groups:
    labels = ", ".join(tb.labels[rid - 1] for rid in group)
    print(f"  {group}: {labels}")

###############################################################################
# Intended actions for this round: a spread of mitigation ambitions.

rng = np.random.default_rng(1)
s_arr = np.full(27, 0.2)
mu_arr = np.round(rng.uniform(0.1, 1.0, 27), 2)

ctx = StepContext(
    t=0, horizon=scn.horizon, table=tb, climate_params=scn.climate_params,
    reward=scn.reward, K=tb.K0.copy(), L=tb.L0.copy(), A=tb.A0.copy(),
    sigma=tb.sigma0.copy(), climate=scn.initial_climate,
    intended_s=s_arr, intended_mu=mu_arr, next_s=s_arr, next_mu=mu_arr,
    exports_t=scn.exports[0], exports_next=scn.exports[1],
    base_floors=scn.base_floors.as_array(),
)

incoming = {rid: [] for rid in tb.ids}
for rid in tb.ids:
    action = Action(s=float(s_arr[rid - 1]), mu=float(mu_arr[rid - 1]))
    for proposal in propose_floors(rid, scn.grouping, action):
        incoming[proposal.target].append(proposal)

decisions = []
for rid in tb.ids:
    decisions.extend(evaluate_proposals(rid, incoming[rid], ctx))

accepted = [d for d in decisions if d.accepted]
rejected = [d for d in decisions if not d.accepted]
print(f"\n{len(decisions)} proposals exchanged: "
      f"{len(accepted)} accepted, {len(rejected)} rejected")
for d in accepted[:8]:
    p = d.proposal
    print(f"  region {p.target:>2} accepts floor {p.requested_floor:.2f} "
          f"from region {p.proposer} (own intent {mu_arr[p.target - 1]:.2f}, "
          f"base floor {scn.base_floors.floor(p.target):.2f})")

resolved = resolve_floors(decisions, scn.base_floors)
raised = [(rid, scn.base_floors.floor(rid), resolved.floor(rid))
          for rid in tb.ids if resolved.floor(rid) > scn.base_floors.floor(rid)]
print(f"\nfloors raised above the base table: {len(raised)}")
for rid, base, eff in raised:
    print(f"  region {rid:>2}: {base:.2f} -> {eff:.2f}")
