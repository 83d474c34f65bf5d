"""Regenerate the bundled 27-region example scenario.

Values are illustrative, drawn once from a seeded RNG and committed as
static data; rerunning this script reproduces the same file.
"""

import json
from pathlib import Path

import numpy as np

from climneg.climate import ClimateParams, ClimateState, TempDynamics
from climneg.config import ScenarioConfig, validate_config
from climneg.econ import RegionParams
from climneg.optimize import OptimizerConfig
from climneg.reward import RewardParams

CONTINENTS = [
    ("africa", 5), ("asia", 6), ("europe", 6),
    ("north_america", 4), ("south_america", 3), ("oceania", 3),
]

rng = np.random.default_rng(20270412)


def r(lo, hi, nd=4):
    return round(float(rng.uniform(lo, hi)), nd)


regions = []
rid = 0
for continent, count in CONTINENTS:
    for k in range(1, count + 1):
        rid += 1
        L0 = round(float(rng.uniform(8, 900)), 1)
        A0 = r(1.5, 6.0, 3)
        K0 = round(0.6 * A0 * L0 ** 0.85 * float(rng.uniform(0.6, 1.6)), 1)
        # Emission intensity: dirtier in a few industrializing regions.
        sigma0 = r(0.0006, 0.0030, 6)
        # Damage exposure: higher for oceania/africa rows to mimic the
        # uneven regional burden of warming.
        hi_damage = continent in ("oceania", "africa")
        a2 = r(0.004 if hi_damage else 0.002, 0.012 if hi_damage else 0.007, 5)
        a1 = r(0.0, 0.002, 5) if rng.uniform() < 0.3 else 0.0
        exports = round(0.004 * A0 * L0, 3) if rng.uniform() < 0.3 else 0.0
        alpha = 1.45
        if rid == 7:
            alpha = 1.2
        elif rid == 16:
            alpha = 1.0  # exercises the log-utility branch
        elif rid == 21:
            alpha = 2.0
        regions.append(RegionParams(
            id=rid, label=f"{continent}-{k}", continent=continent,
            K0=K0, L0=L0, A0=A0,
            gL=r(0.002, 0.012), gA=r(0.008, 0.02),
            gamma=r(0.28, 0.34), delta=r(0.06, 0.1),
            sigma0=sigma0, gSigma=r(0.005, 0.015),
            theta1=r(0.04, 0.12), theta2=r(2.6, 2.8, 3),
            a1=a1, a2=a2,
            exports=exports, alpha=alpha, beta=0.98,
        ))

# Within-continent chains plus a few extra links; three cross-continent
# edges that the grouping rule must drop.
adjacency = []
start = 1
for continent, count in CONTINENTS:
    ids = list(range(start, start + count))
    for a, b in zip(ids, ids[1:]):
        adjacency.append((a, b))
    if count >= 4:
        adjacency.append((ids[0], ids[2]))
    start += count
adjacency += [(5, 6), (17, 18), (24, 25)]  # cross-continent, dropped by grouping

climate = ClimateParams(
    transfer=(
        (0.976, 0.0392, 0.0),
        (0.024, 0.9594, 0.000293),
        (0.0, 0.0014, 0.999707),
    ),
    forcing_coeff=3.6813,
    preindustrial_carbon=588.0,
    temp=TempDynamics(c1=0.0201, lam=1.1875, c3=0.088, c4=0.005),
)

config = validate_config(ScenarioConfig(
    regions=tuple(regions),
    climate=climate,
    initial_climate=ClimateState(mAT=851.0, mUP=460.0, mLO=1740.0, tAT=1.1, tLO=0.27),
    adjacency=tuple(adjacency),
    floor_regime="uniform",
    custom_floors=None,
    reward=RewardParams(alpha=1.45, omega=0.0, beta=0.98, epsilon_c=1e-9),
    optimizer=OptimizerConfig(s_grid=7, mu_grid=11, max_rounds=12, tol=1e-6),
    horizon=25,
    seed=0,
))

out = Path(__file__).resolve().parents[1] / "src" / "climneg" / "data" / "example27.json"
out.write_text(json.dumps(config.to_dict(), indent=2) + "\n")
print(f"wrote {out}")
