"""Bundled example scenarios.

`example27` is the shipped 27-region instance with heterogeneous damage,
emission-intensity and preference parameters. The small canonical
instances are shared by tests and demos: they are deliberately tuned so
that saving is myopically unattractive (capital returns below the
discount hurdle), which makes the savings-credit weight omega the
decisive lever for the optimized savings rate.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .climate import ClimateParams, ClimateState, TempDynamics
from .config import ScenarioConfig, parse_config, validate_config
from .econ import RegionParams
from .optimize import OptimizerConfig
from .reward import RewardParams

_SIMPLE_CLIMATE = ClimateParams(
    transfer=(
        (0.976, 0.0392, 0.0),
        (0.024, 0.9594, 0.000293),
        (0.0, 0.0014, 0.999707),
    ),
    forcing_coeff=3.6813,
    preindustrial_carbon=588.0,
    temp=TempDynamics(c1=0.0201, lam=1.1875, c3=0.088, c4=0.005),
)

_SIMPLE_INITIAL = ClimateState(mAT=851.0, mUP=460.0, mLO=1740.0, tAT=1.1, tLO=0.27)


def example27_path() -> Path:
    """Filesystem path of the bundled 27-region scenario JSON."""
    return Path(resources.files("climneg").joinpath("data/example27.json"))


def load_example27() -> ScenarioConfig:
    doc = json.loads(example27_path().read_text())
    return validate_config(parse_config(doc))


def single_region_scenario(omega: float = 0.0, horizon: int = 10,
                           floor: float = 0.0) -> ScenarioConfig:
    """Canonical one-region instance.

    Capital is abundant relative to output, so the marginal product of
    capital sits below depreciation plus discounting and saving never
    pays off through the dynamics alone within the horizon.
    """
    region = RegionParams(
        id=1, label="solo", continent="pangea",
        K0=200.0, L0=100.0, A0=1.2, gL=0.0, gA=0.0,
        gamma=0.3, delta=0.1, sigma0=0.001, gSigma=0.0,
        theta1=0.05, theta2=2.6, a1=0.0, a2=0.003,
        exports=0.0, alpha=1.45, beta=0.95,
    )
    return validate_config(ScenarioConfig(
        regions=(region,),
        climate=_SIMPLE_CLIMATE,
        initial_climate=_SIMPLE_INITIAL,
        adjacency=(),
        floor_regime="custom",
        custom_floors=(floor,),
        reward=RewardParams(alpha=1.45, omega=omega, beta=0.95),
        optimizer=OptimizerConfig(s_grid=11, mu_grid=11, max_rounds=30, tol=1e-6),
        horizon=horizon,
    ))


def two_region_scenario(omega: float = 0.0, horizon: int = 3,
                        symmetric: bool = False) -> ScenarioConfig:
    """Canonical two-region instance on a shared continent edge.

    With ``symmetric`` both regions are identical (useful for symmetry
    checks); otherwise region 2 is smaller, dirtier and more exposed to
    damages. Grids are 5x5 to keep exhaustive verification cheap.
    """
    r1 = RegionParams(
        id=1, label="north", continent="pangea",
        K0=300.0, L0=120.0, A0=1.5, gL=0.002, gA=0.01,
        gamma=0.3, delta=0.08, sigma0=0.004, gSigma=0.005,
        theta1=0.06, theta2=2.6, a1=0.0, a2=0.004,
        exports=0.0, alpha=1.45, beta=0.95,
    )
    if symmetric:
        r2 = RegionParams(
            id=2, label="south", continent="pangea",
            K0=300.0, L0=120.0, A0=1.5, gL=0.002, gA=0.01,
            gamma=0.3, delta=0.08, sigma0=0.004, gSigma=0.005,
            theta1=0.06, theta2=2.6, a1=0.0, a2=0.004,
            exports=0.0, alpha=1.45, beta=0.95,
        )
        floors = (0.25, 0.25)
    else:
        r2 = RegionParams(
            id=2, label="south", continent="pangea",
            K0=120.0, L0=80.0, A0=1.1, gL=0.004, gA=0.012,
            gamma=0.32, delta=0.09, sigma0=0.009, gSigma=0.004,
            theta1=0.09, theta2=2.7, a1=0.001, a2=0.008,
            exports=1.0, alpha=1.45, beta=0.95,
        )
        floors = (0.25, 0.5)
    return validate_config(ScenarioConfig(
        regions=(r1, r2),
        climate=_SIMPLE_CLIMATE,
        initial_climate=_SIMPLE_INITIAL,
        adjacency=((1, 2),),
        floor_regime="custom",
        custom_floors=floors,
        reward=RewardParams(alpha=1.45, omega=omega, beta=0.95),
        optimizer=OptimizerConfig(s_grid=5, mu_grid=5, max_rounds=20, tol=1e-6),
        horizon=horizon,
    ))
