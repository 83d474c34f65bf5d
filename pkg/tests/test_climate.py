"""Carbon cycle and temperature dynamics: conservation, fixed points."""

import numpy as np
import pytest

from climneg.climate import (ClimateParams, ClimateState, TempDynamics,
                             climate_step)
from climneg.errors import DivergenceError

IDENTITY = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))

MIXING = (
    (0.976, 0.0392, 0.0),
    (0.024, 0.9594, 0.000293),
    (0.0, 0.0014, 0.999707),
)


def params(transfer=MIXING):
    return ClimateParams(
        transfer=transfer,
        forcing_coeff=3.6813,
        preindustrial_carbon=588.0,
        temp=TempDynamics(c1=0.0201, lam=1.1875, c3=0.088, c4=0.005),
    )


def state(mAT=851.0, mUP=460.0, mLO=1740.0, tAT=1.1, tLO=0.27):
    return ClimateState(mAT=mAT, mUP=mUP, mLO=mLO, tAT=tAT, tLO=tLO)


class TestClimateStep:
    def test_identity_transfer_no_emissions_keeps_carbon(self):
        c0 = state(tAT=0.0, tLO=0.0)
        c1 = climate_step(c0, 0.0, params(IDENTITY))
        assert (c1.mAT, c1.mUP, c1.mLO) == (c0.mAT, c0.mUP, c0.mLO)

    def test_injection_conserves_total_mass(self):
        c0 = state()
        c1 = climate_step(c0, 10.0, params())
        assert c1.total_carbon() == pytest.approx(c0.total_carbon() + 10.0, rel=1e-12)

    def test_preindustrial_equilibrium_is_fixed_point(self):
        # With the identity transfer, zero emissions and m_AT at the
        # preindustrial level, forcing is log2(1) = 0 and equilibrium
        # temperatures (both layers at zero anomaly) stay put.
        c0 = state(mAT=588.0, tAT=0.0, tLO=0.0)
        c1 = climate_step(c0, 0.0, params(IDENTITY))
        assert c1.tAT == 0.0
        assert c1.tLO == 0.0
        assert c1.mAT == 588.0

    def test_divergence_when_atmosphere_empties(self):
        # A column that sends all atmospheric mass away and returns none.
        drain = ((0.0, 0.0, 0.0), (1.0, 1.0, 0.0), (0.0, 0.0, 1.0))
        with pytest.raises(DivergenceError):
            climate_step(state(), 0.0, params(drain))

    def test_warming_increases_with_emissions(self):
        c0 = state(tAT=0.5, tLO=0.1)
        low = climate_step(c0, 0.0, params())
        high = climate_step(c0, 50.0, params())
        assert high.tAT > low.tAT

    def test_conservation_over_many_random_steps(self):
        # Mass accounting drifts by no more than 1e-9 relative over 1000
        # random injections.
        rng = np.random.default_rng(42)
        c = state()
        p = params()
        total0 = c.total_carbon()
        injected = 0.0
        for _ in range(1000):
            e = float(rng.uniform(0.0, 20.0))
            injected += e
            c = climate_step(c, e, p)
        drift = abs(c.total_carbon() - (total0 + injected)) / (total0 + injected)
        assert drift < 1e-9


class TestClimateParamsValidation:
    def test_clean_params_pass(self):
        assert params().violations() == []

    def test_column_sum_violation_reported(self):
        bad = ClimateParams(
            transfer=((0.9, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)),
            forcing_coeff=3.68,
            preindustrial_carbon=588.0,
            temp=TempDynamics(c1=0.02, lam=1.2, c3=0.09, c4=0.005),
        )
        msgs = bad.violations(prefix="climate.")
        assert any("column 0" in m for m in msgs)

    def test_entry_range_violation_reported(self):
        bad = ClimateParams(
            transfer=((1.2, 0.0, 0.0), (-0.2, 1.0, 0.0), (0.0, 0.0, 1.0)),
            forcing_coeff=3.68,
            preindustrial_carbon=588.0,
            temp=TempDynamics(c1=0.02, lam=1.2, c3=0.09, c4=0.005),
        )
        msgs = bad.violations()
        assert any("[0, 1]" in m for m in msgs)
