"""Global carbon cycle and temperature dynamics.

Three carbon reservoirs (atmosphere, upper ocean, lower ocean) exchange
mass through a column-stochastic transfer matrix; industrial emissions
are injected into the atmosphere. Temperature follows a two-layer
(atmosphere / deep ocean) update driven by log2 radiative forcing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError

COLUMN_SUM_TOL = 1e-12


@dataclass(frozen=True)
class TempDynamics:
    """Two-layer temperature coefficients.

    c1: step gain on the atmospheric layer, lam: radiative feedback
    (W/m^2/K), c3: atmosphere-to-ocean heat exchange, c4: deep-ocean
    uptake rate.
    """

    c1: float
    lam: float
    c3: float
    c4: float

    def violations(self, prefix: str = "") -> list[str]:
        out = []
        for field in ("c1", "lam", "c3", "c4"):
            value = getattr(self, field)
            if not np.isfinite(value) or value < 0:
                out.append(f"{prefix}{field}: must be finite and >= 0, got {value!r}")
        return out


@dataclass(frozen=True)
class ClimateParams:
    """Carbon transfer matrix plus forcing and temperature coefficients.

    ``transfer`` is stored row-major with rows = destination reservoir
    (atmosphere, upper ocean, lower ocean); each *column* must sum to 1
    so that mass is conserved.
    """

    transfer: tuple[tuple[float, float, float], ...]
    forcing_coeff: float
    preindustrial_carbon: float
    temp: TempDynamics

    def violations(self, prefix: str = "") -> list[str]:
        out = []
        m = np.asarray(self.transfer, dtype=float)
        if m.shape != (3, 3):
            out.append(f"{prefix}transfer: must be 3x3, got shape {m.shape}")
            return out
        if np.any(~np.isfinite(m)) or np.any(m < 0) or np.any(m > 1):
            out.append(f"{prefix}transfer: all entries must lie in [0, 1]")
        for j, colsum in enumerate(m.sum(axis=0)):
            if abs(colsum - 1.0) > COLUMN_SUM_TOL:
                out.append(
                    f"{prefix}transfer: column {j} sums to {colsum!r}, "
                    f"must be 1 within {COLUMN_SUM_TOL}"
                )
        if not np.isfinite(self.forcing_coeff) or self.forcing_coeff <= 0:
            out.append(f"{prefix}forcingCoeff: must be finite and > 0")
        if not np.isfinite(self.preindustrial_carbon) or self.preindustrial_carbon <= 0:
            out.append(f"{prefix}preindustrialCarbon: must be finite and > 0")
        out.extend(self.temp.violations(prefix + "tempParams."))
        return out


@dataclass(frozen=True)
class ClimateState:
    """Reservoir carbon masses (GtC) and layer temperature anomalies (degC).

    Fields hold floats in scalar use and numpy arrays when a batch of
    alternative trajectories is stepped at once.
    """

    mAT: float
    mUP: float
    mLO: float
    tAT: float
    tLO: float

    def total_carbon(self):
        return self.mAT + self.mUP + self.mLO


def climate_step(c: ClimateState, e_global, p: ClimateParams) -> ClimateState:
    """Advance the climate one step after injecting ``e_global`` GtC.

    The carbon update is written out elementwise (no matrix product) so
    that batched and unbatched evaluations reduce in exactly the same
    order and stay bit-identical.
    """
    b = p.transfer
    m_at = b[0][0] * c.mAT + b[0][1] * c.mUP + b[0][2] * c.mLO + e_global
    m_up = b[1][0] * c.mAT + b[1][1] * c.mUP + b[1][2] * c.mLO
    m_lo = b[2][0] * c.mAT + b[2][1] * c.mUP + b[2][2] * c.mLO
    if np.any(np.asarray(m_at) <= 0):
        raise DivergenceError(f"atmospheric carbon mass fell to {m_at!r} GtC")
    forcing = p.forcing_coeff * np.log2(m_at / p.preindustrial_carbon)
    t = p.temp
    t_at = c.tAT + t.c1 * (forcing - t.lam * c.tAT - t.c3 * (c.tAT - c.tLO))
    t_lo = c.tLO + t.c4 * (c.tAT - c.tLO)
    return ClimateState(mAT=m_at, mUP=m_up, mLO=m_lo, tAT=t_at, tLO=t_lo)
