"""Regional economy primitives: production, damages, abatement, capital.

All operations accept Python floats or numpy arrays and broadcast
elementwise, so the same functions serve scalar spot checks and the
vectorized multi-region step kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def _require_finite(**values):
    for name, value in values.items():
        if not np.all(np.isfinite(value)):
            raise DomainError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class Action:
    """One step's policy choice: savings rate s and mitigation rate mu."""

    s: float
    mu: float

    def __post_init__(self):
        if not (0.0 <= self.s < 1.0):
            raise DomainError(f"savings rate must lie in [0, 1), got {self.s}")
        if not (0.0 <= self.mu <= 1.0):
            raise DomainError(f"mitigation rate must lie in [0, 1], got {self.mu}")


@dataclass(frozen=True)
class RegionState:
    """Evolving stocks of one region: capital, population, productivity,
    emission intensity."""

    K: float
    L: float
    A: float
    sigma: float


@dataclass(frozen=True)
class RegionParams:
    """Static parameters of one region.

    ``exports`` is either a constant (applied every step) or an explicit
    per-step series; it is consumed, never produced, by the model (no
    trade flows between regions). ``alpha`` is the elasticity of marginal
    utility, ``beta`` the per-step discount factor used for this region's
    return.
    """

    id: int
    label: str
    continent: str
    K0: float
    L0: float
    A0: float
    gL: float
    gA: float
    gamma: float
    delta: float
    sigma0: float
    gSigma: float
    theta1: float
    theta2: float
    a1: float
    a2: float
    exports: float | tuple[float, ...] = 0.0
    alpha: float = 1.45
    beta: float = 0.98

    def initial_state(self) -> RegionState:
        return RegionState(K=self.K0, L=self.L0, A=self.A0, sigma=self.sigma0)

    def exports_at(self, t: int) -> float:
        if isinstance(self.exports, tuple):
            return self.exports[t]
        return self.exports

    def exports_series(self, horizon: int) -> np.ndarray:
        """Per-step export series of length ``horizon``."""
        if isinstance(self.exports, tuple):
            if len(self.exports) < horizon:
                raise DomainError(
                    f"region {self.id}: exports series has {len(self.exports)} "
                    f"entries, horizon is {horizon}"
                )
            return np.asarray(self.exports[:horizon], dtype=float)
        return np.full(horizon, float(self.exports))

    def violations(self, prefix: str = "") -> list[str]:
        """All invariant violations, each prefixed with its field path."""
        out = []

        def bad(field, msg):
            out.append(f"{prefix}{field}: {msg}")

        if not isinstance(self.id, int) or self.id < 1:
            bad("id", f"must be a positive integer, got {self.id!r}")
        if not self.label:
            bad("label", "must be nonempty")
        if not self.continent:
            bad("continent", "must be nonempty")
        checks = [
            ("K0", self.K0 >= 0, "must be >= 0"),
            ("L0", self.L0 > 0, "must be > 0"),
            ("A0", self.A0 > 0, "must be > 0"),
            ("gL", self.gL > -1, "must be > -1 so population stays positive"),
            ("gA", self.gA > -1, "must be > -1 so productivity stays positive"),
            ("gamma", 0 < self.gamma < 1, "must lie in (0, 1)"),
            ("delta", 0 <= self.delta <= 1, "must lie in [0, 1]"),
            ("sigma0", self.sigma0 >= 0, "must be >= 0"),
            ("gSigma", 0 <= self.gSigma <= 1, "must lie in [0, 1]"),
            ("theta1", self.theta1 >= 0, "must be >= 0"),
            ("theta2", self.theta2 > 1, "must be > 1"),
            ("a1", self.a1 >= 0, "must be >= 0"),
            ("a2", self.a2 >= 0, "must be >= 0"),
            ("alpha", self.alpha > 0, "must be > 0"),
            ("beta", 0 < self.beta <= 1, "must lie in (0, 1]"),
        ]
        for field, ok, msg in checks:
            value = getattr(self, field)
            if not np.isfinite(value):
                bad(field, f"must be finite, got {value!r}")
            elif not ok:
                bad(field, f"{msg}, got {value!r}")
        series = self.exports if isinstance(self.exports, tuple) else (self.exports,)
        for t, x in enumerate(series):
            if not np.isfinite(x) or x < 0:
                bad(f"exports[{t}]", f"must be finite and >= 0, got {x!r}")
        return out


def gross_output(A, K, L, gamma):
    """Cobb-Douglas production Q = A * K**gamma * L**(1 - gamma)."""
    _require_finite(A=A, K=K, L=L, gamma=gamma)
    if np.any(np.asarray(A) <= 0) or np.any(np.asarray(K) < 0) or np.any(np.asarray(L) <= 0):
        raise DomainError("gross_output requires A > 0, K >= 0, L > 0")
    return A * K**gamma * L ** (1.0 - gamma)


def damage_fraction(tAT, a1, a2):
    """Fraction of output lost to warming: clamp(a1*T + a2*T^2, 0, 1)."""
    _require_finite(tAT=tAT, a1=a1, a2=a2)
    return np.clip(a1 * tAT + a2 * tAT * tAT, 0.0, 1.0)


def abatement_cost_fraction(mu, theta1, theta2):
    """Fraction of output spent on mitigation: theta1 * mu**theta2."""
    _require_finite(mu=mu, theta1=theta1, theta2=theta2)
    if np.any(np.asarray(mu) < 0) or np.any(np.asarray(mu) > 1):
        raise DomainError(f"mitigation rate must lie in [0, 1], got {mu!r}")
    return theta1 * mu**theta2


def net_output(Q, d, lam):
    """Output net of climate damage and abatement spending."""
    return Q * (1.0 - d) * (1.0 - lam)


def emissions(sigma, mu, Q):
    """Carbon emitted this step: sigma * (1 - mu) * Q."""
    return sigma * (1.0 - mu) * Q


def capital_step(K, s, Qnet, delta):
    """Next-period capital: depreciated stock plus invested net output."""
    return (1.0 - delta) * K + s * Qnet


def exogenous_step(state: RegionState, params: RegionParams) -> RegionState:
    """Advance population, productivity and emission intensity one step.

    Capital is untouched; it evolves through `capital_step`.
    """
    return RegionState(
        K=state.K,
        L=state.L * (1.0 + params.gL),
        A=state.A * (1.0 + params.gA),
        sigma=state.sigma * (1.0 - params.gSigma),
    )
