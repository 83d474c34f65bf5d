"""Coupled world step and full-horizon simulation.

The step kernel operates on per-region numpy arrays with an optional
leading batch axis, so a single code path serves the spec-level
`world_step` (lists of states and actions in, lists out), the recorded
CLI run, and the batched candidate evaluation used by the policy
optimizer. All reductions are elementwise or along the region axis in a
fixed order, which keeps batched and unbatched evaluations bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .climate import ClimateParams, ClimateState, climate_step
from .econ import Action, RegionParams, RegionState
from .negotiation import Grouping, MitigationFloorTable, accept_mask
from .reward import RewardParams, _crra


@dataclass(frozen=True)
class RegionTable:
    """Column-oriented view of the per-region parameters."""

    ids: tuple[int, ...]
    labels: tuple[str, ...]
    continents: tuple[str, ...]
    K0: np.ndarray
    L0: np.ndarray
    A0: np.ndarray
    gL: np.ndarray
    gA: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray
    sigma0: np.ndarray
    gSigma: np.ndarray
    theta1: np.ndarray
    theta2: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray

    @property
    def n(self) -> int:
        return len(self.ids)

    @classmethod
    def from_params(cls, params: Sequence[RegionParams]) -> "RegionTable":
        def col(name):
            return np.asarray([float(getattr(p, name)) for p in params])

        return cls(
            ids=tuple(p.id for p in params),
            labels=tuple(p.label for p in params),
            continents=tuple(p.continent for p in params),
            K0=col("K0"), L0=col("L0"), A0=col("A0"),
            gL=col("gL"), gA=col("gA"),
            gamma=col("gamma"), delta=col("delta"),
            sigma0=col("sigma0"), gSigma=col("gSigma"),
            theta1=col("theta1"), theta2=col("theta2"),
            a1=col("a1"), a2=col("a2"),
            alpha=col("alpha"), beta=col("beta"),
        )


def _reward_kernel(C, L, alpha, s, qnet, omega):
    """Augmented reward on arrays; identical math to `reward.augmented_reward`."""
    u = _crra(C, L, alpha)
    if np.ndim(omega) == 0 and omega == 0.0:
        return u
    invest = s * np.asarray(qnet)
    blended = (1.0 - omega) * u + omega * _crra(C + invest, L, alpha)
    return np.where(invest == 0.0, u, blended)


@dataclass
class StepOutputs:
    """Diagnostics of one executed step, shaped (..., regions)."""

    Q: np.ndarray
    d: np.ndarray
    lam: np.ndarray
    Qnet: np.ndarray
    E: np.ndarray
    e_global: np.ndarray
    C: np.ndarray
    U: np.ndarray
    r: np.ndarray
    infeasible: np.ndarray


def _econ_core(tb: RegionTable, K, L, A, sigma, tAT, s, mu, exports_t, reward: RewardParams):
    """All within-step regional quantities given executed actions."""
    t_at = np.asarray(tAT)[..., None]
    Q = A * K**tb.gamma * L ** (1.0 - tb.gamma)
    d = np.clip(tb.a1 * t_at + tb.a2 * t_at * t_at, 0.0, 1.0)
    lam = tb.theta1 * mu**tb.theta2
    qnet = Q * (1.0 - d) * (1.0 - lam)
    e = sigma * (1.0 - mu) * Q
    e_global = np.sum(e, axis=-1)
    c_raw = (1.0 - s) * qnet - exports_t
    infeasible = c_raw < reward.epsilon_c
    c = np.where(infeasible, reward.epsilon_c, c_raw)
    u = _crra(c, L, tb.alpha)
    r = _reward_kernel(c, L, tb.alpha, s, qnet, reward.omega)
    return StepOutputs(Q=Q, d=d, lam=lam, Qnet=qnet, E=e, e_global=e_global,
                       C=c, U=u, r=r, infeasible=infeasible)


class StepContext:
    """Snapshot of the world at the start of a step, before floors resolve.

    Provides the quantities the negotiation protocol needs, in particular
    `lookahead_scores`: the target's reward this step plus its discounted
    reward one step ahead, under a candidate mitigation rate this step and
    its intended action next step, with everyone else playing as intended.
    """

    def __init__(self, t, horizon, table, climate_params, reward, K, L, A, sigma,
                 climate, intended_s, intended_mu, next_s, next_mu,
                 exports_t, exports_next, base_floors):
        self.t = t
        self.horizon = horizon
        self.table = table
        self.climate_params = climate_params
        self.reward = reward
        self.K, self.L, self.A, self.sigma = K, L, A, sigma
        self.climate = climate
        self.intended_s_arr = intended_s
        self.intended_mu_arr = intended_mu
        self.next_s = next_s
        self.next_mu = next_mu
        self.exports_t = exports_t
        self.exports_next = exports_next
        self.base_floors = base_floors
        tb = table
        t_at = np.asarray(climate.tAT)[..., None]
        # Production and damage do not depend on the step's actions.
        self.Q = A * K**tb.gamma * L ** (1.0 - tb.gamma)
        self.d = np.clip(tb.a1 * t_at + tb.a2 * t_at * t_at, 0.0, 1.0)
        self.E_intended = sigma * (1.0 - intended_mu) * self.Q
        self.e_global_intended = np.sum(self.E_intended, axis=-1)

    def current_floor(self, region_id: int) -> float:
        return float(self.base_floors[region_id - 1])

    def intended_mu(self, region_id: int) -> float:
        return float(np.asarray(self.intended_mu_arr)[..., region_id - 1])

    def lookahead_scores(self, region_id: int, mus) -> np.ndarray:
        idx = np.full(len(mus), region_id - 1)
        return self.lookahead_scores_idx(idx, np.asarray(mus, dtype=float))

    def lookahead_scores_idx(self, target_idx, mus):
        """Vectorized lookahead for targets ``target_idx`` (0-based, shape
        (P,)) each evaluated at candidate rates ``mus`` (shape (..., P))."""
        tb = self.table
        j = target_idx
        rw = self.reward
        eps = rw.epsilon_c
        q0 = self.Q[..., j]
        d0 = self.d[..., j]
        lam0 = tb.theta1[j] * mus ** tb.theta2[j]
        qn0 = q0 * (1.0 - d0) * (1.0 - lam0)
        s0 = self.intended_s_arr[..., j]
        c0_raw = (1.0 - s0) * qn0 - self.exports_t[j]
        c0 = np.where(c0_raw < eps, eps, c0_raw)
        l0 = self.L[..., j]
        r0 = _reward_kernel(c0, l0, tb.alpha[j], s0, qn0, rw.omega)
        if self.t + 1 >= self.horizon:
            return r0
        # Climate response to the changed emissions of the target alone.
        e_others = self.e_global_intended[..., None] - self.E_intended[..., j]
        e_g = e_others + self.sigma[..., j] * (1.0 - mus) * q0
        b = self.climate_params.transfer
        c = self.climate
        m_at = np.asarray(c.mAT)[..., None]
        m_up = np.asarray(c.mUP)[..., None]
        m_lo = np.asarray(c.mLO)[..., None]
        t_at = np.asarray(c.tAT)[..., None]
        t_lo = np.asarray(c.tLO)[..., None]
        m_at1 = b[0][0] * m_at + b[0][1] * m_up + b[0][2] * m_lo + e_g
        # A hypothetical branch may drive the atmosphere nonpositive; its
        # score then propagates as NaN and the acceptance rule treats the
        # comparison as false, so the warnings are suppressed rather than
        # raised here.
        with np.errstate(all="ignore"):
            forcing = self.climate_params.forcing_coeff * np.log2(
                m_at1 / self.climate_params.preindustrial_carbon
            )
            tp = self.climate_params.temp
            t_at1 = t_at + tp.c1 * (forcing - tp.lam * t_at - tp.c3 * (t_at - t_lo))
            # Target's own stocks one step ahead under the candidate.
            k1 = (1.0 - tb.delta[j]) * self.K[..., j] + s0 * qn0
            l1 = l0 * (1.0 + tb.gL[j])
            a1 = self.A[..., j] * (1.0 + tb.gA[j])
            q1 = a1 * k1 ** tb.gamma[j] * l1 ** (1.0 - tb.gamma[j])
            d1 = np.clip(tb.a1[j] * t_at1 + tb.a2[j] * t_at1 * t_at1, 0.0, 1.0)
            s1 = self.next_s[..., j]
            mu1 = self.next_mu[..., j]
            lam1 = tb.theta1[j] * mu1 ** tb.theta2[j]
            qn1 = q1 * (1.0 - d1) * (1.0 - lam1)
            c1_raw = (1.0 - s1) * qn1 - self.exports_next[j]
            c1 = np.where(c1_raw < eps, eps, c1_raw)
            r1 = _reward_kernel(c1, l1, tb.alpha[j], s1, qn1, rw.omega)
        return r0 + tb.beta[j] * r1


@dataclass
class CompiledScenario:
    """Everything `run_simulation` needs, with parameters in array form."""

    table: RegionTable
    climate_params: ClimateParams
    initial_climate: ClimateState
    grouping: Grouping
    base_floors: MitigationFloorTable
    reward: RewardParams
    horizon: int
    exports: np.ndarray  # (horizon, regions)
    # Negotiation pair indexing, sorted by target then proposer.
    prop_idx: np.ndarray
    targ_idx: np.ndarray
    seg_starts: np.ndarray
    seg_targets: np.ndarray

    @property
    def n(self) -> int:
        return self.table.n


def compile_scenario(regions: Sequence[RegionParams], climate_params: ClimateParams,
                     initial_climate: ClimateState, grouping: Grouping,
                     base_floors: MitigationFloorTable, reward: RewardParams,
                     horizon: int) -> CompiledScenario:
    table = RegionTable.from_params(regions)
    exports = np.stack([p.exports_series(horizon) for p in regions], axis=-1) \
        if horizon > 0 else np.zeros((0, table.n))
    pairs = []
    for group in grouping.groups:
        for target in group:
            for proposer in group:
                if proposer != target:
                    pairs.append((proposer - 1, target - 1))
    pairs.sort(key=lambda pt: (pt[1], pt[0]))
    prop_idx = np.asarray([p for p, _ in pairs], dtype=int)
    targ_idx = np.asarray([t for _, t in pairs], dtype=int)
    seg_starts = []
    seg_targets = []
    for k, t in enumerate(targ_idx):
        if not seg_targets or t != seg_targets[-1]:
            seg_starts.append(k)
            seg_targets.append(int(t))
    return CompiledScenario(
        table=table, climate_params=climate_params, initial_climate=initial_climate,
        grouping=grouping, base_floors=base_floors, reward=reward, horizon=horizon,
        exports=exports,
        prop_idx=prop_idx, targ_idx=targ_idx,
        seg_starts=np.asarray(seg_starts, dtype=int),
        seg_targets=np.asarray(seg_targets, dtype=int),
    )


def negotiate_floors(ctx: StepContext, scn: CompiledScenario) -> np.ndarray:
    """One proposals/decisions/resolution round, vectorized over pairs.

    Implements exactly the object-level protocol: every region proposes
    its intended mitigation rate to its group peers; targets apply
    `negotiation.accept_mask`; effective floors are the pointwise max of
    the base table and accepted requests.
    """
    base = scn.base_floors.as_array()
    batch = np.shape(ctx.intended_mu_arr)[:-1]
    if len(scn.prop_idx) == 0:
        return np.broadcast_to(base, batch + (scn.n,)).copy()
    requested = ctx.intended_mu_arr[..., scn.prop_idx]
    target_intended = ctx.intended_mu_arr[..., scn.targ_idx]
    cand = np.maximum(target_intended, requested)
    sc_cand = ctx.lookahead_scores_idx(scn.targ_idx, cand)
    sc_int = ctx.lookahead_scores_idx(scn.targ_idx, target_intended)
    accepted = accept_mask(requested, base[scn.targ_idx], sc_cand, sc_int)
    raises = np.where(accepted, requested, 0.0)
    seg_max = np.maximum.reduceat(raises, scn.seg_starts, axis=-1)
    eff = np.broadcast_to(base, batch + (scn.n,)).copy()
    eff[..., scn.seg_targets] = np.maximum(eff[..., scn.seg_targets], seg_max)
    return eff


def world_step(states: Sequence[RegionState], climate: ClimateState,
               actions: Sequence[Action], floors: MitigationFloorTable | None,
               region_params: Sequence[RegionParams], climate_params: ClimateParams,
               reward_params: RewardParams, t: int = 0):
    """Advance every region and the shared climate by one step.

    Actions are clamped to ``floors`` when a table is given. Returns
    ``(new_states, new_climate, rewards)`` with rewards as a numpy array
    ordered like ``states``.
    """
    if not (len(states) == len(actions) == len(region_params)):
        raise ValueError("states, actions and region_params must have equal length")
    tb = RegionTable.from_params(region_params)
    K = np.asarray([st.K for st in states], dtype=float)
    L = np.asarray([st.L for st in states], dtype=float)
    A = np.asarray([st.A for st in states], dtype=float)
    sigma = np.asarray([st.sigma for st in states], dtype=float)
    s = np.asarray([a.s for a in actions], dtype=float)
    mu = np.asarray([a.mu for a in actions], dtype=float)
    if floors is not None:
        mu = np.maximum(mu, floors.as_array())
    exports_t = np.asarray([p.exports_at(t) for p in region_params], dtype=float)
    out = _econ_core(tb, K, L, A, sigma, climate.tAT, s, mu, exports_t, reward_params)
    new_climate = climate_step(climate, out.e_global, climate_params)
    new_K = (1.0 - tb.delta) * K + s * out.Qnet
    new_states = [
        RegionState(
            K=float(new_K[i]),
            L=float(L[i] * (1.0 + tb.gL[i])),
            A=float(A[i] * (1.0 + tb.gA[i])),
            sigma=float(sigma[i] * (1.0 - tb.gSigma[i])),
        )
        for i in range(tb.n)
    ]
    return new_states, new_climate, out.r


@dataclass
class RunRecord:
    """Per-step, per-region time series of one recorded simulation."""

    region_ids: tuple[int, ...]
    horizon: int
    K: np.ndarray
    L: np.ndarray
    A: np.ndarray
    Q: np.ndarray
    Qnet: np.ndarray
    E: np.ndarray
    C: np.ndarray
    s: np.ndarray
    mu: np.ndarray
    floor: np.ndarray
    U: np.ndarray
    r: np.ndarray
    infeasible: np.ndarray
    mAT: np.ndarray
    tAT: np.ndarray

    COLUMNS = ("t", "regionId", "K", "L", "A", "Q", "Qnet", "E", "C", "s", "mu",
               "floor", "U", "r", "infeasible", "mAT", "tAT")

    def rows(self):
        """Rows in the documented column order, t-major then region."""
        for t in range(self.horizon):
            for i, rid in enumerate(self.region_ids):
                yield (t, rid, self.K[t, i], self.L[t, i], self.A[t, i],
                       self.Q[t, i], self.Qnet[t, i], self.E[t, i], self.C[t, i],
                       self.s[t, i], self.mu[t, i], self.floor[t, i],
                       self.U[t, i], self.r[t, i], int(self.infeasible[t, i]),
                       self.mAT[t], self.tAT[t])


@dataclass
class SimResult:
    """Outcome of a full-horizon simulation."""

    returns: np.ndarray
    cumulative_emissions: np.ndarray
    final_tAT: np.ndarray
    infeasible_count: np.ndarray
    record: RunRecord | None = None


def run_simulation(scn: CompiledScenario, s_sched: np.ndarray, mu_sched: np.ndarray,
                   record: bool = False) -> SimResult:
    """Simulate the full horizon under intended action schedules.

    ``s_sched`` and ``mu_sched`` are shaped (horizon, ..., regions); any
    middle axes are independent batch evaluations. Floors are re-resolved
    through the negotiation protocol every step and actions clamped
    before execution.
    """
    tb = scn.table
    n = tb.n
    horizon = scn.horizon
    batch = np.shape(mu_sched)[1:-1] if horizon > 0 else ()
    if record and batch:
        raise ValueError("recording is only supported for unbatched simulations")

    K = np.broadcast_to(tb.K0, batch + (n,)).astype(float).copy()
    L = np.broadcast_to(tb.L0, batch + (n,)).astype(float).copy()
    A = np.broadcast_to(tb.A0, batch + (n,)).astype(float).copy()
    sigma = np.broadcast_to(tb.sigma0, batch + (n,)).astype(float).copy()
    climate = scn.initial_climate

    returns = np.zeros(batch + (n,))
    beta_pow = np.ones(batch + (n,))
    cum_e = np.zeros(batch)
    infeasible_count = np.zeros(batch, dtype=int)

    rec = None
    if record:
        shape = (horizon, n)
        rec = RunRecord(
            region_ids=tb.ids, horizon=horizon,
            K=np.zeros(shape), L=np.zeros(shape), A=np.zeros(shape),
            Q=np.zeros(shape), Qnet=np.zeros(shape), E=np.zeros(shape),
            C=np.zeros(shape), s=np.zeros(shape), mu=np.zeros(shape),
            floor=np.zeros(shape), U=np.zeros(shape), r=np.zeros(shape),
            infeasible=np.zeros(shape, dtype=bool),
            mAT=np.zeros(horizon), tAT=np.zeros(horizon),
        )

    for t in range(horizon):
        s_t = np.asarray(s_sched[t], dtype=float)
        mu_t = np.asarray(mu_sched[t], dtype=float)
        last = t + 1 >= horizon
        ctx = StepContext(
            t=t, horizon=horizon, table=tb, climate_params=scn.climate_params,
            reward=scn.reward, K=K, L=L, A=A, sigma=sigma, climate=climate,
            intended_s=s_t, intended_mu=mu_t,
            next_s=None if last else np.asarray(s_sched[t + 1], dtype=float),
            next_mu=None if last else np.asarray(mu_sched[t + 1], dtype=float),
            exports_t=scn.exports[t],
            exports_next=None if last else scn.exports[t + 1],
            base_floors=scn.base_floors.as_array(),
        )
        eff_floors = negotiate_floors(ctx, scn)
        mu_x = np.maximum(mu_t, eff_floors)
        out = _econ_core(tb, K, L, A, sigma, climate.tAT, s_t, mu_x,
                         scn.exports[t], scn.reward)
        if rec is not None:
            rec.K[t], rec.L[t], rec.A[t] = K, L, A
            rec.Q[t], rec.Qnet[t], rec.E[t] = out.Q, out.Qnet, out.E
            rec.C[t], rec.s[t], rec.mu[t] = out.C, s_t, mu_x
            rec.floor[t] = eff_floors
            rec.U[t], rec.r[t] = out.U, out.r
            rec.infeasible[t] = out.infeasible
            rec.mAT[t], rec.tAT[t] = climate.mAT, climate.tAT
        new_climate = climate_step(climate, out.e_global, scn.climate_params)
        K = (1.0 - tb.delta) * K + s_t * out.Qnet
        L = L * (1.0 + tb.gL)
        A = A * (1.0 + tb.gA)
        sigma = sigma * (1.0 - tb.gSigma)
        climate = new_climate
        returns = returns + beta_pow * out.r
        beta_pow = beta_pow * tb.beta
        cum_e = cum_e + out.e_global
        infeasible_count = infeasible_count + np.sum(out.infeasible, axis=-1)

    return SimResult(
        returns=returns,
        cumulative_emissions=cum_e,
        final_tAT=np.asarray(climate.tAT, dtype=float),
        infeasible_count=infeasible_count,
        record=rec,
    )
