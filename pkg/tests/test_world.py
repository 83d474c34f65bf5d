"""World step and full-horizon simulation: composition, symmetry,
batch bit-identity, and protocol agreement."""

import math

import numpy as np
import pytest

from climneg.climate import ClimateParams, ClimateState, TempDynamics
from climneg.config import ScenarioConfig, validate_config
from climneg.econ import Action, RegionParams, RegionState
from climneg.fixtures import load_example27, two_region_scenario
from climneg.negotiation import (MitigationFloorTable, evaluate_proposals,
                                 propose_floors, resolve_floors)
from climneg.optimize import OptimizerConfig
from climneg.reward import RewardParams, baseline_utility
from climneg.world import (StepContext, negotiate_floors, run_simulation,
                           world_step)

from test_negotiation import make_context

CLIMATE = ClimateParams(
    transfer=(
        (0.976, 0.0392, 0.0),
        (0.024, 0.9594, 0.000293),
        (0.0, 0.0014, 0.999707),
    ),
    forcing_coeff=3.6813,
    preindustrial_carbon=588.0,
    temp=TempDynamics(c1=0.0201, lam=1.1875, c3=0.088, c4=0.005),
)
CLIMATE0 = ClimateState(mAT=851.0, mUP=460.0, mLO=1740.0, tAT=1.1, tLO=0.27)


def simple_region(rid=1, **overrides):
    base = dict(id=rid, label=f"r{rid}", continent="pangea", K0=200.0, L0=100.0,
                A0=1.5, gL=0.005, gA=0.01, gamma=0.3, delta=0.08, sigma0=0.004,
                gSigma=0.005, theta1=0.06, theta2=2.6, a1=0.0, a2=0.004,
                exports=0.0, alpha=1.45, beta=0.95)
    base.update(overrides)
    return RegionParams(**base)


def scenario_from(regions, adjacency=(), floors=None, omega=0.0, horizon=4,
                  beta=0.95):
    floors = floors if floors is not None else tuple(0.0 for _ in regions)
    return validate_config(ScenarioConfig(
        regions=tuple(regions), climate=CLIMATE, initial_climate=CLIMATE0,
        adjacency=tuple(adjacency), floor_regime="custom", custom_floors=floors,
        reward=RewardParams(alpha=1.45, omega=omega, beta=beta),
        optimizer=OptimizerConfig(),
        horizon=horizon,
    ))


class TestWorldStepExamples:
    def test_full_mitigation_zero_emissions_reward_is_net_output_utility(self):
        p = simple_region()
        states = [p.initial_state()]
        new_states, new_climate, rewards = world_step(
            [p.initial_state()], CLIMATE0, [Action(s=0.0, mu=1.0)], None,
            [p], CLIMATE, RewardParams(omega=0.0))
        # Zero emissions: atmosphere receives only redistributed mass.
        b = CLIMATE.transfer
        expected_mat = b[0][0] * CLIMATE0.mAT + b[0][1] * CLIMATE0.mUP + b[0][2] * CLIMATE0.mLO
        assert new_climate.mAT == pytest.approx(expected_mat, rel=1e-14)
        # With s=0 and exports=0, consumption equals full net output.
        q = p.A0 * p.K0**p.gamma * p.L0 ** (1 - p.gamma)
        d = min(max(p.a1 * CLIMATE0.tAT + p.a2 * CLIMATE0.tAT**2, 0.0), 1.0)
        qnet = q * (1 - d) * (1 - p.theta1)
        assert rewards[0] == pytest.approx(baseline_utility(qnet, p.L0, p.alpha), rel=1e-12)

    def test_identical_regions_identical_rewards(self):
        p1, p2 = simple_region(1), simple_region(2)
        actions = [Action(s=0.2, mu=0.4), Action(s=0.2, mu=0.4)]
        _, _, rewards = world_step(
            [p1.initial_state(), p2.initial_state()], CLIMATE0, actions, None,
            [p1, p2], CLIMATE, RewardParams(omega=0.5))
        assert rewards[0] == rewards[1]  # exact symmetry

    def test_canonical_two_region_step_matches_scalar_composition(self):
        # Spreadsheet-style evaluation with plain floats, composing the
        # documented operations one by one.
        p1 = simple_region(1)
        p2 = simple_region(2, K0=120.0, L0=80.0, A0=1.1, gamma=0.32, delta=0.09,
                           sigma0=0.009, theta1=0.09, theta2=2.7, a2=0.008,
                           exports=1.0)
        actions = [Action(s=0.15, mu=0.3), Action(s=0.25, mu=0.6)]
        omega = 0.4
        new_states, new_climate, rewards = world_step(
            [p1.initial_state(), p2.initial_state()], CLIMATE0, actions, None,
            [p1, p2], CLIMATE, RewardParams(omega=omega))

        def crra(c, l, a):
            if abs(a - 1) < 1e-9:
                return l * math.log(c / l)
            return l / (1 - a) * ((c / l) ** (1 - a) - 1)

        e_total = 0.0
        expected_rewards = []
        expected_states = []
        for p, act in zip((p1, p2), actions):
            q = p.A0 * p.K0**p.gamma * p.L0 ** (1 - p.gamma)
            d = min(max(p.a1 * CLIMATE0.tAT + p.a2 * CLIMATE0.tAT**2, 0.0), 1.0)
            lam = p.theta1 * act.mu**p.theta2
            qn = q * (1 - d) * (1 - lam)
            e = p.sigma0 * (1 - act.mu) * q
            e_total += e
            x = p.exports if isinstance(p.exports, float) else p.exports[0]
            c = max((1 - act.s) * qn - x, 1e-9)
            r = (1 - omega) * crra(c, p.L0, p.alpha) + omega * crra(c + act.s * qn, p.L0, p.alpha)
            expected_rewards.append(r)
            expected_states.append(RegionState(
                K=(1 - p.delta) * p.K0 + act.s * qn,
                L=p.L0 * (1 + p.gL), A=p.A0 * (1 + p.gA),
                sigma=p.sigma0 * (1 - p.gSigma)))
        b = CLIMATE.transfer
        m_at = b[0][0] * CLIMATE0.mAT + b[0][1] * CLIMATE0.mUP + b[0][2] * CLIMATE0.mLO + e_total
        m_up = b[1][0] * CLIMATE0.mAT + b[1][1] * CLIMATE0.mUP + b[1][2] * CLIMATE0.mLO
        m_lo = b[2][0] * CLIMATE0.mAT + b[2][1] * CLIMATE0.mUP + b[2][2] * CLIMATE0.mLO
        forcing = CLIMATE.forcing_coeff * math.log2(m_at / CLIMATE.preindustrial_carbon)
        tp = CLIMATE.temp
        t_at = CLIMATE0.tAT + tp.c1 * (forcing - tp.lam * CLIMATE0.tAT
                                       - tp.c3 * (CLIMATE0.tAT - CLIMATE0.tLO))
        t_lo = CLIMATE0.tLO + tp.c4 * (CLIMATE0.tAT - CLIMATE0.tLO)

        for got, want in zip(rewards, expected_rewards):
            assert got == pytest.approx(want, rel=1e-12)
        for got, want in zip(new_states, expected_states):
            assert got.K == pytest.approx(want.K, rel=1e-12)
            assert got.L == pytest.approx(want.L, rel=1e-12)
            assert got.A == pytest.approx(want.A, rel=1e-12)
            assert got.sigma == pytest.approx(want.sigma, rel=1e-12)
        assert new_climate.mAT == pytest.approx(m_at, rel=1e-12)
        assert new_climate.mUP == pytest.approx(m_up, rel=1e-12)
        assert new_climate.mLO == pytest.approx(m_lo, rel=1e-12)
        assert new_climate.tAT == pytest.approx(t_at, rel=1e-12)
        assert new_climate.tLO == pytest.approx(t_lo, rel=1e-12)

    def test_floor_table_clamps_actions(self):
        p = simple_region()
        floors = MitigationFloorTable(floors=(0.8,), regime="custom")
        _, climate_low, _ = world_step([p.initial_state()], CLIMATE0,
                                       [Action(s=0.0, mu=0.1)], floors,
                                       [p], CLIMATE, RewardParams())
        _, climate_free, _ = world_step([p.initial_state()], CLIMATE0,
                                        [Action(s=0.0, mu=0.1)], None,
                                        [p], CLIMATE, RewardParams())
        assert climate_low.mAT < climate_free.mAT  # clamped mu abates more


class TestRunSimulation:
    def test_determinism_bit_identical_records(self):
        cfg = two_region_scenario(omega=0.3, horizon=5)
        scn = cfg.compile()
        s = np.full((5, 2), 0.15)
        mu = np.tile(np.array([0.25, 0.5]), (5, 1))
        a = run_simulation(scn, s, mu, record=True)
        b = run_simulation(scn, s, mu, record=True)
        assert np.array_equal(a.returns, b.returns)
        for field in ("K", "L", "A", "Q", "Qnet", "E", "C", "s", "mu", "floor",
                      "U", "r", "infeasible", "mAT", "tAT"):
            assert np.array_equal(getattr(a.record, field), getattr(b.record, field))

    def test_horizon_zero(self):
        cfg = two_region_scenario(horizon=0)
        scn = cfg.compile()
        res = run_simulation(scn, np.zeros((0, 2)), np.zeros((0, 2)), record=True)
        assert res.returns.tolist() == [0.0, 0.0]
        assert float(res.cumulative_emissions) == 0.0
        assert res.record.horizon == 0

    def test_matches_manual_world_step_composition(self):
        # With no adjacency the negotiation is inert, so stepping the
        # public world_step with base floors must reproduce the loop.
        regions = [simple_region(1), simple_region(2, K0=150.0, sigma0=0.006)]
        cfg = scenario_from(regions, adjacency=(), floors=(0.2, 0.4), omega=0.25)
        scn = cfg.compile()
        horizon = cfg.horizon
        s = np.tile(np.array([0.1, 0.3]), (horizon, 1))
        mu = np.tile(np.array([0.5, 0.3]), (horizon, 1))
        sim = run_simulation(scn, s, mu, record=True)

        states = [p.initial_state() for p in regions]
        climate = CLIMATE0
        table = scn.base_floors
        returns = np.zeros(2)
        beta_pow = np.ones(2)
        for t in range(horizon):
            actions = [Action(s=float(s[t, i]), mu=float(mu[t, i])) for i in range(2)]
            states, climate, rewards = world_step(
                states, climate, actions, table, regions, CLIMATE, scn.reward, t=t)
            returns += beta_pow * rewards
            beta_pow *= scn.table.beta
        assert np.array_equal(sim.returns, returns)
        assert float(sim.final_tAT) == climate.tAT

    def test_effective_floors_at_least_base_and_mu_clamped(self):
        cfg = two_region_scenario(omega=0.0, horizon=4)
        scn = cfg.compile()
        s = np.full((4, 2), 0.1)
        mu = np.tile(np.array([0.9, 0.5]), (4, 1))
        res = run_simulation(scn, s, mu, record=True)
        base = scn.base_floors.as_array()
        assert np.all(res.record.floor >= base)
        assert np.all(res.record.mu >= res.record.floor)

    def test_state_bounds_hold_after_every_step(self):
        cfg = load_example27()
        scn = cfg.compile()
        horizon = cfg.horizon
        s = np.full((horizon, 27), 0.2)
        mu = np.full((horizon, 27), 0.5)
        mu = np.maximum(mu, scn.base_floors.as_array())
        res = run_simulation(scn, s, mu, record=True)
        rec = res.record
        assert np.all(rec.K >= 0)
        assert np.all(rec.L > 0)
        assert np.all(rec.A > 0)
        assert np.all(rec.Q >= 0)
        assert np.all(rec.Qnet >= 0)
        assert np.all(rec.Qnet <= rec.Q)
        assert np.all(rec.E >= 0)
        assert np.all(rec.C > 0)
        assert np.all(rec.mAT > 0)

    def test_carbon_conservation_through_simulation(self):
        cfg = load_example27()
        scn = cfg.compile()
        horizon = cfg.horizon
        s = np.full((horizon, 27), 0.1)
        mu = np.maximum(np.full((horizon, 27), 0.3), scn.base_floors.as_array())
        res = run_simulation(scn, s, mu, record=True)
        rec = res.record
        # Reconstruct the final masses by stepping the recorded emissions.
        from climneg.climate import climate_step
        c = scn.initial_climate
        for t in range(horizon):
            c = climate_step(c, float(np.sum(rec.E[t])), scn.climate_params)
        total0 = scn.initial_climate.total_carbon()
        injected = float(res.cumulative_emissions)
        drift = abs(c.total_carbon() - (total0 + injected)) / (total0 + injected)
        assert drift < 1e-9


class TestSymmetry:
    def test_permuting_regions_permutes_outputs(self):
        base_regions = [
            simple_region(1),
            simple_region(2, K0=150.0, L0=60.0, sigma0=0.007, a2=0.006),
            simple_region(3, K0=90.0, L0=220.0, A0=2.2, theta1=0.1),
        ]
        perm = [2, 0, 1]  # new position i holds old region perm[i]
        permuted_regions = []
        for new_id, old_pos in enumerate(perm, start=1):
            p = base_regions[old_pos]
            permuted_regions.append(RegionParams(
                **{**p.__dict__, "id": new_id}))
        floors = (0.1, 0.2, 0.3)
        perm_floors = tuple(floors[old] for old in perm)
        adjacency = [(1, 2), (2, 3)]
        old_of_new = {new: old for new, old in enumerate(perm)}
        new_of_old = {old: new for new, old in enumerate(perm)}
        perm_adjacency = [(new_of_old[a - 1] + 1, new_of_old[b - 1] + 1)
                          for a, b in adjacency]

        cfg_a = scenario_from(base_regions, adjacency, floors, omega=0.3)
        cfg_b = scenario_from(permuted_regions, perm_adjacency, perm_floors, omega=0.3)
        horizon = cfg_a.horizon
        s_a = np.tile(np.array([0.1, 0.2, 0.3]), (horizon, 1))
        mu_a = np.tile(np.array([0.4, 0.5, 0.6]), (horizon, 1))
        s_b = s_a[:, perm]
        mu_b = mu_a[:, perm]
        res_a = run_simulation(cfg_a.compile(), s_a, mu_a)
        res_b = run_simulation(cfg_b.compile(), s_b, mu_b)
        # Region-indexed outputs permute; global reductions reassociate, so
        # compare to tight relative tolerance rather than bitwise.
        np.testing.assert_allclose(res_b.returns, res_a.returns[perm], rtol=1e-12)
        np.testing.assert_allclose(res_b.final_tAT, res_a.final_tAT, rtol=1e-12)


class TestBatchedEvaluation:
    def test_batched_matches_unbatched_bitwise(self):
        cfg = two_region_scenario(omega=0.4, horizon=4)
        scn = cfg.compile()
        horizon = cfg.horizon
        candidates = [(0.0, 0.25), (0.3, 0.5), (0.6, 1.0)]
        s_b = np.zeros((horizon, len(candidates), 2))
        mu_b = np.zeros((horizon, len(candidates), 2))
        for k, (s_c, mu_c) in enumerate(candidates):
            s_b[:, k, 0] = s_c
            mu_b[:, k, 0] = mu_c
            s_b[:, k, 1] = 0.2
            mu_b[:, k, 1] = 0.5
        batched = run_simulation(scn, s_b, mu_b)
        for k, (s_c, mu_c) in enumerate(candidates):
            s_u = np.tile(np.array([s_c, 0.2]), (horizon, 1))
            mu_u = np.tile(np.array([mu_c, 0.5]), (horizon, 1))
            single = run_simulation(scn, s_u, mu_u)
            assert np.array_equal(batched.returns[k], single.returns)
            assert np.array_equal(batched.cumulative_emissions[k],
                                  single.cumulative_emissions)


class TestProtocolAgreement:
    def assert_object_protocol_matches_kernel(self, scn, s_arr, mu_arr):
        ctx = make_context(scn, s_arr, mu_arr)
        eff_kernel = negotiate_floors(ctx, scn)
        decisions = []
        incoming = {rid: [] for rid in scn.table.ids}
        for rid in scn.table.ids:
            pos = rid - 1
            for p in propose_floors(rid, scn.grouping,
                                    Action(s=float(s_arr[pos]), mu=float(mu_arr[pos]))):
                incoming[p.target].append(p)
        for rid in scn.table.ids:
            decisions.extend(evaluate_proposals(rid, incoming[rid], ctx))
        resolved = resolve_floors(decisions, scn.base_floors)
        assert np.array_equal(resolved.as_array(), eff_kernel)

    def test_two_region_instance(self):
        scn = two_region_scenario().compile()
        self.assert_object_protocol_matches_kernel(scn, np.array([0.1, 0.2]),
                                                   np.array([0.9, 0.5]))

    def test_bundled_27_region_instance(self):
        scn = load_example27().compile()
        rng = np.random.default_rng(5)
        for _ in range(3):
            s_arr = rng.uniform(0.0, 0.5, 27)
            mu_arr = rng.uniform(0.0, 1.0, 27)
            self.assert_object_protocol_matches_kernel(scn, s_arr, mu_arr)
