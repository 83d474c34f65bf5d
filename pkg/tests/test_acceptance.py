"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (run pytest with -s to see the
lines for passing criteria) and enforces the criterion's tolerance and
time budget.
"""

import json
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from climneg.cli import main
from climneg.climate import climate_step
from climneg.fixtures import (example27_path, load_example27,
                              single_region_scenario, two_region_scenario)
from climneg.negotiation import load_floor_table
from climneg.optimize import (best_response, evaluate_profile,
                              initial_profile, iterated_best_response,
                              Policy, Profile)
from climneg.econ import Action
from climneg.reward import augmented_reward, baseline_utility

DYNAMIC_ROW = (0.9, 0.9, 0.6, 0.2, 0.9, 0.8, 0.7, 0.7, 0.7, 0.5, 0.9, 0.7,
               0.7, 0.7, 0.6, 0.1, 0.7, 0.4, 0.2, 0.7, 0.9, 0.7, 0.6, 0.6,
               0.7, 0.7, 0.9)


@contextmanager
def criterion(name, budget_seconds):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"FAIL: {name}")
        raise
    elapsed = time.perf_counter() - start
    if elapsed > budget_seconds:
        print(f"FAIL: {name} (took {elapsed:.2f}s, budget {budget_seconds}s)")
        pytest.fail(f"{name}: exceeded time budget "
                    f"({elapsed:.2f}s > {budget_seconds}s)")
    print(f"PASS: {name} ({elapsed:.2f}s)")


@pytest.fixture(scope="module")
def fixture_compare(tmp_path_factory):
    """One uniform-vs-dynamic comparison of the bundled 27-region fixture,
    shared by the floor-burden and regime-direction criteria."""
    out = tmp_path_factory.mktemp("compare")
    start = time.perf_counter()
    code = main(["compare", "--config", str(example27_path()),
                 "--regimes", "uniform,dynamic", "--out", str(out)])
    elapsed = time.perf_counter() - start
    assert code == 0
    lines = (out / "compare.csv").read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = {row[0]: dict(zip(header, row))
            for row in (line.split(",") for line in lines[1:])}
    return rows, elapsed


def test_table1_fidelity():
    with criterion("Table 1 fidelity", budget_seconds=1.0):
        dynamic = load_floor_table("dynamic")
        assert dynamic.floors == DYNAMIC_ROW  # exact match
        uniform = load_floor_table("uniform")
        assert len(uniform.floors) == 27
        assert all(f == 0.9 for f in uniform.floors)


def test_floor_burden_comparison(fixture_compare):
    rows, _ = fixture_compare
    with criterion("Floor-burden comparison", budget_seconds=120.0):
        uniform, dynamic = rows["uniform"], rows["dynamic"]
        assert abs(float(uniform["floorSum"]) - 24.3) <= 1e-12
        assert abs(float(dynamic["floorSum"]) - 17.7) <= 1e-12
        assert abs(float(uniform["floorMean"]) - 0.9) <= 1e-12
        assert abs(float(dynamic["floorMean"]) - 17.7 / 27) <= 1e-12


def test_utility_identities():
    with criterion("Utility identities", budget_seconds=1.0):
        for alpha in (0.5, 1.0, 1.45, 2.0):
            for L in (1.0, 3.7, 120.0, 1000.0):
                assert abs(baseline_utility(L, L, alpha)) <= 1e-12
        ratios = np.linspace(0.2, 5.0, 10)
        sizes = np.geomspace(1.0, 1000.0, 10)
        for L in sizes:  # 100-point (C, L) grid
            for ratio in ratios:
                C = float(ratio * L)
                log_value = baseline_utility(C, float(L), 1.0)
                for eps in (1e-6, -1e-6):
                    closed = baseline_utility(C, float(L), 1.0 + eps)
                    assert abs(closed - log_value) <= 1e-4 * abs(log_value) + 1e-9
        for alpha in (0.5, 1.0, 1.45, 2.0):
            grid = np.linspace(2.0, 400.0, 400)
            u = baseline_utility(grid, 100.0, alpha)
            assert np.all(np.diff(u) > 0)  # strictly increasing


def test_baseline_recovery_bitwise():
    with criterion("Baseline recovery (omega=0 bitwise)", budget_seconds=1.0):
        rng = np.random.default_rng(123)
        for _ in range(1000):
            C = float(rng.uniform(0.5, 800.0))
            L = float(rng.uniform(0.5, 500.0))
            alpha = float(rng.uniform(0.1, 3.5))
            s = float(rng.uniform(0.0, 0.999))
            qnet = float(rng.uniform(0.0, 600.0))
            assert augmented_reward(C, L, alpha, s, qnet, omega=0.0) == \
                baseline_utility(C, L, alpha)


def test_savings_criticism_reproduced():
    with criterion("Savings criticism and credit (omega 0 vs 0.5)",
                   budget_seconds=10.0):
        cfg0 = single_region_scenario(omega=0.0)
        profile0, _, converged0 = iterated_best_response(cfg0.compile(), cfg0.optimizer)
        s_zero = profile0.policies[0].schedule[0].s
        assert converged0
        assert s_zero == float(cfg0.optimizer.s_points()[0])  # lowest grid point
        cfg5 = single_region_scenario(omega=0.5)
        profile5, _, converged5 = iterated_best_response(cfg5.compile(), cfg5.optimizer)
        assert converged5
        assert profile5.policies[0].schedule[0].s > s_zero  # strictly greater


def test_carbon_conservation():
    with criterion("Carbon conservation over 1000 random steps",
                   budget_seconds=1.0):
        cfg = load_example27()
        state = cfg.initial_climate
        rng = np.random.default_rng(2024)
        injected = 0.0
        total0 = state.total_carbon()
        for _ in range(1000):
            e = float(rng.uniform(0.0, 25.0))
            injected += e
            state = climate_step(state, e, cfg.climate)
        drift = abs(state.total_carbon() - (total0 + injected)) / (total0 + injected)
        assert drift < 1e-9


def test_optimizer_oracle_equivalence():
    with criterion("Optimizer oracle equivalence (2 regions, horizon 3, 5x5)",
                   budget_seconds=30.0):
        cfg = two_region_scenario(omega=0.2, horizon=3)
        scn = cfg.compile()
        opt = cfg.optimizer
        assert opt.s_grid == 5 and opt.mu_grid == 5

        def brute(profile, rid):
            pos = scn.table.ids.index(rid)
            floor = scn.base_floors.floors[pos]
            best = None
            for mu in opt.mu_points():
                if mu < floor:
                    continue
                for s in opt.s_points():
                    policies = list(profile.policies)
                    policies[pos] = Policy.constant(Action(s=float(s), mu=float(mu)))
                    ret = float(evaluate_profile(Profile(tuple(policies)), scn)[pos])
                    if best is None or ret > best[2]:
                        best = (float(s), float(mu), ret)
            return best

        profile = initial_profile(scn, opt)
        sweeps = 0
        while True:
            sweeps += 1
            max_improvement = 0.0
            for pos, rid in enumerate(scn.table.ids):
                current = float(evaluate_profile(profile, scn)[pos])
                policy, ret = best_response(rid, profile, scn, opt)
                want_s, want_mu, want_ret = brute(profile, rid)
                act = policy.schedule[0]
                assert (act.s, act.mu) == (want_s, want_mu)  # exact match
                assert ret == want_ret
                if ret > current:
                    policies = list(profile.policies)
                    policies[pos] = policy
                    profile = Profile(tuple(policies))
                max_improvement = max(max_improvement, ret - current)
            if max_improvement <= opt.tol or sweeps >= opt.max_rounds:
                break
        replay, rounds, converged = iterated_best_response(scn, opt)
        assert converged and rounds == sweeps
        assert replay == profile


def test_run_determinism(tmp_path):
    with criterion("Byte-identical repeated runs of the bundled fixture",
                   budget_seconds=60.0):
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        assert main(["run", "--config", str(example27_path()),
                     "--out", str(out1)]) == 0
        assert main(["run", "--config", str(example27_path()),
                     "--out", str(out2)]) == 0
        for name in ("trajectory.csv", "floors.csv", "summary.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_regime_direction(fixture_compare):
    rows, elapsed = fixture_compare
    with criterion("Regime direction (dynamic emissions >= uniform)",
                   budget_seconds=120.0):
        assert elapsed < 120.0, "comparison itself must fit the budget"
        e_uniform = float(rows["uniform"]["cumulativeEmissions"])
        e_dynamic = float(rows["dynamic"]["cumulativeEmissions"])
        assert e_dynamic >= e_uniform
