"""Iterated best-response search over per-region policy grids.

Agents are not learned: each region's policy is chosen by exhaustive
grid search of its own discounted return holding everyone else fixed,
swept round-robin until no region can improve. Candidate evaluations run
as one batched simulation, which is bit-identical to evaluating each
candidate alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .econ import Action
from .errors import DomainError
from .world import CompiledScenario, run_simulation

# Savings-rate grids span [0, S_MAX]; s = 1 is excluded by the Action domain.
S_MAX = 0.9


@dataclass(frozen=True)
class Policy:
    """A per-step schedule of actions, or a single action held constant."""

    schedule: tuple[Action, ...]
    hold_constant: bool = False

    @classmethod
    def constant(cls, action: Action) -> "Policy":
        return cls(schedule=(action,), hold_constant=True)

    def action_at(self, t: int) -> Action:
        return self.schedule[0] if self.hold_constant else self.schedule[t]

    def violations(self, horizon: int, prefix: str = "") -> list[str]:
        out = []
        if self.hold_constant:
            if len(self.schedule) != 1:
                out.append(f"{prefix}schedule: constant policy must hold exactly one action")
        elif len(self.schedule) != horizon:
            out.append(
                f"{prefix}schedule: length {len(self.schedule)} != horizon {horizon}"
            )
        return out


@dataclass(frozen=True)
class Profile:
    """One policy per region, ordered like the scenario's regions."""

    policies: tuple[Policy, ...]

    def schedules(self, horizon: int) -> tuple[np.ndarray, np.ndarray]:
        """Dense (horizon, regions) savings and mitigation schedules."""
        n = len(self.policies)
        s = np.zeros((horizon, n))
        mu = np.zeros((horizon, n))
        for i, pol in enumerate(self.policies):
            for t in range(horizon):
                a = pol.action_at(t)
                s[t, i] = a.s
                mu[t, i] = a.mu
        return s, mu


@dataclass(frozen=True)
class OptimizerConfig:
    """Grid sizes and convergence controls for best-response sweeps."""

    s_grid: int = 11
    mu_grid: int = 11
    max_rounds: int = 50
    tol: float = 1e-6

    def s_points(self) -> np.ndarray:
        return _grid(0.0, S_MAX, self.s_grid)

    def mu_points(self) -> np.ndarray:
        return _grid(0.0, 1.0, self.mu_grid)

    def violations(self, prefix: str = "") -> list[str]:
        out = []
        if self.s_grid < 2:
            out.append(f"{prefix}sGrid: must be >= 2, got {self.s_grid}")
        if self.mu_grid < 2:
            out.append(f"{prefix}muGrid: must be >= 2, got {self.mu_grid}")
        if self.max_rounds < 1:
            out.append(f"{prefix}maxRounds: must be >= 1, got {self.max_rounds}")
        if not np.isfinite(self.tol) or self.tol <= 0:
            out.append(f"{prefix}tol: must be finite and > 0, got {self.tol!r}")
        return out


def _grid(lo: float, hi: float, n: int) -> np.ndarray:
    # Rounded to 12 decimals so grid points compare cleanly against
    # decimal floor values (e.g. the 0.9 uniform minimum).
    if n < 1:
        raise DomainError(f"grid needs at least one point, got {n}")
    if n == 1:
        return np.asarray([lo])
    return np.round(np.linspace(lo, hi, n), 12)


def _as_compiled(scenario) -> CompiledScenario:
    if isinstance(scenario, CompiledScenario):
        return scenario
    return scenario.compile()


def evaluate_profile(profile: Profile, scenario) -> np.ndarray:
    """Per-region discounted return of simulating the whole horizon,
    floors re-resolved each step."""
    scn = _as_compiled(scenario)
    s, mu = profile.schedules(scn.horizon)
    return run_simulation(scn, s, mu).returns


def _feasible_mu_points(opt: OptimizerConfig, floor: float) -> np.ndarray:
    pts = opt.mu_points()
    feasible = pts[pts >= floor]
    if len(feasible) == 0:
        # floor <= 1 and the grid ends at 1, so this cannot happen for
        # valid tables; guard anyway.
        raise DomainError(f"no grid point at or above floor {floor}")
    return feasible


def _candidate_batch(opt: OptimizerConfig, floor: float) -> tuple[np.ndarray, np.ndarray]:
    """Candidate (s, mu) pairs ordered mu-major then s, so the first
    argmax realizes the lowest-mu-then-lowest-s tie-break."""
    s_pts = opt.s_points()
    mu_pts = _feasible_mu_points(opt, floor)
    mu_c = np.repeat(mu_pts, len(s_pts))
    s_c = np.tile(s_pts, len(mu_pts))
    return s_c, mu_c


def best_response(region_id: int, profile: Profile, scenario,
                  opt: OptimizerConfig) -> tuple[Policy, float]:
    """Grid-optimal policy for one region, everyone else held fixed.

    Constant policies search the full (s, mu) grid in one batched
    simulation; schedule policies are improved coordinate-wise, one step
    at a time. Returns the policy and its discounted return.
    """
    scn = _as_compiled(scenario)
    pos = scn.table.ids.index(region_id)
    floor = scn.base_floors.floors[pos]
    s_base, mu_base = profile.schedules(scn.horizon)
    if profile.policies[pos].hold_constant:
        s_c, mu_c = _candidate_batch(opt, floor)
        rets = _batched_region_returns(scn, s_base, mu_base, pos, s_c, mu_c)
        k = int(np.argmax(rets))
        policy = Policy.constant(Action(s=float(s_c[k]), mu=float(mu_c[k])))
        return policy, float(rets[k])
    return _best_response_schedule(scn, profile, pos, floor, s_base, mu_base, opt)


def _batched_region_returns(scn, s_base, mu_base, pos, s_c, mu_c,
                            steps: Sequence[int] | None = None) -> np.ndarray:
    """Returns of region ``pos`` with its actions replaced by each
    candidate (at every step, or only at ``steps``)."""
    horizon = scn.horizon
    n = scn.table.n
    b = len(s_c)
    s_sched = np.broadcast_to(s_base[:, None, :], (horizon, b, n)).copy()
    mu_sched = np.broadcast_to(mu_base[:, None, :], (horizon, b, n)).copy()
    targets = range(horizon) if steps is None else steps
    for t in targets:
        s_sched[t, :, pos] = s_c
        mu_sched[t, :, pos] = mu_c
    if horizon == 0:
        return np.zeros(b)
    return run_simulation(scn, s_sched, mu_sched).returns[:, pos]


def _best_response_schedule(scn, profile, pos, floor, s_base, mu_base, opt):
    """Coordinate-wise sweep over steps for per-step schedules; each step
    keeps its current action unless a grid candidate strictly improves."""
    s_c, mu_c = _candidate_batch(opt, floor)
    s_cur = s_base.copy()
    mu_cur = mu_base.copy()
    best = float(run_simulation(scn, s_cur, mu_cur).returns[..., pos])
    for t in range(scn.horizon):
        rets = _batched_region_returns(scn, s_cur, mu_cur, pos, s_c, mu_c, steps=[t])
        k = int(np.argmax(rets))
        if rets[k] > best:
            best = float(rets[k])
            s_cur[t, pos] = s_c[k]
            mu_cur[t, pos] = mu_c[k]
    actions = tuple(Action(s=float(s_cur[t, pos]), mu=float(mu_cur[t, pos]))
                    for t in range(scn.horizon))
    return Policy(schedule=actions, hold_constant=False), best


def initial_profile(scenario, opt: OptimizerConfig) -> Profile:
    """Deterministic starting point: lowest savings grid point and the
    lowest feasible mitigation grid point for every region."""
    scn = _as_compiled(scenario)
    s0 = float(opt.s_points()[0])
    policies = []
    for floor in scn.base_floors.floors:
        mu0 = float(_feasible_mu_points(opt, floor)[0])
        policies.append(Policy.constant(Action(s=s0, mu=mu0)))
    return Profile(policies=tuple(policies))


def iterated_best_response(scenario, opt: OptimizerConfig,
                           start: Profile | None = None) -> tuple[Profile, int, bool]:
    """Round-robin best-response sweeps in ascending region order.

    Stops when a full sweep improves no region's return by more than
    ``opt.tol``, or after ``opt.max_rounds`` sweeps. Returns the final
    profile, the number of sweeps used, and a convergence flag.
    """
    scn = _as_compiled(scenario)
    profile = start if start is not None else initial_profile(scn, opt)
    converged = False
    rounds = 0
    for _ in range(opt.max_rounds):
        rounds += 1
        max_improvement = 0.0
        for pos, region_id in enumerate(scn.table.ids):
            current = float(evaluate_profile(profile, scn)[..., pos])
            policy, ret = best_response(region_id, profile, scn, opt)
            improvement = ret - current
            if improvement > 0.0:
                policies = list(profile.policies)
                policies[pos] = policy
                profile = Profile(policies=tuple(policies))
            max_improvement = max(max_improvement, improvement)
        if max_improvement <= opt.tol:
            converged = True
            break
    return profile, rounds, converged
