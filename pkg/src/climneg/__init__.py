"""Deterministic multi-region climate-economy negotiation simulator.

Regions produce, consume, save and mitigate on a shared climate; per-step
negotiation inside continental groups resolves minimum mitigation floors;
agent behavior is computed by iterated best-response grid search instead
of reinforcement learning.
"""

from .climate import ClimateParams, ClimateState, TempDynamics, climate_step
from .config import ScenarioConfig, load_config, parse_config, validate_config
from .econ import (Action, RegionParams, RegionState, abatement_cost_fraction,
                   capital_step, damage_fraction, emissions, exogenous_step,
                   gross_output, net_output)
from .errors import (ConfigError, ConfigFileError, ConfigInvariantError,
                     ConfigSchemaError, DivergenceError, DomainError)
from .negotiation import (DYNAMIC_FLOOR_VALUES, AdjacencyGraph, Decision,
                          Grouping, MitigationFloorTable, Proposal,
                          clamp_action, evaluate_proposals, form_groups,
                          load_floor_table, propose_floors, resolve_floors)
from .optimize import (OptimizerConfig, Policy, Profile, best_response,
                       evaluate_profile, initial_profile,
                       iterated_best_response)
from .reward import (RewardParams, augmented_reward, baseline_utility,
                     consumption, discounted_return)
from .world import (CompiledScenario, RunRecord, SimResult, StepContext,
                    compile_scenario, negotiate_floors, run_simulation,
                    world_step)

__version__ = "0.1.0"

__all__ = [
    "Action", "AdjacencyGraph", "ClimateParams", "ClimateState",
    "CompiledScenario", "ConfigError", "ConfigFileError",
    "ConfigInvariantError", "ConfigSchemaError", "Decision",
    "DivergenceError", "DomainError", "DYNAMIC_FLOOR_VALUES", "Grouping",
    "MitigationFloorTable", "OptimizerConfig", "Policy", "Profile",
    "Proposal", "RegionParams", "RegionState", "RewardParams", "RunRecord",
    "ScenarioConfig", "SimResult", "StepContext", "TempDynamics",
    "abatement_cost_fraction", "augmented_reward", "baseline_utility",
    "best_response", "capital_step", "clamp_action", "climate_step",
    "compile_scenario", "consumption", "damage_fraction",
    "discounted_return", "emissions", "evaluate_profile",
    "evaluate_proposals", "exogenous_step", "form_groups", "gross_output",
    "initial_profile", "iterated_best_response", "load_config",
    "load_floor_table", "negotiate_floors", "net_output", "parse_config",
    "propose_floors", "resolve_floors", "run_simulation", "validate_config",
    "world_step",
]
