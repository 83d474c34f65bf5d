"""Scenario configuration: JSON schema, validation, round-trip, compile.

A scenario file is a single JSON document. `load_config` distinguishes
three failure classes: `ConfigFileError` (unreadable), `ConfigSchemaError`
(wrong structure or types, every problem listed with its field path) and
`ConfigInvariantError` (well-formed but violating model invariants,
likewise exhaustively listed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .climate import ClimateParams, ClimateState, TempDynamics
from .econ import RegionParams
from .errors import (ConfigError, ConfigFileError, ConfigInvariantError,
                     ConfigSchemaError, DomainError)
from .negotiation import (DYNAMIC_REGION_COUNT, FLOOR_REGIMES, AdjacencyGraph,
                          Grouping, MitigationFloorTable, form_groups,
                          load_floor_table)
from .optimize import OptimizerConfig
from .reward import RewardParams
from .world import CompiledScenario, compile_scenario

_REGION_REQUIRED = ("id", "label", "continent", "K0", "L0", "A0", "gL", "gA",
                    "gamma", "delta", "sigma0", "gSigma", "theta1", "theta2",
                    "a1", "a2")


@dataclass(frozen=True)
class ScenarioConfig:
    """A fully parsed scenario; semantic validity is checked separately."""

    regions: tuple[RegionParams, ...]
    climate: ClimateParams
    initial_climate: ClimateState
    adjacency: tuple[tuple[int, int], ...]
    floor_regime: str
    custom_floors: tuple[float, ...] | str | None
    reward: RewardParams
    optimizer: OptimizerConfig
    horizon: int
    seed: int = 0

    def violations(self) -> list[str]:
        out = []
        if len(self.regions) < 1:
            out.append("regions: at least one region is required")
        ids = [p.id for p in self.regions]
        expected = list(range(1, len(self.regions) + 1))
        if sorted(ids) != expected:
            out.append(f"regions: ids must be exactly 1..{len(self.regions)}, got {sorted(ids)}")
        for i, p in enumerate(self.regions):
            out.extend(p.violations(prefix=f"regions[{i}]."))
            if isinstance(p.exports, tuple) and len(p.exports) < self.horizon:
                out.append(
                    f"regions[{i}].exports: series has {len(p.exports)} entries, "
                    f"horizon is {self.horizon}"
                )
        out.extend(self.climate.violations(prefix="climate."))
        ic = self.initial_climate
        for field in ("mAT", "mUP", "mLO"):
            v = getattr(ic, field)
            if not np.isfinite(v) or v < 0:
                out.append(f"climate.initial.{field}: must be finite and >= 0, got {v!r}")
        if np.isfinite(ic.mAT) and ic.mAT <= 0:
            out.append("climate.initial.mAT: must be > 0 for well-defined forcing")
        for field in ("tAT", "tLO"):
            v = getattr(ic, field)
            if not np.isfinite(v):
                out.append(f"climate.initial.{field}: must be finite, got {v!r}")
        id_set = set(ids)
        for k, (a, b) in enumerate(self.adjacency):
            if a == b:
                out.append(f"adjacency[{k}]: self-loop {a}-{b}")
            if a not in id_set or b not in id_set:
                out.append(f"adjacency[{k}]: edge {a}-{b} references an unknown region")
        if self.floor_regime not in FLOOR_REGIMES:
            out.append(f"floorRegime: unknown regime {self.floor_regime!r}, "
                       f"expected one of {FLOOR_REGIMES}")
        elif self.floor_regime == "dynamic" and len(self.regions) != DYNAMIC_REGION_COUNT:
            out.append(f"floorRegime: dynamic regime requires {DYNAMIC_REGION_COUNT} "
                       f"regions, got {len(self.regions)}")
        elif self.floor_regime == "custom":
            if self.custom_floors is None:
                out.append("customFloors: required when floorRegime is custom")
            else:
                try:
                    load_floor_table("custom", self.custom_floors, len(self.regions))
                except ConfigError as exc:
                    out.extend(exc.violations)
        out.extend(self.reward.violations(prefix="reward."))
        out.extend(self.optimizer.violations(prefix="optimizer."))
        if not isinstance(self.horizon, int) or self.horizon < 0:
            out.append(f"horizon: must be an integer >= 0, got {self.horizon!r}")
        if not isinstance(self.seed, int):
            out.append(f"seed: must be an integer, got {self.seed!r}")
        return out

    def floor_table(self) -> MitigationFloorTable:
        return load_floor_table(self.floor_regime, self.custom_floors, len(self.regions))

    def graph(self) -> AdjacencyGraph:
        return AdjacencyGraph.build([p.id for p in self.regions], self.adjacency)

    def grouping(self) -> Grouping:
        continents = {p.id: p.continent for p in self.regions}
        return form_groups(self.graph(), continents)

    def with_regime(self, regime: str, custom_floors=None) -> "ScenarioConfig":
        return replace(self, floor_regime=regime, custom_floors=custom_floors)

    def compile(self) -> CompiledScenario:
        return compile_scenario(
            regions=self.regions,
            climate_params=self.climate,
            initial_climate=self.initial_climate,
            grouping=self.grouping(),
            base_floors=self.floor_table(),
            reward=self.reward,
            horizon=self.horizon,
        )

    def to_dict(self) -> dict:
        regions = []
        for p in self.regions:
            entry = {
                "id": p.id, "label": p.label, "continent": p.continent,
                "K0": p.K0, "L0": p.L0, "A0": p.A0, "gL": p.gL, "gA": p.gA,
                "gamma": p.gamma, "delta": p.delta,
                "sigma0": p.sigma0, "gSigma": p.gSigma,
                "theta1": p.theta1, "theta2": p.theta2,
                "a1": p.a1, "a2": p.a2,
                "exports": list(p.exports) if isinstance(p.exports, tuple) else p.exports,
                "alpha": p.alpha, "beta": p.beta,
            }
            regions.append(entry)
        doc = {
            "horizon": self.horizon,
            "seed": self.seed,
            "floorRegime": self.floor_regime,
            "regions": regions,
            "climate": {
                "transfer": [list(row) for row in self.climate.transfer],
                "forcingCoeff": self.climate.forcing_coeff,
                "preindustrialCarbon": self.climate.preindustrial_carbon,
                "tempParams": {
                    "c1": self.climate.temp.c1, "lam": self.climate.temp.lam,
                    "c3": self.climate.temp.c3, "c4": self.climate.temp.c4,
                },
                "initial": {
                    "mAT": self.initial_climate.mAT, "mUP": self.initial_climate.mUP,
                    "mLO": self.initial_climate.mLO, "tAT": self.initial_climate.tAT,
                    "tLO": self.initial_climate.tLO,
                },
            },
            "adjacency": [list(edge) for edge in self.adjacency],
            "reward": {
                "alpha": self.reward.alpha, "omega": self.reward.omega,
                "beta": self.reward.beta, "epsilonC": self.reward.epsilon_c,
            },
            "optimizer": {
                "sGrid": self.optimizer.s_grid, "muGrid": self.optimizer.mu_grid,
                "maxRounds": self.optimizer.max_rounds, "tol": self.optimizer.tol,
            },
        }
        if self.custom_floors is not None:
            doc["customFloors"] = (
                list(self.custom_floors) if isinstance(self.custom_floors, tuple)
                else self.custom_floors
            )
        return doc


class _Parser:
    """Structural walker that collects every schema problem it finds."""

    def __init__(self, doc):
        self.doc = doc
        self.errors: list[str] = []

    def fail(self, path, msg):
        self.errors.append(f"{path}: {msg}")

    def number(self, obj, path, default=None):
        v = obj if not isinstance(obj, dict) else None
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            self.fail(path, f"expected a number, got {v!r}")
            return default if default is not None else 0.0
        return float(v)

    def get_number(self, mapping, key, path, default=None):
        if key not in mapping:
            if default is not None:
                return default
            self.fail(f"{path}.{key}" if path else key, "missing required field")
            return 0.0
        return self.number(mapping[key], f"{path}.{key}" if path else key)

    def get_int(self, mapping, key, path, default=None):
        full = f"{path}.{key}" if path else key
        if key not in mapping:
            if default is not None:
                return default
            self.fail(full, "missing required field")
            return 0
        v = mapping[key]
        if isinstance(v, bool) or not isinstance(v, int):
            self.fail(full, f"expected an integer, got {v!r}")
            return 0
        return v

    def get_str(self, mapping, key, path):
        full = f"{path}.{key}" if path else key
        if key not in mapping:
            self.fail(full, "missing required field")
            return ""
        v = mapping[key]
        if not isinstance(v, str):
            self.fail(full, f"expected a string, got {v!r}")
            return ""
        return v

    def get_dict(self, mapping, key, path):
        full = f"{path}.{key}" if path else key
        v = mapping.get(key)
        if not isinstance(v, dict):
            self.fail(full, f"expected an object, got {type(v).__name__}")
            return {}
        return v


def parse_config(doc: dict) -> ScenarioConfig:
    """Build a ScenarioConfig from a JSON document.

    Raises ConfigSchemaError listing every structural problem; semantic
    invariants are left to `ScenarioConfig.violations`.
    """
    if not isinstance(doc, dict):
        raise ConfigSchemaError(["config: top level must be a JSON object"])
    p = _Parser(doc)

    horizon = p.get_int(doc, "horizon", "", default=100)
    seed = p.get_int(doc, "seed", "", default=0)
    floor_regime = p.get_str(doc, "floorRegime", "")

    custom_floors = None
    if "customFloors" in doc:
        cf = doc["customFloors"]
        if isinstance(cf, str):
            custom_floors = cf
        elif isinstance(cf, list):
            custom_floors = tuple(
                p.number(v, f"customFloors[{i}]") for i, v in enumerate(cf)
            )
        else:
            p.fail("customFloors", f"expected a list or file path, got {cf!r}")

    reward_doc = doc.get("reward", {})
    if not isinstance(reward_doc, dict):
        p.fail("reward", "expected an object")
        reward_doc = {}
    reward = RewardParams(
        alpha=p.get_number(reward_doc, "alpha", "reward", default=1.45),
        omega=p.get_number(reward_doc, "omega", "reward", default=0.0),
        beta=p.get_number(reward_doc, "beta", "reward", default=0.98),
        epsilon_c=p.get_number(reward_doc, "epsilonC", "reward", default=1e-9),
    )

    opt_doc = doc.get("optimizer", {})
    if not isinstance(opt_doc, dict):
        p.fail("optimizer", "expected an object")
        opt_doc = {}
    optimizer = OptimizerConfig(
        s_grid=p.get_int(opt_doc, "sGrid", "optimizer", default=11),
        mu_grid=p.get_int(opt_doc, "muGrid", "optimizer", default=11),
        max_rounds=p.get_int(opt_doc, "maxRounds", "optimizer", default=50),
        tol=p.get_number(opt_doc, "tol", "optimizer", default=1e-6),
    )

    regions = []
    regions_doc = doc.get("regions")
    if not isinstance(regions_doc, list):
        p.fail("regions", "expected a list of region objects")
        regions_doc = []
    for i, rd in enumerate(regions_doc):
        path = f"regions[{i}]"
        if not isinstance(rd, dict):
            p.fail(path, "expected an object")
            continue
        for key in _REGION_REQUIRED:
            if key not in rd:
                p.fail(f"{path}.{key}", "missing required field")
        exports = rd.get("exports", 0.0)
        if isinstance(exports, list):
            exports = tuple(
                p.number(v, f"{path}.exports[{k}]") for k, v in enumerate(exports)
            )
        elif isinstance(exports, bool) or not isinstance(exports, (int, float)):
            p.fail(f"{path}.exports", f"expected a number or list, got {exports!r}")
            exports = 0.0
        else:
            exports = float(exports)
        regions.append(RegionParams(
            id=p.get_int(rd, "id", path, default=0),
            label=str(rd.get("label", "")),
            continent=str(rd.get("continent", "")),
            K0=p.get_number(rd, "K0", path, default=0.0),
            L0=p.get_number(rd, "L0", path, default=1.0),
            A0=p.get_number(rd, "A0", path, default=1.0),
            gL=p.get_number(rd, "gL", path, default=0.0),
            gA=p.get_number(rd, "gA", path, default=0.0),
            gamma=p.get_number(rd, "gamma", path, default=0.3),
            delta=p.get_number(rd, "delta", path, default=0.1),
            sigma0=p.get_number(rd, "sigma0", path, default=0.0),
            gSigma=p.get_number(rd, "gSigma", path, default=0.0),
            theta1=p.get_number(rd, "theta1", path, default=0.0),
            theta2=p.get_number(rd, "theta2", path, default=2.6),
            a1=p.get_number(rd, "a1", path, default=0.0),
            a2=p.get_number(rd, "a2", path, default=0.0),
            exports=exports,
            alpha=p.get_number(rd, "alpha", path, default=reward.alpha),
            beta=p.get_number(rd, "beta", path, default=reward.beta),
        ))

    climate_doc = p.get_dict(doc, "climate", "")
    transfer_doc = climate_doc.get("transfer")
    transfer = []
    if (not isinstance(transfer_doc, list) or len(transfer_doc) != 3
            or any(not isinstance(row, list) or len(row) != 3 for row in transfer_doc)):
        p.fail("climate.transfer", "expected a 3x3 matrix")
        transfer = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    else:
        for i, row in enumerate(transfer_doc):
            transfer.append([p.number(v, f"climate.transfer[{i}][{j}]")
                             for j, v in enumerate(row)])
    temp_doc = p.get_dict(climate_doc, "tempParams", "climate")
    temp = TempDynamics(
        c1=p.get_number(temp_doc, "c1", "climate.tempParams"),
        lam=p.get_number(temp_doc, "lam", "climate.tempParams"),
        c3=p.get_number(temp_doc, "c3", "climate.tempParams"),
        c4=p.get_number(temp_doc, "c4", "climate.tempParams"),
    )
    climate = ClimateParams(
        transfer=tuple(tuple(row) for row in transfer),
        forcing_coeff=p.get_number(climate_doc, "forcingCoeff", "climate"),
        preindustrial_carbon=p.get_number(climate_doc, "preindustrialCarbon", "climate"),
        temp=temp,
    )
    init_doc = p.get_dict(climate_doc, "initial", "climate")
    initial_climate = ClimateState(
        mAT=p.get_number(init_doc, "mAT", "climate.initial"),
        mUP=p.get_number(init_doc, "mUP", "climate.initial"),
        mLO=p.get_number(init_doc, "mLO", "climate.initial"),
        tAT=p.get_number(init_doc, "tAT", "climate.initial"),
        tLO=p.get_number(init_doc, "tLO", "climate.initial"),
    )

    adjacency = []
    adj_doc = doc.get("adjacency", [])
    if not isinstance(adj_doc, list):
        p.fail("adjacency", "expected a list of id pairs")
        adj_doc = []
    for k, edge in enumerate(adj_doc):
        if (not isinstance(edge, list) or len(edge) != 2
                or any(isinstance(v, bool) or not isinstance(v, int) for v in edge)):
            p.fail(f"adjacency[{k}]", f"expected a pair of region ids, got {edge!r}")
            continue
        adjacency.append((edge[0], edge[1]))

    if p.errors:
        raise ConfigSchemaError(p.errors)

    return ScenarioConfig(
        regions=tuple(regions),
        climate=climate,
        initial_climate=initial_climate,
        adjacency=tuple(adjacency),
        floor_regime=floor_regime,
        custom_floors=custom_floors,
        reward=reward,
        optimizer=optimizer,
        horizon=horizon,
        seed=seed,
    )


def validate_config(config: ScenarioConfig) -> ScenarioConfig:
    """Raise ConfigInvariantError listing every violated invariant."""
    violations = config.violations()
    if not violations:
        try:
            config.graph()
        except DomainError as exc:
            violations.append(f"adjacency: {exc}")
    if violations:
        raise ConfigInvariantError(violations)
    return config


def load_config(path) -> ScenarioConfig:
    """Read, parse and fully validate a scenario file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigFileError([f"config: cannot read {path}: {exc}"]) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigSchemaError([f"config: invalid JSON in {path}: {exc}"]) from exc
    return validate_config(parse_config(doc))
