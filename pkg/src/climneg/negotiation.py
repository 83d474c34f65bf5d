"""Region grouping, floor tables, and the per-step negotiation protocol.

Groups are the connected components of the adjacency graph restricted to
edges whose endpoints share a continent tag. Within a group, every
region proposes its own intended mitigation rate as a floor for the
others (reciprocity); targets accept a proposal when it is non-binding
or when a one-step lookahead of their discounted reward does not fall.
Accepted floors are resolved by pointwise maximum with the base table.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence
import json

import numpy as np

from .econ import Action
from .errors import ConfigError, DomainError

FLOOR_REGIMES = ("uniform", "dynamic", "custom")

UNIFORM_FLOOR = 0.9

# Published per-region minimums of the heterogeneous grouping regime,
# indexed by region id 1..27.
DYNAMIC_FLOOR_VALUES = (
    0.9, 0.9, 0.6, 0.2, 0.9, 0.8, 0.7, 0.7, 0.7, 0.5, 0.9, 0.7, 0.7, 0.7,
    0.6, 0.1, 0.7, 0.4, 0.2, 0.7, 0.9, 0.7, 0.6, 0.6, 0.7, 0.7, 0.9,
)

DYNAMIC_REGION_COUNT = len(DYNAMIC_FLOOR_VALUES)


@dataclass(frozen=True)
class AdjacencyGraph:
    """Undirected graph over region ids; each edge stored once as (lo, hi)."""

    regions: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def build(cls, regions: Sequence[int], edges: Sequence[Sequence[int]]) -> "AdjacencyGraph":
        region_set = set(regions)
        seen = set()
        normalized = []
        for edge in edges:
            a, b = int(edge[0]), int(edge[1])
            if a == b:
                raise DomainError(f"adjacency edge {a}-{b} is a self-loop")
            if a not in region_set or b not in region_set:
                raise DomainError(f"adjacency edge {a}-{b} references an unknown region")
            key = (min(a, b), max(a, b))
            if key not in seen:
                seen.add(key)
                normalized.append(key)
        return cls(regions=tuple(regions), edges=tuple(sorted(normalized)))


@dataclass(frozen=True)
class Grouping:
    """Partition of region ids; groups ordered by their lowest member id."""

    groups: tuple[tuple[int, ...], ...]

    def group_of(self, region_id: int) -> int:
        return self._index[region_id]

    def members(self, region_id: int) -> tuple[int, ...]:
        return self.groups[self.group_of(region_id)]

    @property
    def _index(self) -> dict[int, int]:
        # Built lazily; the dataclass stays hashable and frozen.
        cached = getattr(self, "_index_cache", None)
        if cached is None:
            cached = {rid: gi for gi, group in enumerate(self.groups) for rid in group}
            object.__setattr__(self, "_index_cache", cached)
        return cached


@dataclass(frozen=True)
class MitigationFloorTable:
    """Per-region minimum mitigation rates, indexed by region id (1-based)."""

    floors: tuple[float, ...]
    regime: str

    def floor(self, region_id: int) -> float:
        return self.floors[region_id - 1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.floors, dtype=float)


@dataclass(frozen=True)
class Proposal:
    """A request that ``target`` adopt ``requested_floor`` as its minimum."""

    proposer: int
    target: int
    requested_floor: float

    def __post_init__(self):
        if self.proposer == self.target:
            raise DomainError("a region cannot propose a floor to itself")
        if not 0.0 <= self.requested_floor <= 1.0:
            raise DomainError(
                f"requested floor must lie in [0, 1], got {self.requested_floor}"
            )


@dataclass(frozen=True)
class Decision:
    """The target's verdict on one received proposal."""

    target: int
    proposal: Proposal
    accepted: bool


def load_floor_table(regime: str, source=None, num_regions: int = DYNAMIC_REGION_COUNT) -> MitigationFloorTable:
    """Build the base floor table for a regime.

    ``uniform`` gives every region the same published minimum (0.9);
    ``dynamic`` gives the 27 published heterogeneous values; ``custom``
    reads values from ``source`` (a sequence, or a path to a JSON list).
    """
    if regime not in FLOOR_REGIMES:
        raise ConfigError([f"floorRegime: unknown regime {regime!r}, expected one of {FLOOR_REGIMES}"])
    if regime == "uniform":
        return MitigationFloorTable(floors=(UNIFORM_FLOOR,) * num_regions, regime="uniform")
    if regime == "dynamic":
        if num_regions != DYNAMIC_REGION_COUNT:
            raise ConfigError(
                [f"floorRegime: dynamic regime requires {DYNAMIC_REGION_COUNT} regions, got {num_regions}"]
            )
        return MitigationFloorTable(floors=DYNAMIC_FLOOR_VALUES, regime="dynamic")
    if source is None:
        raise ConfigError(["floorRegime: custom regime requires a floor table source"])
    if isinstance(source, (str, Path)):
        path = Path(source)
        if not path.exists():
            raise ConfigError([f"customFloors: file not found: {path}"])
        try:
            values = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError([f"customFloors: invalid JSON in {path}: {exc}"]) from exc
    else:
        values = list(source)
    violations = []
    if len(values) != num_regions:
        violations.append(f"customFloors: expected {num_regions} values, got {len(values)}")
    for i, v in enumerate(values):
        if not isinstance(v, (int, float)) or not np.isfinite(v) or not 0.0 <= v <= 1.0:
            violations.append(f"customFloors[{i}]: value {v!r} outside [0, 1] (region {i + 1})")
    if violations:
        raise ConfigError(violations)
    return MitigationFloorTable(floors=tuple(float(v) for v in values), regime="custom")


def form_groups(graph: AdjacencyGraph, continents: Mapping[int, str]) -> Grouping:
    """Connected components of the same-continent subgraph.

    Edges whose endpoints carry different continent tags are dropped, so
    cross-continent links never merge groups. Regions without qualifying
    edges form singleton groups.
    """
    parent = {rid: rid for rid in graph.regions}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in graph.edges:
        if continents[a] == continents[b]:
            ra, rb = find(a), find(b)
            if ra != rb:
                # Lower root wins so the result is order-independent.
                lo, hi = min(ra, rb), max(ra, rb)
                parent[hi] = lo
    components: dict[int, list[int]] = {}
    for rid in graph.regions:
        components.setdefault(find(rid), []).append(rid)
    groups = sorted((tuple(sorted(members)) for members in components.values()),
                    key=lambda g: g[0])
    return Grouping(groups=tuple(groups))


def propose_floors(proposer: int, grouping: Grouping, intended: Action) -> list[Proposal]:
    """Reciprocity heuristic: offer one's own intended mitigation rate as a
    floor to every other member of the proposer's group."""
    return [
        Proposal(proposer=proposer, target=other, requested_floor=intended.mu)
        for other in grouping.members(proposer)
        if other != proposer
    ]


def accept_mask(requested, current_floor, cand_score, intended_score):
    """Vectorized acceptance rule shared by the object protocol and the
    simulation kernel: accept non-binding requests, and binding ones whose
    lookahead score does not fall."""
    return (np.asarray(requested) <= current_floor) | (cand_score >= intended_score)


def evaluate_proposals(target: int, incoming: Sequence[Proposal], ctx) -> list[Decision]:
    """Decide every incoming proposal for ``target``.

    ``ctx`` supplies the world snapshot: it must expose
    ``current_floor(region_id)``, ``intended_mu(region_id)`` and
    ``lookahead_scores(region_id, mus)``, the discounted two-step reward
    of the region under each candidate mitigation rate.
    """
    if not incoming:
        return []
    for p in incoming:
        if p.target != target:
            raise DomainError(f"proposal addressed to {p.target}, expected {target}")
    requested = np.asarray([p.requested_floor for p in incoming], dtype=float)
    intended = float(ctx.intended_mu(target))
    cand_mu = np.maximum(intended, requested)
    cand_scores = ctx.lookahead_scores(target, cand_mu)
    intended_score = ctx.lookahead_scores(target, np.asarray([intended]))[0]
    accepted = accept_mask(requested, ctx.current_floor(target), cand_scores, intended_score)
    return [
        Decision(target=target, proposal=p, accepted=bool(a))
        for p, a in zip(incoming, accepted)
    ]


def resolve_floors(decisions: Sequence[Decision], base: MitigationFloorTable) -> MitigationFloorTable:
    """Effective floors: pointwise max of the base table and each region's
    accepted requests. Regions with no accepted proposals keep base values."""
    floors = list(base.floors)
    changed = False
    for d in decisions:
        if d.accepted:
            idx = d.target - 1
            if d.proposal.requested_floor > floors[idx]:
                floors[idx] = d.proposal.requested_floor
                changed = True
    if not changed:
        return base
    return MitigationFloorTable(floors=tuple(floors), regime="custom")


def clamp_action(a: Action, floor: float) -> Action:
    """Raise the mitigation rate to the floor; savings rate is untouched."""
    if not 0.0 <= floor <= 1.0:
        raise DomainError(f"floor must lie in [0, 1], got {floor}")
    if a.mu >= floor:
        return a
    return Action(s=a.s, mu=floor)
