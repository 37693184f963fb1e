"""Run populations of learners through scheduled conditions.

Randomness is derived, never shared: every learner, every dyad pairing and
every generated graph gets its own :class:`numpy.random.SeedSequence` built
from the master seed plus fixed integer words (see :func:`derive_seed`).
Conditions are keyed by the CRC-32 of their name, so editing one condition
cannot perturb another.
"""

from __future__ import annotations

import dataclasses
import zlib
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .graph import EdgeWeights, GraphTopology, edgeless_topology, generate_small_world, init_weights
from .learner import (
    EngagementMode,
    LearnerState,
    ModelParams,
    advance_cursor,
    knowledge_count,
    practice,
)

# Stream purposes; the second entropy word of every derived seed.
_AGENT, _PAIRING, _TOPOLOGY = 0, 1, 2

TOPOLOGY_KINDS = ("small_world", "edgeless")


def derive_seed(master_seed: int, purpose: int, *words: int) -> np.random.SeedSequence:
    """Seed for one independent stream.

    Entropy is ``[master_seed mod 2**64, purpose, *words]``; each word must be
    a non-negative integer. ``SeedSequence`` hashes the list, so streams that
    differ in any word are statistically independent.
    """
    return np.random.SeedSequence([int(master_seed) % 2**64, purpose, *words])


def condition_key(name: str) -> int:
    return zlib.crc32(name.encode("utf-8"))


@dataclass(frozen=True)
class Schedule:
    """Timeline for one condition; step indices are 0-based.

    ``mode_switches`` holds ``(step, mode)`` pairs taking effect at that step.
    ``forced_practice`` holds ``(first_step, last_step, node)`` triples
    (inclusive) during which ``node`` is practised instead of the cursor.
    ``practice_order`` defaults to ascending node index.
    """

    initial_mode: EngagementMode
    mode_switches: tuple[tuple[int, EngagementMode], ...] = ()
    forced_practice: tuple[tuple[int, int, int], ...] = ()
    practice_order: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "initial_mode", EngagementMode.parse(self.initial_mode))
        object.__setattr__(
            self,
            "mode_switches",
            tuple((int(s), EngagementMode.parse(m)) for s, m in self.mode_switches),
        )
        object.__setattr__(
            self,
            "forced_practice",
            tuple((int(a), int(b), int(n)) for a, b, n in self.forced_practice),
        )
        if self.practice_order is not None:
            object.__setattr__(self, "practice_order", tuple(int(n) for n in self.practice_order))
        steps = [s for s, _ in self.mode_switches]
        if any(a >= b for a, b in zip(steps, steps[1:])):
            raise ValueError(f"mode switch steps must be strictly increasing, got {steps}")

    @classmethod
    def constant(cls, mode: EngagementMode | str) -> "Schedule":
        return cls(EngagementMode.parse(mode))

    def validate(self, total_steps: int, node_count: int) -> None:
        for step, _ in self.mode_switches:
            if not 0 <= step < total_steps:
                raise ValueError(f"mode switch at step {step} outside [0, {total_steps})")
        for first, last, node in self.forced_practice:
            if not 0 <= first <= last < total_steps:
                raise ValueError(
                    f"forced practice range {first}-{last} outside [0, {total_steps})"
                )
            if not 0 <= node < node_count:
                raise ValueError(f"forced practice node {node} outside [0, {node_count})")
        if self.practice_order is not None:
            order = self.practice_order
            if len(set(order)) != len(order) or any(not 0 <= n < node_count for n in order):
                raise ValueError(
                    f"practice_order must list distinct nodes in [0, {node_count})"
                )

    def order(self, node_count: int) -> tuple[int, ...]:
        return self.practice_order if self.practice_order is not None else tuple(range(node_count))

    def mode_at(self, step: int) -> EngagementMode:
        mode = self.initial_mode
        for s, m in self.mode_switches:
            if s > step:
                break
            mode = m
        return mode

    def forced_node_at(self, step: int) -> Optional[int]:
        for first, last, node in self.forced_practice:
            if first <= step <= last:
                return node
        return None

    @property
    def modes(self) -> set[EngagementMode]:
        return {self.initial_mode, *(m for _, m in self.mode_switches)}


def default_conditions() -> tuple[tuple[str, Schedule], ...]:
    return tuple((m.value, Schedule.constant(m)) for m in EngagementMode)


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce an experiment.

    The defaults are the four-mode baseline on a 20-node graph. ``rewire_prob``
    and ``initial_weight`` are calibrated values, not measured ones.
    ``shared_topology=False`` gives every dyad (or lone learner) its own
    graph; graph ``k`` depends only on the seed and ``k``, so conditions still
    see the same graphs. ``track_nodes`` lists nodes whose raw mastery is
    recorded every step.
    """

    name: str = "custom"
    topology: str = "small_world"
    node_count: int = 20
    mean_degree: float = 3.0
    rewire_prob: float = 0.0
    initial_weight: float = 0.1
    params: ModelParams = field(default_factory=ModelParams)
    agents_per_condition: int = 50
    total_steps: int = 40
    conditions: tuple[tuple[str, Schedule], ...] = field(default_factory=default_conditions)
    master_seed: int = 42
    shared_topology: bool = True
    track_nodes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "conditions", tuple((str(n), s) for n, s in self.conditions))
        object.__setattr__(self, "track_nodes", tuple(int(n) for n in self.track_nodes))
        if self.topology not in TOPOLOGY_KINDS:
            raise ValueError(f"topology must be one of {TOPOLOGY_KINDS}, got {self.topology!r}")
        if self.total_steps < 1:
            raise ValueError(f"total_steps must be >= 1, got {self.total_steps}")
        if self.agents_per_condition < 1:
            raise ValueError(
                f"agents_per_condition must be >= 1, got {self.agents_per_condition}"
            )
        if not 0.0 <= self.initial_weight <= 1.0:
            raise ValueError(f"initial_weight must lie in [0, 1], got {self.initial_weight}")
        if isinstance(self.params.b, tuple) and len(self.params.b) != self.node_count:
            raise ValueError(
                f"b lists {len(self.params.b)} difficulties for {self.node_count} nodes"
            )
        names = [n for n, _ in self.conditions]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate condition names in {names}")
        for node in self.track_nodes:
            if not 0 <= node < self.node_count:
                raise ValueError(f"tracked node {node} outside [0, {self.node_count})")
        for cname, sched in self.conditions:
            try:
                sched.validate(self.total_steps, self.node_count)
            except ValueError as exc:
                raise ValueError(f"condition {cname!r}: {exc}") from None
            if EngagementMode.INTERACTIVE in sched.modes and self.agents_per_condition % 2:
                raise ValueError(
                    f"condition {cname!r} is interactive but agents_per_condition="
                    f"{self.agents_per_condition} is odd"
                )

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)

    def build_topology(self, index: int = 0) -> GraphTopology:
        """Graph number ``index`` for this seed (0 is the shared graph)."""
        if self.topology == "edgeless":
            return edgeless_topology(self.node_count)
        rng = np.random.default_rng(derive_seed(self.master_seed, _TOPOLOGY, index))
        return generate_small_world(self.node_count, self.mean_degree, self.rewire_prob, rng)


@dataclass
class ConditionResult:
    """Outcome of one condition.

    ``knowledge[t, a]`` is learner ``a``'s knowledge count after ``t + 1``
    steps. ``mastery_trace[t, a, k]`` is the mastery of ``track_nodes[k]``
    after ``t + 1`` steps.
    """

    name: str
    knowledge: np.ndarray
    final_mastery: np.ndarray
    final_weights: list[EdgeWeights]
    track_nodes: tuple[int, ...] = ()
    mastery_trace: Optional[np.ndarray] = None

    @property
    def n_agents(self) -> int:
        return self.knowledge.shape[1]

    @property
    def n_steps(self) -> int:
        return self.knowledge.shape[0]

    def mean(self) -> np.ndarray:
        return self.knowledge.mean(axis=1)

    def sd(self) -> np.ndarray:
        return self.knowledge.std(axis=1, ddof=0)


@dataclass
class RunResult:
    scenario: str
    conditions: dict[str, ConditionResult] = field(default_factory=dict)

    def __getitem__(self, name: str) -> ConditionResult:
        return self.conditions[name]

    def __len__(self) -> int:
        return len(self.conditions)


class SummaryRow(NamedTuple):
    condition: str
    step: int
    mean: float
    sd: float
    n: int


def pair_dyads(agents: Sequence[LearnerState], rng: np.random.Generator) -> list[tuple[int, int]]:
    """Uniformly random perfect matching; sets ``partner_id`` on both sides.

    Returns the dyads as ``(agent_id, agent_id)`` pairs, lower id first,
    sorted ascending.
    """
    if len(agents) % 2:
        raise ValueError(f"cannot pair an odd number of learners ({len(agents)})")
    perm = rng.permutation(len(agents))
    dyads = []
    for k in range(0, len(perm), 2):
        a, b = agents[int(perm[k])], agents[int(perm[k + 1])]
        a.partner_id, b.partner_id = b.agent_id, a.agent_id
        dyads.append(tuple(sorted((a.agent_id, b.agent_id))))
    return sorted(dyads)


def run_condition(
    name: str,
    condition: Schedule,
    config: RunConfig,
    topology: GraphTopology | Sequence[GraphTopology],
    seed: Optional[int] = None,
) -> ConditionResult:
    """Simulate one condition.

    ``topology`` is either the shared graph or one graph per learner. Each
    step: apply the scheduled mode, resolve practicing nodes (forced override
    or cursor), practise every learner (dyads as a unit, lower id first),
    advance cursors, record knowledge counts.
    """
    seed = config.master_seed if seed is None else seed
    params = config.params
    n_agents, n_steps = config.agents_per_condition, config.total_steps
    n_nodes = config.node_count
    condition.validate(n_steps, n_nodes)
    order = condition.order(n_nodes)
    key = condition_key(name)

    if isinstance(topology, GraphTopology):
        graphs = [topology] * n_agents
    else:
        graphs = list(topology)
        if len(graphs) != n_agents:
            raise ValueError(f"{len(graphs)} topologies for {n_agents} learners")

    agents = [
        LearnerState.fresh(
            a,
            condition.initial_mode,
            init_weights(graphs[a], config.initial_weight),
            np.random.default_rng(derive_seed(seed, _AGENT, key, a)),
            first_node=order[0] if order else None,
        )
        for a in range(n_agents)
    ]

    interactive = EngagementMode.INTERACTIVE in condition.modes
    dyad_of: dict[int, int] = {}
    if interactive:
        pair_rng = np.random.default_rng(derive_seed(seed, _PAIRING, key))
        for a, b in pair_dyads(agents, pair_rng):
            dyad_of[a], dyad_of[b] = b, a
            if graphs[b] is not graphs[a]:
                graphs[b] = graphs[a]
                agents[b].weights = init_weights(graphs[a], config.initial_weight)

    tracked = config.track_nodes
    knowledge = np.zeros((n_steps, n_agents), dtype=np.int64)
    trace = np.zeros((n_steps, n_agents, len(tracked))) if tracked else None

    for t in range(n_steps):
        mode = condition.mode_at(t)
        forced = condition.forced_node_at(t)
        for s in agents:
            s.mode = mode
            s.partner_id = dyad_of.get(s.agent_id) if mode is EngagementMode.INTERACTIVE else None
            s.forced_node = forced

        for s in agents:
            if mode is EngagementMode.INTERACTIVE:
                if s.partner_id < s.agent_id:
                    continue
                practice(s, agents[s.partner_id], graphs[s.agent_id], params)
            elif s.practicing_node is not None:
                practice(s, None, graphs[s.agent_id], params)

        for s in agents:
            s.forced_node = None
            advance_cursor(s, params, order)
            knowledge[t, s.agent_id] = knowledge_count(s, params)
            if trace is not None:
                trace[t, s.agent_id] = s.mastery[list(tracked)]

    return ConditionResult(
        name=name,
        knowledge=knowledge,
        final_mastery=np.array([s.mastery for s in agents]),
        final_weights=[s.weights for s in agents],
        track_nodes=tracked,
        mastery_trace=trace,
    )


def experiment_topologies(config: RunConfig) -> GraphTopology | list[GraphTopology]:
    if config.shared_topology:
        return config.build_topology(0)
    return [config.build_topology(k) for k in range(config.agents_per_condition)]


def run_experiment(config: RunConfig) -> RunResult:
    """Run every condition on the same graph(s) and initial weights."""
    topology = experiment_topologies(config)
    result = RunResult(scenario=config.name)
    for name, schedule in config.conditions:
        result.conditions[name] = run_condition(name, schedule, config, topology)
    return result


def aggregate(result: RunResult) -> list[SummaryRow]:
    """Per-step mean and population sd of knowledge, sorted by condition then step."""
    if not result.conditions:
        raise ValueError("cannot aggregate an empty result")
    rows = []
    for name in sorted(result.conditions):
        cond = result.conditions[name]
        for t, (mu, sd) in enumerate(zip(cond.mean(), cond.sd())):
            rows.append(SummaryRow(name, t + 1, float(mu), float(sd), cond.n_agents))
    return rows
