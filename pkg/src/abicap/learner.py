"""Single-learner state and the four engagement-mode practice procedures."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graph import EdgeWeights, GraphTopology


class EngagementMode(str, enum.Enum):
    PASSIVE = "passive"
    ACTIVE = "active"
    CONSTRUCTIVE = "constructive"
    INTERACTIVE = "interactive"

    @classmethod
    def parse(cls, text: "str | EngagementMode") -> "EngagementMode":
        """Accept a mode, its full name, or its initial (``P``/``A``/``C``/``I``)."""
        if isinstance(text, EngagementMode):
            return text
        key = str(text).strip().lower()
        for mode in cls:
            if key in (mode.value, mode.value[0]):
                return mode
        raise ValueError(
            f"unknown engagement mode {text!r}; expected one of "
            + ", ".join(m.value for m in cls)
        )

    @property
    def uses_neighbors(self) -> bool:
        return self is not EngagementMode.PASSIVE


MODES = tuple(EngagementMode)


@dataclass(frozen=True)
class ModelParams:
    """Update-rule constants.

    ``b`` is the node difficulty, either one value for every node or one per
    node. ``reinforce_increments`` are the first and second edge increments
    used by constructive reinforcement and by each round of the dyad
    exchange. ``interactive_constructive`` additionally runs constructive
    reinforcement for interactive learners before their exchange.
    """

    b: float | tuple[float, ...] = 0.6
    cl_passive: float = 0.5
    cl_active: float = 0.6
    cl_constructive: float = 0.7
    cl_interactive: float = 0.8
    gain: float = 3.5
    mastery_threshold: float = 0.8
    reinforce_increments: tuple[float, float] = (0.15, 0.1)
    interactive_constructive: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.b, (int, float)):
            object.__setattr__(self, "b", tuple(float(x) for x in self.b))
        object.__setattr__(
            self, "reinforce_increments", tuple(float(x) for x in self.reinforce_increments)
        )
        if self.gain <= 0:
            raise ValueError(f"gain must be > 0, got {self.gain}")
        if not 0.0 < self.mastery_threshold < 1.0:
            raise ValueError(
                f"mastery_threshold must lie in (0, 1), got {self.mastery_threshold}"
            )
        if len(self.reinforce_increments) != 2 or min(self.reinforce_increments) < 0:
            raise ValueError(
                "reinforce_increments must be two non-negative numbers, got "
                f"{self.reinforce_increments}"
            )
        loads = [self.cl_passive, self.cl_active, self.cl_constructive, self.cl_interactive]
        if any(a >= b for a, b in zip(loads, loads[1:])):
            raise ValueError(
                "cognitive load must strictly increase with engagement "
                "(cl_passive < cl_active < cl_constructive < cl_interactive), got "
                + " / ".join(f"{x:g}" for x in loads)
            )

    def cl(self, mode: EngagementMode) -> float:
        return getattr(self, f"cl_{EngagementMode.parse(mode).value}")

    def difficulty(self, node: int) -> float:
        if isinstance(self.b, tuple):
            return self.b[node]
        return float(self.b)


@dataclass
class LearnerState:
    """One simulated learner.

    ``practice_cursor`` is the node the learner is working through (``None``
    once its practice order is exhausted). ``forced_node`` temporarily
    overrides it for scheduled re-practice; :attr:`practicing_node` resolves
    the two.
    """

    agent_id: int
    mode: EngagementMode
    mastery: np.ndarray
    weights: EdgeWeights
    rng: np.random.Generator
    practice_cursor: Optional[int] = 0
    partner_id: Optional[int] = None
    forced_node: Optional[int] = None

    @classmethod
    def fresh(
        cls,
        agent_id: int,
        mode: EngagementMode,
        weights: EdgeWeights,
        rng: np.random.Generator,
        first_node: Optional[int] = 0,
    ) -> "LearnerState":
        n = weights.topology.node_count
        return cls(
            agent_id=agent_id,
            mode=EngagementMode.parse(mode),
            mastery=np.zeros(n, dtype=float),
            weights=weights,
            rng=rng,
            practice_cursor=first_node,
        )

    @property
    def practicing_node(self) -> Optional[int]:
        return self.forced_node if self.forced_node is not None else self.practice_cursor


def sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


def mastery_update(
    state: LearnerState, topology: GraphTopology, params: ModelParams
) -> float:
    """New mastery of the practicing node; does not modify ``state``.

    ``sigmoid(gain * (m_i + [not passive] * sum_j m_j * w_ij) - (b_i + cl_mode))``
    with the sum over neighbours ``j`` of ``i`` using the learner's own weights.
    """
    i = state.practicing_node
    if i is None:
        raise ValueError(f"learner {state.agent_id} has no practicing node")
    m = state.mastery
    drive = m[i]
    if state.mode.uses_neighbors:
        w = state.weights
        for j in topology.neighbors(i):
            drive += m[j] * w[i, j]
    return sigmoid(params.gain * drive - (params.difficulty(i) + params.cl(state.mode)))


def reinforce_edges(
    state: LearnerState,
    topology: GraphTopology,
    increments: Sequence[float] = (0.15, 0.1),
) -> None:
    """Strengthen up to two distinct edges at the practicing node, in place.

    Edges are drawn uniformly without replacement from the learner's stream;
    the first draw receives ``increments[0]`` and the second ``increments[1]``.
    """
    i = state.practicing_node
    if i is None:
        return
    nbrs = topology.neighbors(i)
    if not nbrs:
        return
    k = min(len(increments), len(nbrs))
    picks = state.rng.choice(len(nbrs), size=k, replace=False)
    for amount, p in zip(increments, picks):
        state.weights.increase(i, nbrs[int(p)], amount)


def interactive_exchange(
    state_a: LearnerState,
    state_b: LearnerState,
    topology: GraphTopology,
    increments: Sequence[float] = (0.15, 0.1),
) -> None:
    """Two rounds of weight sharing between dyad partners, in place.

    In round ``r`` each partner in turn draws one edge at its own practicing
    node. If both copies of that edge agree they rise by ``increments[r]``
    (clamped at 1); otherwise both take the larger value.
    """
    for s in (state_a, state_b):
        if s.mode is not EngagementMode.INTERACTIVE:
            raise ValueError(f"learner {s.agent_id} is {s.mode.value}, not interactive")
    if state_a.partner_id != state_b.agent_id or state_b.partner_id != state_a.agent_id:
        raise ValueError(
            f"learners {state_a.agent_id} and {state_b.agent_id} are not partners"
        )
    wa, wb = state_a.weights, state_b.weights
    for amount in increments:
        for picker in (state_a, state_b):
            i = picker.practicing_node
            if i is None:
                continue
            nbrs = topology.neighbors(i)
            if not nbrs:
                continue
            j = nbrs[int(picker.rng.integers(len(nbrs)))]
            x, y = wa[i, j], wb[i, j]
            if x == y:
                wa.increase(i, j, amount)
                wb.increase(i, j, amount)
            else:
                wa[i, j] = wb[i, j] = max(x, y)


def practice(
    state: LearnerState,
    partner: Optional[LearnerState],
    topology: GraphTopology,
    params: ModelParams,
) -> None:
    """One practice step, in place.

    Mastery is updated first from the current weights, then the mode's weight
    dynamics run. For interactive learners both partners are stepped.
    Learners without a practicing node are left untouched.
    """
    interactive = state.mode is EngagementMode.INTERACTIVE
    if interactive and partner is None:
        raise ValueError(f"interactive learner {state.agent_id} needs its partner")
    learners = (state, partner) if interactive else (state,)

    new = [
        mastery_update(s, topology, params) if s.practicing_node is not None else None
        for s in learners
    ]
    for s, value in zip(learners, new):
        if value is not None:
            s.mastery[s.practicing_node] = value

    if state.mode is EngagementMode.CONSTRUCTIVE:
        reinforce_edges(state, topology, params.reinforce_increments)
    elif interactive:
        if params.interactive_constructive:
            for s in learners:
                reinforce_edges(s, topology, params.reinforce_increments)
        interactive_exchange(state, partner, topology, params.reinforce_increments)


def advance_cursor(
    state: LearnerState, params: ModelParams, order: Sequence[int]
) -> None:
    """Move past the cursor node once its mastery is strictly above threshold."""
    cur = state.practice_cursor
    if cur is None or state.mastery[cur] <= params.mastery_threshold:
        return
    pos = list(order).index(cur) + 1
    state.practice_cursor = order[pos] if pos < len(order) else None


def knowledge_count(state: LearnerState, params: ModelParams) -> int:
    return int(np.count_nonzero(state.mastery > params.mastery_threshold))
