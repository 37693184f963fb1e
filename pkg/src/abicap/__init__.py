"""Agent-based simulation of procedural learning across ICAP engagement modes.

Learners practise knowledge components arranged in a graph. Mastery of the
practised node follows a sigmoid update whose drive includes neighbour
mastery (for non-passive modes) and whose offset grows with the mode's
cognitive load. Constructive learners strengthen edges; interactive dyads
share edge weights.
"""

from .engine import (
    ConditionResult,
    RunConfig,
    RunResult,
    Schedule,
    SummaryRow,
    aggregate,
    derive_seed,
    pair_dyads,
    run_condition,
    run_experiment,
)
from .graph import (
    EdgeWeights,
    GraphTopology,
    edgeless_topology,
    generate_small_world,
    init_weights,
    neighbors,
)
from .learner import (
    EngagementMode,
    LearnerState,
    ModelParams,
    advance_cursor,
    interactive_exchange,
    knowledge_count,
    mastery_update,
    practice,
    reinforce_edges,
    sigmoid,
)
from .scenarios import SCENARIOS, get_scenario

__version__ = "0.1.0"
