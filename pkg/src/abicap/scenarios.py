"""Built-in experiments, each a fully pinned :class:`RunConfig` factory."""

from __future__ import annotations

from typing import Callable

from .engine import RunConfig, Schedule
from .learner import EngagementMode

P, A, C, I = (
    EngagementMode.PASSIVE,
    EngagementMode.ACTIVE,
    EngagementMode.CONSTRUCTIVE,
    EngagementMode.INTERACTIVE,
)

WEEK_LENGTH = 20
REPRACTICE_NODES = 5


def scenario_passive_curve(seed: int = 42) -> RunConfig:
    """One passive learner; node 0's raw mastery is traced every step."""
    return RunConfig(
        name="passive_curve",
        agents_per_condition=1,
        conditions=(("passive", Schedule.constant(P)),),
        track_nodes=(0,),
        master_seed=seed,
    )


def scenario_icap_baseline(seed: int = 42) -> RunConfig:
    return RunConfig(name="icap_baseline", master_seed=seed)


def scenario_edgeless(seed: int = 42) -> RunConfig:
    return RunConfig(name="edgeless", topology="edgeless", master_seed=seed)


def _repractice_week_one() -> tuple[tuple[int, int, int], ...]:
    # first REPRACTICE_NODES nodes of the ascending order, one per step
    return tuple(
        (WEEK_LENGTH + k, WEEK_LENGTH + k, k) for k in range(REPRACTICE_NODES)
    )


def scenario_mceldoon(variant: str = "observed", seed: int = 42) -> RunConfig:
    """Two-week more/less focused processing study on a denser graph.

    lessFP learners are active throughout. moreFP learners are constructive;
    in the ``observed`` variant they drop to active for week two. Both groups
    re-practise five week-one nodes at the start of week two.
    """
    if variant not in ("idealized", "observed"):
        raise ValueError(f"unknown McEldoon variant {variant!r}; use 'idealized' or 'observed'")
    forced = _repractice_week_one()
    switches = ((WEEK_LENGTH, A),) if variant == "observed" else ()
    return RunConfig(
        name=f"mceldoon_{variant}",
        mean_degree=4.0,
        total_steps=2 * WEEK_LENGTH,
        conditions=(
            ("moreFP", Schedule(C, mode_switches=switches, forced_practice=forced)),
            ("lessFP", Schedule(A, forced_practice=forced)),
        ),
        master_seed=seed,
    )


SCENARIOS: dict[str, Callable[[int], RunConfig]] = {
    "passive_curve": scenario_passive_curve,
    "icap_baseline": scenario_icap_baseline,
    "edgeless": scenario_edgeless,
    "mceldoon_idealized": lambda seed=42: scenario_mceldoon("idealized", seed),
    "mceldoon_observed": lambda seed=42: scenario_mceldoon("observed", seed),
}


def get_scenario(scenario_id: str, seed: int = 42) -> RunConfig:
    try:
        factory = SCENARIOS[scenario_id]
    except KeyError:
        raise KeyError(
            f"unknown scenario {scenario_id!r}; valid ids: {', '.join(SCENARIOS)}"
        ) from None
    return factory(seed)
