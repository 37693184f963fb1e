import numpy as np
from hypothesis import given, settings, strategies as st

from abicap.engine import RunConfig, run_experiment

from invariants import run_trial


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**63 - 1))
def test_single_step_invariants(seed):
    assert run_trial(np.random.default_rng(seed)) == []


@settings(max_examples=15, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    nodes=st.integers(3, 15),
    weight=st.floats(0, 1),
    rewire=st.floats(0, 1),
)
def test_whole_run_invariants(seed, nodes, weight, rewire):
    cfg = RunConfig(
        node_count=nodes,
        mean_degree=2.0,
        rewire_prob=rewire,
        initial_weight=weight,
        agents_per_condition=4,
        total_steps=20,
        master_seed=seed,
        track_nodes=tuple(range(nodes)),
    )
    res = run_experiment(cfg)
    for name, cond in res.conditions.items():
        assert np.all(np.diff(cond.knowledge, axis=0) >= 0)
        assert np.all((cond.knowledge >= 0) & (cond.knowledge <= nodes))
        trace = cond.mastery_trace
        assert np.all((trace >= 0) & (trace < 1))
        # at most one node moves per learner per step
        moved = np.count_nonzero(np.diff(trace, axis=0), axis=2)
        assert moved.max() <= 1
        weights = np.array([w.to_array() for w in cond.final_weights])
        assert np.all((weights >= 0) & (weights <= 1))
        if name in ("passive", "active"):
            assert np.all(weights == weight)
