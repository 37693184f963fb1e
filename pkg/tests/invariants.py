"""Randomised single-step checks shared by the property and acceptance suites.

Each trial builds a random graph, parameter set, mode and learner state, runs
one ``practice`` step and returns a list of violated invariants (empty when
everything holds).
"""

import dataclasses

import numpy as np

from abicap.graph import edgeless_topology, generate_small_world, init_weights
from abicap.learner import (
    EngagementMode,
    LearnerState,
    ModelParams,
    mastery_update,
    practice,
)

MODES = list(EngagementMode)


def random_params(rng):
    cl = np.sort(rng.uniform(0.0, 1.5, size=4))
    while np.any(np.diff(cl) <= 0):
        cl = np.sort(rng.uniform(0.0, 1.5, size=4))
    return ModelParams(
        b=float(rng.uniform(0.0, 1.5)),
        cl_passive=float(cl[0]),
        cl_active=float(cl[1]),
        cl_constructive=float(cl[2]),
        cl_interactive=float(cl[3]),
        gain=float(rng.uniform(0.5, 5.0)),
        interactive_constructive=bool(rng.random() < 0.3),
    )


def random_topology(rng):
    n = int(rng.integers(3, 25))
    if rng.random() < 0.1:
        return edgeless_topology(n)
    degree = float(rng.uniform(0.5, min(5.0, n - 1)))
    return generate_small_world(n, degree, float(rng.uniform(0, 1)), rng)


def random_learner(agent_id, mode, topology, rng):
    w = init_weights(topology, float(rng.uniform(0, 1)))
    for e in topology.edges:
        w[e] = float(rng.uniform(0, 1))
    s = LearnerState.fresh(agent_id, mode, w, np.random.default_rng(rng.integers(1 << 32)))
    s.mastery[:] = rng.uniform(0, 1, size=topology.node_count) * (rng.random(topology.node_count) < 0.7)
    s.practice_cursor = int(rng.integers(topology.node_count))
    return s


def _monotonicity(state, topology, params, rng):
    bad = []
    base = mastery_update(state, topology, params)
    i = state.practicing_node
    eps = float(rng.uniform(1e-3, 0.2))

    def probe(label, mutate, direction):
        s = dataclasses.replace(state, mastery=state.mastery.copy(), weights=state.weights.copy())
        p = mutate(s)
        v = mastery_update(s, topology, p or params)
        if direction * (v - base) < 0:
            bad.append(f"{label}: {base} -> {v}")

    probe("raise own mastery", lambda s: s.mastery.__setitem__(i, min(1.0, s.mastery[i] + eps)), +1)
    probe("raise difficulty", lambda s: dataclasses.replace(params, b=params.difficulty(i) + eps), -1)
    cl_key = f"cl_{state.mode.value}"
    probe(
        "raise cognitive load",
        lambda s: _bump_cl(params, cl_key, eps),
        -1,
    )
    nbrs = topology.neighbors(i)
    if nbrs:
        j = nbrs[int(rng.integers(len(nbrs)))]
        probe("raise neighbour mastery", lambda s: s.mastery.__setitem__(j, min(1.0, s.mastery[j] + eps)), +1)
        probe("raise edge weight", lambda s: s.weights.__setitem__((i, j), min(1.0, s.weights[i, j] + eps)), +1)
    if base > 0 and state.mastery[i] > 0:
        probe("raise gain", lambda s: dataclasses.replace(params, gain=params.gain + eps), +1)
    return bad


def _bump_cl(params, key, eps):
    # raise one mode's load and every higher one so the ordering still holds
    order = ["cl_passive", "cl_active", "cl_constructive", "cl_interactive"]
    changes = {k: getattr(params, k) + eps for k in order[order.index(key):]}
    return dataclasses.replace(params, **changes)


def run_trial(rng):
    """One randomised practice step; returns violated invariants."""
    topology = random_topology(rng)
    params = random_params(rng)
    mode = MODES[int(rng.integers(4))]
    a = random_learner(0, mode, topology, rng)
    partner = None
    if mode is EngagementMode.INTERACTIVE:
        partner = random_learner(1, mode, topology, rng)
        a.partner_id, partner.partner_id = 1, 0
    learners = [s for s in (a, partner) if s is not None]

    bad = _monotonicity(a, topology, params, rng)
    before_m = [s.mastery.copy() for s in learners]
    before_w = [s.weights.to_array() for s in learners]
    practice(a, partner, topology, params)

    for s, m0, w0 in zip(learners, before_m, before_w):
        i = s.practicing_node
        m1, w1 = s.mastery, s.weights.to_array()
        if not 0.0 < m1[i] < 1.0:
            bad.append(f"mastery {m1[i]} outside (0, 1)")
        changed = np.flatnonzero(m1 != m0)
        if np.any(changed != i):
            bad.append(f"nodes {changed.tolist()} changed, practicing {i}")
        if np.any((w1 < 0) | (w1 > 1)):
            bad.append("weight outside [0, 1]")
        if np.any(w1 < w0):
            bad.append("weight decreased")
        if mode in (EngagementMode.PASSIVE, EngagementMode.ACTIVE) and not np.array_equal(w0, w1):
            bad.append(f"{mode.value} step changed weights")
    if partner is not None and not params.interactive_constructive:
        # exchanged edges end equal; untouched edges keep their own values
        wa, wb = a.weights.to_array(), partner.weights.to_array()
        touched = (wa != before_w[0]) | (wb != before_w[1])
        if not np.array_equal(wa[touched], wb[touched]):
            bad.append("exchanged edge copies differ")
    return bad
