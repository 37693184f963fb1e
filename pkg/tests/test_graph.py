import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from abicap.graph import (
    EdgeWeights,
    GraphTopology,
    edgeless_topology,
    generate_small_world,
    init_weights,
    neighbors,
)


def rng(seed=0):
    return np.random.default_rng(seed)


def ring(n):
    return GraphTopology.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


class TestSmallWorld:
    @pytest.mark.parametrize(
        "n, degree, beta, expected",
        [(20, 3.0, 0.3, 30), (20, 4.0, 0.3, 40), (20, 3.0, 0.0, 30), (20, 3.0, 1.0, 30)],
    )
    def test_exact_edge_count(self, n, degree, beta, expected):
        g = generate_small_world(n, degree, beta, rng())
        assert g.edge_count == expected
        assert g.mean_degree == pytest.approx(degree)

    def test_zero_rewiring_keeps_the_ring(self):
        for seed in range(5):
            g = generate_small_world(20, 3.0, 0.0, rng(seed))
            assert all(g.has_edge(i, (i + 1) % 20) for i in range(20))

    def test_even_degree_without_rewiring_is_the_lattice(self):
        g = generate_small_world(20, 4.0, 0.0, rng())
        lattice = {tuple(sorted((i, (i + k) % 20))) for i in range(20) for k in (1, 2)}
        assert g.edges == lattice

    def test_same_seed_same_graph(self):
        a = generate_small_world(20, 3.0, 0.3, rng(11))
        b = generate_small_world(20, 3.0, 0.3, rng(11))
        assert a.edges == b.edges

    def test_rewiring_changes_something(self):
        a = generate_small_world(20, 4.0, 0.0, rng(3))
        b = generate_small_world(20, 4.0, 1.0, rng(3))
        assert a.edges != b.edges

    @pytest.mark.parametrize(
        "args",
        [(2, 1.0, 0.3), (20, 0.0, 0.3), (20, 20.0, 0.3), (20, 3.0, -0.1), (20, 3.0, 1.5)],
    )
    def test_rejects_bad_arguments(self, args):
        with pytest.raises(ValueError):
            generate_small_world(*args, rng())

    @settings(max_examples=60, deadline=None)
    @given(
        n=st.integers(3, 40),
        frac=st.floats(0.05, 0.9),
        beta=st.floats(0.0, 1.0),
        seed=st.integers(0, 2**32 - 1),
    )
    def test_edge_count_property(self, n, frac, beta, seed):
        degree = max(0.1, frac * (n - 1))
        g = generate_small_world(n, degree, beta, rng(seed))
        assert g.edge_count == int(np.floor(n * degree / 2 + 0.5))
        for i, j in g.edges:
            assert 0 <= i < j < n


class TestTopology:
    def test_edgeless(self):
        g = edgeless_topology(20)
        assert (g.node_count, g.edge_count) == (20, 0)
        assert neighbors(g, 5) == []
        assert edgeless_topology(1).node_count == 1

    def test_ring_neighbors(self):
        assert neighbors(ring(20), 0) == [1, 19]

    def test_neighbors_sorted_and_exclude_self(self):
        g = generate_small_world(20, 3.0, 0.5, rng(4))
        for i in range(20):
            nb = neighbors(g, i)
            assert nb == sorted(nb)
            assert i not in nb

    def test_neighbors_out_of_range(self):
        with pytest.raises(IndexError):
            neighbors(ring(5), 5)

    @pytest.mark.parametrize("edges", [[(1, 1)], [(0, 1), (1, 0)], [(0, 7)]])
    def test_invalid_edges(self, edges):
        with pytest.raises(ValueError):
            GraphTopology.from_edges(5, edges)

    def test_topology_is_frozen(self):
        g = ring(4)
        with pytest.raises(AttributeError):
            g.node_count = 5


class TestWeights:
    def test_init_uniform(self):
        g = generate_small_world(20, 3.0, 0.3, rng())
        w = init_weights(g, 0.3)
        assert len(w) == 30
        assert set(w.to_array()) == {0.3}

    @pytest.mark.parametrize("value", [0.0, 1.0])
    def test_init_boundaries(self, value):
        w = init_weights(ring(6), value)
        assert all(v == value for _, v in w.items())

    @pytest.mark.parametrize("value", [-0.01, 1.01])
    def test_init_rejects_out_of_range(self, value):
        with pytest.raises(ValueError):
            init_weights(ring(6), value)

    def test_symmetric_lookup(self):
        w = init_weights(ring(6), 0.3)
        w[2, 1] = 0.7
        assert w[1, 2] == w[2, 1] == 0.7

    def test_increase_clamps(self):
        w = init_weights(ring(6), 0.95)
        assert w.increase(0, 1, 0.15) == 1.0

    def test_non_edge_rejected(self):
        w = init_weights(ring(6), 0.3)
        with pytest.raises(KeyError):
            w[0, 3]
        with pytest.raises(KeyError):
            w[0, 3] = 0.5

    def test_copy_is_independent(self):
        w = init_weights(ring(6), 0.3)
        c = w.copy()
        c.increase(0, 1, 0.2)
        assert w[0, 1] == 0.3 and c == c.copy() and c != w

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 5), st.floats(0, 0.5)), max_size=40))
    def test_weights_stay_in_unit_interval(self, bumps):
        w = init_weights(ring(6), 0.3)
        for i, amount in bumps:
            w.increase(i, (i + 1) % 6, amount)
        arr = w.to_array()
        assert np.all((arr >= 0) & (arr <= 1))


def test_edge_list_is_sorted():
    g = generate_small_world(12, 4.0, 0.4, rng(2))
    assert g.edge_list == sorted(g.edges)
    assert all(a < b for a, b in g.edge_list)
    assert len(set(itertools.chain.from_iterable(g.edge_list))) <= 12
