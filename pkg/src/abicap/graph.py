"""Knowledge-component graphs and per-learner edge-weight tables.

A :class:`GraphTopology` is shared by every learner in a run and never
changes. Each learner owns an :class:`EdgeWeights` table over that topology;
only the weights evolve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

Edge = tuple[int, int]


def _canonical(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class GraphTopology:
    """Undirected simple graph on nodes ``0 .. node_count - 1``.

    Edges are stored as ``(low, high)`` pairs. Adjacency lists are built once
    at construction and are sorted ascending.
    """

    node_count: int
    edges: frozenset[Edge]
    _adjacency: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise ValueError(f"node_count must be >= 1, got {self.node_count}")
        canon = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if not (0 <= i < self.node_count and 0 <= j < self.node_count):
                raise ValueError(f"edge ({i}, {j}) outside [0, {self.node_count})")
            e = _canonical(int(i), int(j))
            if e in canon:
                raise ValueError(f"duplicate edge {e}")
            canon.add(e)
        object.__setattr__(self, "edges", frozenset(canon))
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for i, j in canon:
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(
            self, "_adjacency", tuple(tuple(sorted(a)) for a in adj)
        )

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[Edge]) -> "GraphTopology":
        canon = [_canonical(i, j) for i, j in edges]
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate edges in edge list")
        return cls(node_count, frozenset(canon))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def edge_list(self) -> list[Edge]:
        """Edges in ascending order; the canonical column order for weight arrays."""
        return sorted(self.edges)

    @property
    def mean_degree(self) -> float:
        return 2.0 * len(self.edges) / self.node_count

    def neighbors(self, node: int) -> tuple[int, ...]:
        if not 0 <= node < self.node_count:
            raise IndexError(f"node {node} outside [0, {self.node_count})")
        return self._adjacency[node]

    def has_edge(self, i: int, j: int) -> bool:
        return _canonical(i, j) in self.edges


def neighbors(topology: GraphTopology, node: int) -> list[int]:
    """Ascending list of nodes adjacent to ``node``."""
    return list(topology.neighbors(node))


def edgeless_topology(node_count: int) -> GraphTopology:
    return GraphTopology(node_count, frozenset())


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def generate_small_world(
    node_count: int,
    mean_degree: float,
    rewire_prob: float,
    rng: np.random.Generator,
) -> GraphTopology:
    """Watts-Strogatz style graph with an exact (possibly odd) mean degree.

    Construction:

    1. ring lattice where each node links to its ``h = floor(mean_degree / 2)``
       nearest neighbours on each side (``n * h`` edges);
    2. ``round(n * (mean_degree - 2h) / 2)`` extra edges drawn uniformly
       without replacement from the non-edges, so the total is
       ``round(n * mean_degree / 2)``;
    3. every lattice edge ``(u, v)`` is visited in construction order and,
       with probability ``rewire_prob``, replaced by ``(u, w)`` with ``w``
       drawn uniformly from nodes not already adjacent to ``u``.

    Rewiring preserves the edge count. Connectivity is not enforced.
    Halves are rounded up.
    """
    if node_count < 3:
        raise ValueError(f"node_count must be >= 3, got {node_count}")
    if not 0 < mean_degree < node_count:
        raise ValueError(
            f"mean_degree must lie in (0, {node_count}), got {mean_degree}"
        )
    if not 0.0 <= rewire_prob <= 1.0:
        raise ValueError(f"rewire_prob must lie in [0, 1], got {rewire_prob}")
    target = _round_half_up(node_count * mean_degree / 2)
    if target > node_count * (node_count - 1) // 2:
        raise ValueError(
            f"{target} edges do not fit in a simple graph on {node_count} nodes"
        )

    half = int(mean_degree // 2)
    lattice = [
        _canonical(i, (i + k) % node_count)
        for i in range(node_count)
        for k in range(1, half + 1)
    ]
    edges = set(lattice)

    n_extra = target - len(edges)
    if n_extra > 0:
        free = [
            (i, j)
            for i in range(node_count)
            for j in range(i + 1, node_count)
            if (i, j) not in edges
        ]
        picks = rng.choice(len(free), size=n_extra, replace=False)
        edges.update(free[int(p)] for p in picks)

    for i in range(node_count):
        for k in range(1, half + 1):
            u, v = i, (i + k) % node_count
            if rng.random() >= rewire_prob:
                continue
            candidates = [
                w for w in range(node_count)
                if w != u and _canonical(u, w) not in edges
            ]
            if not candidates:
                continue
            w = candidates[int(rng.integers(len(candidates)))]
            edges.remove(_canonical(u, v))
            edges.add(_canonical(u, w))

    return GraphTopology(node_count, frozenset(edges))


class EdgeWeights:
    """One learner's private edge strengths, each kept in ``[0, 1]``.

    Lookups are symmetric; non-edges raise ``KeyError`` rather than reading
    as zero so that callers cannot silently create edges.
    """

    __slots__ = ("topology", "_w")

    def __init__(self, topology: GraphTopology, weights: dict[Edge, float]):
        self.topology = topology
        self._w = weights

    def __getitem__(self, edge: Edge) -> float:
        return self._w[_canonical(*edge)]

    def __setitem__(self, edge: Edge, value: float) -> None:
        key = _canonical(*edge)
        if key not in self._w:
            raise KeyError(f"{key} is not an edge of the topology")
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"edge weight {value} outside [0, 1]")
        self._w[key] = float(value)

    def __len__(self) -> int:
        return len(self._w)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._w)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeWeights):
            return NotImplemented
        return self._w == other._w

    def __repr__(self) -> str:
        return f"EdgeWeights({len(self._w)} edges)"

    def items(self):
        return self._w.items()

    def increase(self, i: int, j: int, amount: float) -> float:
        """Add ``amount`` to edge ``(i, j)``, clamped at 1. Returns the new weight."""
        key = _canonical(i, j)
        new = min(1.0, self._w[key] + amount)
        self._w[key] = new
        return new

    def copy(self) -> "EdgeWeights":
        return EdgeWeights(self.topology, dict(self._w))

    def to_array(self) -> np.ndarray:
        """Weights in ``topology.edge_list`` order."""
        return np.array([self._w[e] for e in self.topology.edge_list], dtype=float)


def init_weights(topology: GraphTopology, initial_weight: float) -> EdgeWeights:
    if not 0.0 <= initial_weight <= 1.0:
        raise ValueError(f"initial_weight must lie in [0, 1], got {initial_weight}")
    return EdgeWeights(topology, {e: float(initial_weight) for e in topology.edges})
