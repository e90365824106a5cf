"""Small deterministic graphs and assertions shared across test modules."""

from __future__ import annotations

import numpy as np

from rwtopo import Graph


def triangle() -> Graph:
    return Graph(3, [[0, 1], [1, 2], [2, 0]])


def star(leaves: int = 4) -> Graph:
    return Graph(leaves + 1, [[0, i] for i in range(1, leaves + 1)])


def path_graph(k: int) -> Graph:
    return Graph(k, [[i, i + 1] for i in range(k - 1)])


def cycle(k: int) -> Graph:
    return Graph(k, [[i, (i + 1) % k] for i in range(k)])


def complete(k: int) -> Graph:
    return Graph(k, [[i, j] for i in range(k) for j in range(i + 1, k)])


def two_triangles() -> Graph:
    return Graph(6, [[0, 1], [1, 2], [2, 0], [3, 4], [4, 5], [5, 3]])


def assert_valid_path(g: Graph, path) -> None:
    assert len(path) >= 1
    for a, b in zip(path, path[1:]):
        assert g.has_edge(int(a), int(b)), f"{a}-{b} is not an edge"


def degree_multiset(g: Graph) -> list[int]:
    return sorted(int(d) for d in g.degrees)
