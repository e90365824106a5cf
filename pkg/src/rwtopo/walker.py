"""Budgeted simple random walks with breadcrumb trails.

A walk of budget ``B`` is the node sequence ``X(1..B)`` with ``X(1)`` the
start node and each subsequent entry a uniformly random neighbor of the
previous one.  Alongside the raw sequence the walker keeps

* its visited set (``X`` without repeats),
* the covered-edge set: every edge incident to a visited node (neighbor
  lists are readable at no extra cost, so covering a node covers all its
  edges), and
* a breadcrumb per node, installed at the first visit only and pointing to
  the node the walker arrived from.  Breadcrumb chains therefore form a tree
  rooted at the start, and retracing them can never loop.

Budgets count sequence entries (``len(steps) == B``), so a budget-1 walk is
just the start node.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph


def _as_seed_tuple(seed) -> tuple[int, ...]:
    if isinstance(seed, (int, np.integer)):
        return (int(seed),)
    return tuple(int(s) for s in seed)


def walker_seed(seed, walker_id: int) -> tuple[int, ...]:
    """Derive walker ``walker_id``'s private RNG seed from a master seed.

    The derivation depends only on (master seed, walker id), so walks produce
    identical traces whether they are run serially or in parallel.
    """
    return _as_seed_tuple(seed) + (int(walker_id),)


@dataclass(frozen=True)
class WalkTrace:
    """Full bookkeeping of one finished walk.

    ``visited`` and ``covered_edges`` are dense boolean arrays indexed by
    node id / edge id.  ``edge_count_per_step[t-1]`` and
    ``node_count_per_step[t-1]`` give the covered-edge and visited-node
    counts after step ``t``, which is what coverage-curve measurements read.
    """

    walker_id: int
    start: int
    budget: int
    steps: np.ndarray
    visited: np.ndarray
    covered_edges: np.ndarray
    edge_count_per_step: np.ndarray
    node_count_per_step: np.ndarray

    @property
    def unique_nodes(self) -> int:
        return int(self.node_count_per_step[-1])

    @property
    def covered_edge_count(self) -> int:
        return int(self.edge_count_per_step[-1])

    def visited_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.visited)


@dataclass(frozen=True)
class BreadcrumbTable:
    """First-visit predecessors of one walk (-1 for the start node)."""

    start: int
    predecessor: np.ndarray
    visited: np.ndarray


def run_walk(g: Graph, start: int, budget: int, seed, walker_id: int = 0):
    """Run one budgeted simple random walk.

    Parameters
    ----------
    g : Graph
    start : int
        Starting node; must have at least one neighbor.
    budget : int
        Number of sequence entries (>= 1); the walk makes budget-1 moves.
    seed : int or sequence of int
        RNG seed; identical inputs reproduce the trace exactly.
    walker_id : int
        Recorded on the trace; does not affect the randomness.

    Returns
    -------
    (WalkTrace, BreadcrumbTable)
    """
    if not 0 <= start < g.n:
        raise ValueError(f"start node {start} out of range")
    if g.degree(start) < 1:
        raise ValueError(f"start node {start} is isolated")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    rng = np.random.default_rng(_as_seed_tuple(seed))
    uniform = rng.random(budget - 1)

    steps = np.empty(budget, dtype=np.int64)
    visited = np.zeros(g.n, dtype=bool)
    pred = np.full(g.n, -1, dtype=np.int64)
    covered = np.zeros(g.m, dtype=bool)
    edge_counts = np.empty(budget, dtype=np.int64)
    node_counts = np.empty(budget, dtype=np.int64)

    indptr, adj, adj_eids = g.indptr, g.adj, g.adj_edge_ids
    cur = int(start)
    n_edges = 0
    n_nodes = 0
    for t in range(budget):
        steps[t] = cur
        if not visited[cur]:
            visited[cur] = True
            n_nodes += 1
            if t > 0:
                pred[cur] = steps[t - 1]
            eids = adj_eids[indptr[cur] : indptr[cur + 1]]
            n_edges += int(eids.size) - int(np.count_nonzero(covered[eids]))
            covered[eids] = True
        edge_counts[t] = n_edges
        node_counts[t] = n_nodes
        if t < budget - 1:
            lo = indptr[cur]
            deg = int(indptr[cur + 1] - lo)
            # min() guards the (measure-zero) float edge case u*deg == deg.
            cur = int(adj[lo + min(int(uniform[t] * deg), deg - 1)])

    trace = WalkTrace(
        walker_id=walker_id,
        start=int(start),
        budget=int(budget),
        steps=steps,
        visited=visited,
        covered_edges=covered,
        edge_count_per_step=edge_counts,
        node_count_per_step=node_counts,
    )
    return trace, BreadcrumbTable(start=int(start), predecessor=pred, visited=visited)


def retrace_to_start(bc: BreadcrumbTable, node: int) -> list[int]:
    """Follow breadcrumbs from ``node`` back to the walk's start.

    The result is a loop-free path (consecutive entries graph-adjacent)
    beginning at ``node`` and ending at the start; retracing from the start
    itself yields the single-node path.
    """
    if not 0 <= node < bc.visited.size or not bc.visited[node]:
        raise ValueError(f"node {node} was not visited by this walker")
    path = [int(node)]
    limit = int(bc.visited.size)
    cur = int(node)
    while cur != bc.start:
        cur = int(bc.predecessor[cur])
        if cur < 0 or len(path) > limit:
            raise RuntimeError("corrupt breadcrumb table")
        path.append(cur)
    return path


def naive_route(trace_i: WalkTrace, bc_i: BreadcrumbTable, trace_j: WalkTrace, bc_j: BreadcrumbTable):
    """Breadcrumb-retracing route between two walkers' start nodes.

    If the visited sets are disjoint there is no meeting and the result is
    None.  Otherwise the route runs from walker i's start out to the first
    node of i's sequence (in walk order) that walker j also visited, then
    follows j's breadcrumbs down to j's start.  Both halves are breadcrumb
    paths, so the route is valid in the graph but typically far from
    shortest: it inherits the walks' wandering.
    """
    hits = trace_j.visited[trace_i.steps]
    if not hits.any():
        return None
    meet = int(trace_i.steps[int(np.argmax(hits))])
    out = retrace_to_start(bc_i, meet)[::-1]
    back = retrace_to_start(bc_j, meet)
    return out + back[1:]


def crossing_time(trace_j: WalkTrace, visited_i: np.ndarray):
    """First (1-based) step at which ``trace_j`` enters ``visited_i``.

    ``visited_i`` is a node membership mask, e.g. another walker's final
    visited set.  Returns None when the walk never enters the set.
    """
    hits = visited_i[trace_j.steps]
    if not hits.any():
        return None
    return int(np.argmax(hits)) + 1
