"""Multi-walker short-path discovery (RWSP).

``h`` walkers crawl the graph in lockstep rounds: every walker takes step
``t`` before any takes ``t+1``, and a walker stepping onto a node that
carries another walker's breadcrumb learns of that walker (and advertises
itself back along the breadcrumb trail).  When the budgets are spent,
walkers ship their discovered subgraphs to every known peer through the
contact nodes where they met; peer knowledge is then closed transitively so
that every walker in a meeting-connected group ends up holding the same
union topology G*, on which it routes via a breadth-first shortest-path
tree.

Same-round collisions are resolved in walker-id order: if two walkers reach
a fresh node in the same round, the lower id registers first and only the
higher id sees a breadcrumb.  All scheduling is deterministic given
(graph, starts, budget, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, UNREACHABLE, bfs_tree
from .walker import (
    BreadcrumbTable,
    WalkTrace,
    naive_route,
    retrace_to_start,
    run_walk,
    walker_seed,
)


@dataclass(frozen=True)
class MeetingEvent:
    """Walker ``finder`` stepping onto breadcrumbs of the ``found`` walkers.

    Only previously unknown peers are reported: re-treading territory of an
    already-known walker produces no event (and no repeat advertisement).
    """

    t: int
    finder: int
    found: frozenset[int]
    at: int


@dataclass(frozen=True)
class MessagingCost:
    """Hop budget spent by one walker on protocol messages.

    ``advertise_hops`` pay for the "I found your breadcrumb" notifications it
    sent at meeting time; ``transfer_hops`` pay for delivering its discovered
    subgraph to each directly met peer (start -> contact node -> peer start,
    both halves along breadcrumb paths).
    """

    advertise_hops: int
    transfer_hops: int


@dataclass(frozen=True)
class WalkerState:
    """End-of-protocol bookkeeping of one walker."""

    walker_id: int
    start: int
    known_peers: frozenset[int]
    contact_points: frozenset[int]
    trace: WalkTrace
    breadcrumbs: BreadcrumbTable

    @property
    def discovered_nodes(self) -> np.ndarray:
        return self.trace.visited

    @property
    def discovered_edges(self) -> np.ndarray:
        return self.trace.covered_edges


@dataclass(frozen=True)
class UnionSubgraph:
    """The merged discovered topology G*(i) a walker routes on.

    ``edge_mask``/``node_mask`` select the union of covered edges and visited
    nodes over the owner's whole meeting-connected group.  Covered edges may
    lead to unvisited endpoints; those are legitimate route hops because the
    walker read them off a visited node's neighbor list.
    """

    owner: int
    graph: Graph
    node_mask: np.ndarray
    edge_mask: np.ndarray


@dataclass(frozen=True)
class RoutingTree:
    """Breadth-first shortest-path tree of a union subgraph."""

    root: int
    parent: np.ndarray
    depth: np.ndarray

    def path_from_root(self, node: int) -> list[int]:
        if self.depth[node] == UNREACHABLE:
            raise ValueError(f"node {node} not reachable in the routing tree")
        path = [int(node)]
        while path[-1] != self.root:
            path.append(int(self.parent[path[-1]]))
        return path[::-1]


@dataclass
class ProtocolRun:
    """Everything produced by one run_rwsp invocation."""

    graph: Graph
    budget: int
    starts: list[int]
    states: list[WalkerState]
    unions: list[UnionSubgraph]
    meetings: list[list[MeetingEvent]]
    costs: list[MessagingCost]
    direct_peers: list[frozenset[int]]
    pair_advertise_hops: dict = field(default_factory=dict)
    pair_transfer_hops: dict = field(default_factory=dict)

    @property
    def h(self) -> int:
        return len(self.starts)


def run_rwsp(g: Graph, starts, budget: int, seed) -> ProtocolRun:
    """Simulate the full discovery protocol for ``h`` walkers.

    Walker ``i`` draws its private RNG stream from ``(seed, i)``, so the
    trajectories equal standalone :func:`rwtopo.walker.run_walk` calls with
    the same derived seeds, and the whole run is reproducible.

    Parameters
    ----------
    g : Graph
    starts : sequence of distinct node ids, each with degree >= 1
    budget : steps per walker (sequence length)
    seed : master seed (int or sequence of int)
    """
    starts = [int(s) for s in starts]
    h = len(starts)
    if h < 2:
        raise ValueError("need at least two walkers")
    if len(set(starts)) != h:
        raise ValueError("start nodes must be distinct")
    for s in starts:
        if not 0 <= s < g.n:
            raise ValueError(f"start node {s} out of range")
        if g.degree(s) < 1:
            raise ValueError(f"start node {s} is isolated")

    traces: list[WalkTrace] = []
    crumbs: list[BreadcrumbTable] = []
    for i in range(h):
        tr, bc = run_walk(g, starts[i], budget, walker_seed(seed, i), walker_id=i)
        traces.append(tr)
        crumbs.append(bc)

    # Round at which each walker first visits each node (0 = never): the
    # simulation-level breadcrumb registry used for meeting detection.
    first_visit = np.zeros((h, g.n), dtype=np.int64)
    for i in range(h):
        uniq, first = np.unique(traces[i].steps, return_index=True)
        first_visit[i, uniq] = first + 1

    known: list[set[int]] = [set() for _ in range(h)]
    contacts: list[dict[int, int]] = [{} for _ in range(h)]  # node -> round learned
    meetings: list[list[MeetingEvent]] = [[] for _ in range(h)]
    pair_adv: dict[tuple[int, int], int] = {}
    for t in range(1, budget + 1):
        for i in range(h):
            v = int(traces[i].steps[t - 1])
            new = [
                j
                for j in range(h)
                if j != i
                and j not in known[i]
                and first_visit[j, v]
                and (first_visit[j, v] < t or (first_visit[j, v] == t and j < i))
            ]
            if not new:
                continue
            meetings[i].append(MeetingEvent(t=t, finder=i, found=frozenset(new), at=v))
            known[i].update(new)
            contacts[i].setdefault(v, t)
            for j in new:
                hops = len(retrace_to_start(crumbs[j], v)) - 1
                pair_adv[(i, j)] = pair_adv.get((i, j), 0) + hops
                known[j].add(i)
                contacts[j].setdefault(v, t)

    direct_peers = [frozenset(known[i]) for i in range(h)]

    # Subgraph hand-off to every directly met peer, routed start -> contact
    # node (sender's breadcrumbs) -> peer start (receiver's breadcrumbs).
    # All sends are computed from the end-of-walk contact sets; receptions
    # are applied afterwards so the schedule cannot influence the routes.
    end_of_walk_contacts = [list(contacts[i]) for i in range(h)]
    pair_tr: dict[tuple[int, int], int] = {}
    receptions: list[tuple[int, int]] = []
    for i in range(h):
        for j in sorted(direct_peers[i]):
            contact = next(
                v for v in end_of_walk_contacts[i] if traces[j].visited[v]
            )  # earliest learned contact the peer has visited
            hops = (len(retrace_to_start(crumbs[i], contact)) - 1) + (
                len(retrace_to_start(crumbs[j], contact)) - 1
            )
            pair_tr[(i, j)] = hops
            receptions.append((j, contact))
    for j, v in receptions:
        contacts[j].setdefault(v, budget + 1)  # (sender, v) reception

    # Transitive closure of peer knowledge: meeting-connected groups share
    # everything, so indirectly linked walkers also exchange subgraphs.
    group_of = list(range(h))

    def find(x: int) -> int:
        while group_of[x] != x:
            group_of[x] = group_of[group_of[x]]
            x = group_of[x]
        return x

    for i in range(h):
        for j in direct_peers[i]:
            ri, rj = find(i), find(j)
            if ri != rj:
                group_of[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in range(h):
        groups.setdefault(find(i), []).append(i)

    node_masks: dict[int, np.ndarray] = {}
    edge_masks: dict[int, np.ndarray] = {}
    for root, members in groups.items():
        nm = np.zeros(g.n, dtype=bool)
        em = np.zeros(g.m, dtype=bool)
        for i in members:
            nm |= traces[i].visited
            em |= traces[i].covered_edges
        node_masks[root] = nm
        edge_masks[root] = em

    states: list[WalkerState] = []
    unions: list[UnionSubgraph] = []
    costs: list[MessagingCost] = []
    for i in range(h):
        root = find(i)
        peers = frozenset(j for j in groups[root] if j != i)
        states.append(
            WalkerState(
                walker_id=i,
                start=starts[i],
                known_peers=peers,
                contact_points=frozenset(contacts[i]),
                trace=traces[i],
                breadcrumbs=crumbs[i],
            )
        )
        unions.append(
            UnionSubgraph(owner=i, graph=g, node_mask=node_masks[root], edge_mask=edge_masks[root])
        )
        costs.append(
            MessagingCost(
                advertise_hops=sum(v for (a, _), v in pair_adv.items() if a == i),
                transfer_hops=sum(v for (a, _), v in pair_tr.items() if a == i),
            )
        )

    return ProtocolRun(
        graph=g,
        budget=budget,
        starts=starts,
        states=states,
        unions=unions,
        meetings=meetings,
        costs=costs,
        direct_peers=direct_peers,
        pair_advertise_hops=pair_adv,
        pair_transfer_hops=pair_tr,
    )


def routing_tree(union: UnionSubgraph, root: int) -> RoutingTree:
    """Breadth-first shortest-path tree of G*(i) rooted at ``root``.

    The graph is unweighted, so the breadth-first tree realizes hop-minimal
    routes on the discovered topology; depth equals the G* hop distance for
    every reachable node.
    """
    if not 0 <= root < union.graph.n or not union.node_mask[root]:
        raise ValueError(f"root {root} is not part of the union subgraph")
    dist, parent = bfs_tree(union.graph, root, edge_mask=union.edge_mask)
    return RoutingTree(root=int(root), parent=parent, depth=dist)


def rwsp_path_length(run: ProtocolRun, i: int, j: int) -> int:
    """Discovered route length (hops) from walker i's start to walker j's.

    UNREACHABLE when the walkers never became peers or j's start is not
    reachable inside G*(i).
    """
    if i == j:
        raise ValueError("walker pair must be distinct")
    if j not in run.states[i].known_peers:
        return UNREACHABLE
    tree = routing_tree(run.unions[i], run.starts[i])
    return int(tree.depth[run.starts[j]])


def naive_vs_rwsp(run: ProtocolRun, i: int, j: int) -> tuple[int, int]:
    """Side-by-side (naive breadcrumb route, discovered shortest route) lengths.

    Requires a direct meeting: the naive route only exists when the two
    walks actually shared a node.
    """
    route = naive_route(
        run.states[i].trace,
        run.states[i].breadcrumbs,
        run.states[j].trace,
        run.states[j].breadcrumbs,
    )
    if route is None:
        raise ValueError(f"walkers {i} and {j} never met")
    return len(route) - 1, rwsp_path_length(run, i, j)
