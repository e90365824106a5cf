import numpy as np
import pytest

from rwtopo import (
    Graph,
    UNREACHABLE,
    bfs_distances,
    naive_vs_rwsp,
    preferential_attachment,
    routing_tree,
    run_rwsp,
    run_walk,
    rwsp_path_length,
    walker_seed,
)
from helpers import assert_valid_path, cycle, path_graph, star, triangle, two_triangles


class TestStarMeeting:
    def test_leaf_walkers_meet_at_the_hub(self):
        g = star(4)
        run = run_rwsp(g, [1, 2], 3, seed=42)
        assert sorted(run.states[0].known_peers) == [1]
        assert sorted(run.states[1].known_peers) == [0]
        assert 0 in run.states[0].contact_points
        assert 0 in run.states[1].contact_points
        # the whole star is discovered by either walker alone
        assert run.unions[0].edge_mask.all()
        assert rwsp_path_length(run, 0, 1) == 2
        assert naive_vs_rwsp(run, 0, 1) == (2, 2)

    def test_meeting_event_bookkeeping(self):
        g = path_graph(3)  # 0-1-2, walkers from both ends meet at node 1
        run = run_rwsp(g, [0, 2], 2, seed=0)
        assert run.meetings[0] == []
        (event,) = run.meetings[1]
        assert event.t == 2 and event.at == 1
        assert event.finder == 1 and event.found == frozenset({0})
        # advertisement traced one hop back along walker 0's breadcrumbs
        assert run.costs[1].advertise_hops == 1
        assert run.costs[0].advertise_hops == 0
        # each hand-off routes start -> contact -> peer start
        assert run.costs[0].transfer_hops == 2
        assert run.costs[1].transfer_hops == 2

    def test_no_costs_without_meetings(self):
        run = run_rwsp(two_triangles(), [0, 3], 6, seed=3)
        for cost in run.costs:
            assert cost.advertise_hops == 0 and cost.transfer_hops == 0


class TestDisconnected:
    def test_walkers_keep_their_own_triangles(self):
        run = run_rwsp(two_triangles(), [0, 3], 4, seed=7)
        assert run.states[0].known_peers == frozenset()
        assert run.states[1].known_peers == frozenset()
        assert rwsp_path_length(run, 0, 1) == UNREACHABLE
        assert int(run.unions[0].edge_mask.sum()) == 3
        assert int(run.unions[1].edge_mask.sum()) == 3
        assert not (run.unions[0].edge_mask & run.unions[1].edge_mask).any()


class TestRoutingTree:
    def test_triangle_depths(self):
        run = run_rwsp(triangle(), [0, 1], 3, seed=1)
        tree = routing_tree(run.unions[0], 0)
        assert tree.depth.tolist() == [0, 1, 1]

    def test_path_parents(self):
        g = path_graph(3)
        run = run_rwsp(g, [0, 2], 4, seed=1)
        tree = routing_tree(run.unions[0], 0)
        assert tree.parent[1] == 0 and tree.parent[2] == 1
        assert tree.path_from_root(2) == [0, 1, 2]

    def test_depths_match_independent_bfs_on_materialized_subgraph(self):
        g = preferential_attachment(30, 2, seed=6)
        run = run_rwsp(g, [0, 7, 13], 12, seed=11)
        for i in range(3):
            union = run.unions[i]
            tree = routing_tree(union, run.starts[i])
            materialized = Graph(g.n, g.edges[union.edge_mask])
            assert (tree.depth == bfs_distances(materialized, run.starts[i])).all()

    def test_root_must_be_in_the_union(self):
        run = run_rwsp(two_triangles(), [0, 3], 4, seed=7)
        with pytest.raises(ValueError):
            routing_tree(run.unions[0], 4)


class TestPathLengths:
    def test_discovered_never_beats_true_distance(self):
        for seed in range(30):
            g = preferential_attachment(60, 2, seed=(8, seed))
            rng = np.random.default_rng((9, seed))
            starts = [int(x) for x in rng.choice(60, size=3, replace=False)]
            run = run_rwsp(g, starts, 20, seed=(10, seed))
            for i in range(3):
                true = bfs_distances(g, starts[i])
                for j in range(3):
                    if i == j:
                        continue
                    d = rwsp_path_length(run, i, j)
                    if d != UNREACHABLE:
                        assert d >= int(true[starts[j]])

    def test_symmetry_for_mutually_known_pairs(self):
        for seed in range(15):
            g = preferential_attachment(50, 2, seed=(12, seed))
            run = run_rwsp(g, [0, 10, 20, 30], 25, seed=(13, seed))
            for i in range(4):
                for j in run.states[i].known_peers:
                    assert i in run.states[j].known_peers
                    assert rwsp_path_length(run, i, j) == rwsp_path_length(run, j, i)

    def test_union_subgraphs_identical_within_a_group(self):
        g = preferential_attachment(50, 2, seed=77)
        run = run_rwsp(g, [0, 10, 20], 30, seed=78)
        for i in range(3):
            for j in run.states[i].known_peers:
                assert (run.unions[i].edge_mask == run.unions[j].edge_mask).all()
                assert (run.unions[i].node_mask == run.unions[j].node_mask).all()

    def test_union_edges_are_incident_to_group_visits(self):
        g = preferential_attachment(40, 2, seed=5)
        run = run_rwsp(g, [0, 11], 15, seed=6)
        group_visited = run.unions[0].node_mask
        for eid in np.flatnonzero(run.unions[0].edge_mask):
            u, v = g.edges[eid]
            assert group_visited[u] or group_visited[v]

    def test_tree_route_is_a_valid_path_in_the_graph(self):
        g = preferential_attachment(60, 3, seed=21)
        run = run_rwsp(g, [0, 30], 25, seed=22)
        if 1 in run.states[0].known_peers:
            tree = routing_tree(run.unions[0], 0)
            path = tree.path_from_root(30)
            assert_valid_path(g, path)
            assert len(path) - 1 == rwsp_path_length(run, 0, 1)

    def test_self_pair_rejected(self):
        run = run_rwsp(triangle(), [0, 1], 2, seed=0)
        with pytest.raises(ValueError):
            rwsp_path_length(run, 1, 1)


class TestNaiveVsRwsp:
    def test_star_is_optimal_for_both(self):
        run = run_rwsp(star(4), [1, 2], 2, seed=9)
        assert naive_vs_rwsp(run, 0, 1) == (2, 2)

    def test_discovered_route_never_longer_than_naive(self):
        for seed in range(40):
            g = preferential_attachment(50, 2, seed=(31, seed))
            run = run_rwsp(g, [0, 25], 20, seed=(32, seed))
            if 1 in run.direct_peers[0]:
                naive_len, rwsp_len = naive_vs_rwsp(run, 0, 1)
                assert rwsp_len <= naive_len

    def test_cycle_walks_expose_the_naive_drawback(self):
        # wandering walks install detours the union-topology BFS avoids
        g = cycle(20)
        strictly_better = 0
        met = 0
        for seed in range(100):
            rng = np.random.default_rng((55, seed))
            starts = [int(x) for x in rng.choice(20, size=2, replace=False)]
            run = run_rwsp(g, starts, 32, seed=(55, seed))
            if 1 not in run.direct_peers[0]:
                continue
            met += 1
            naive_len, rwsp_len = naive_vs_rwsp(run, 0, 1)
            assert rwsp_len <= naive_len
            if naive_len > rwsp_len:
                strictly_better += 1
        assert met > 50
        assert strictly_better >= 1

    def test_requires_a_direct_meeting(self):
        run = run_rwsp(two_triangles(), [0, 3], 4, seed=7)
        with pytest.raises(ValueError, match="never met"):
            naive_vs_rwsp(run, 0, 1)


class TestProtocolDeterminismAndScheduling:
    def test_identical_seeds_reproduce_everything(self):
        g = preferential_attachment(80, 2, seed=1)
        a = run_rwsp(g, [0, 20, 40, 60], 30, seed=(5, 5))
        b = run_rwsp(g, [0, 20, 40, 60], 30, seed=(5, 5))
        for i in range(4):
            assert (a.states[i].trace.steps == b.states[i].trace.steps).all()
            assert a.states[i].known_peers == b.states[i].known_peers
            assert a.states[i].contact_points == b.states[i].contact_points
            assert a.costs[i] == b.costs[i]
            assert (a.unions[i].edge_mask == b.unions[i].edge_mask).all()

    def test_walker_trajectories_match_standalone_walks(self):
        g = preferential_attachment(60, 2, seed=2)
        run = run_rwsp(g, [0, 15, 30], 20, seed=(44, 3))
        for i in range(3):
            solo, _ = run_walk(g, run.starts[i], 20, walker_seed((44, 3), i))
            assert (run.states[i].trace.steps == solo.steps).all()

    def test_same_round_collision_resolved_by_walker_id(self):
        # both walkers step onto the middle node in the same round: the
        # lower id registers first, so only the higher id reports a meeting
        g = path_graph(3)
        run = run_rwsp(g, [0, 2], 2, seed=1)
        assert run.meetings[0] == []
        assert len(run.meetings[1]) == 1
        assert run.meetings[1][0].found == frozenset({0})

    def test_meeting_events_are_consistent_with_first_visits(self):
        g = preferential_attachment(40, 2, seed=14)
        run = run_rwsp(g, [0, 10, 20, 30], 18, seed=15)
        first_visit = []
        for i in range(4):
            fv = {}
            for t, v in enumerate(run.states[i].trace.steps.tolist(), start=1):
                fv.setdefault(v, t)
            first_visit.append(fv)
        for i in range(4):
            for event in run.meetings[i]:
                assert i not in event.found
                for j in event.found:
                    tj = first_visit[j].get(event.at)
                    assert tj is not None
                    assert tj < event.t or (tj == event.t and j < i)

    def test_transitive_closure_links_meeting_chains(self):
        # seed picked so walkers 0 and 2 never share a node but both meet 1
        g = path_graph(9)
        run = run_rwsp(g, [0, 4, 8], 4, seed=140)
        s0 = run.states[0].trace.visited
        s2 = run.states[2].trace.visited
        assert not (s0 & s2).any()
        assert 2 not in run.direct_peers[0]
        assert 2 in run.states[0].known_peers
        assert 0 in run.states[2].known_peers
        assert (run.unions[0].edge_mask == run.unions[2].edge_mask).all()

    def test_validation_errors(self):
        g = triangle()
        with pytest.raises(ValueError, match="two walkers"):
            run_rwsp(g, [0], 3, seed=1)
        with pytest.raises(ValueError, match="distinct"):
            run_rwsp(g, [0, 0], 3, seed=1)
        isolated = Graph(4, [[0, 1], [1, 2]])
        with pytest.raises(ValueError, match="isolated"):
            run_rwsp(isolated, [0, 3], 3, seed=1)


def test_generous_budget_makes_every_pair_mutually_known():
    g = preferential_attachment(50, 2, seed=9)
    budget = 25  # half the node count
    fully_linked = 0
    for seed in range(100):
        rng = np.random.default_rng((123, seed))
        starts = [int(x) for x in rng.choice(50, size=4, replace=False)]
        run = run_rwsp(g, starts, budget, seed=(123, seed))
        if all(len(st.known_peers) == 3 for st in run.states):
            fully_linked += 1
    assert fully_linked >= 95
