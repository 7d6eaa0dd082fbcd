from random import Random

import pytest

from ccgraph import (ColoredDigraph, DistanceTable, NegativeCycleReachable,
                     NonPositiveCycle, NotAcyclic, SpgGraph,
                     UnreachableVertex, build_spg, is_acyclic, sssp)
from ccgraph.testkit import gen_random_positive_cycle_digraph


def cycle_weight(g, edge_ids):
    return sum(int(g.weights[e]) for e in edge_ids)


def check_cycle_stitching(g, vertices, edge_ids):
    k = len(vertices)
    assert k == len(edge_ids) and k >= 2
    for i, e in enumerate(edge_ids):
        assert int(g.tails[e]) == vertices[i]
        assert int(g.heads[e]) == vertices[(i + 1) % k]


def test_single_vertex():
    g = ColoredDigraph(1, 0, [])
    d = sssp(g, 0)
    assert d.dist == [0]
    assert d.reachable(0) and d.distance(0) == 0


def test_two_edge_path():
    g = ColoredDigraph(3, 1, [(0, 1, 1, 1), (1, 2, 1, 1)])
    assert sssp(g, 0).dist == [0, 1, 2]


def test_diamond_distances(diamond):
    d = sssp(diamond, 0)
    assert d.dist == [0, 1, 1, 2]


def test_unreachable_is_none():
    g = ColoredDigraph(3, 1, [(0, 1, 1, 4)])
    d = sssp(g, 0)
    assert d.dist == [0, 4, None]
    assert not d.reachable(2)


def test_negative_cycle_raises_with_witness():
    g = ColoredDigraph(2, 1, [(0, 1, 1, -1), (1, 0, 1, -1)])
    with pytest.raises(NegativeCycleReachable) as info:
        sssp(g, 0)
    exc = info.value
    check_cycle_stitching(g, exc.vertices, exc.edge_ids)
    assert cycle_weight(g, exc.edge_ids) < 0


def test_negative_cycle_not_reached_is_fine():
    g = ColoredDigraph(4, 1, [(0, 1, 1, 2), (2, 3, 1, -1), (3, 2, 1, -1)])
    d = sssp(g, 0)
    assert d.dist == [0, 2, None, None]


def test_modes_agree_on_nonnegative_graphs():
    rng = Random(3)
    for i in range(30):
        g = gen_random_positive_cycle_digraph(rng.randint(2, 9), 2,
                                              rng.random() * 0.5, 100 + i)
        ref = sssp(g, 0, mode="bellman_ford").dist
        assert sssp(g, 0, mode="dijkstra").dist == ref
        assert sssp(g, 0).dist == ref


def test_bfs_mode_on_uniform_weights():
    g = ColoredDigraph(4, 1, [(0, 1, 1, 3), (1, 2, 1, 3), (0, 2, 1, 3),
                              (2, 3, 1, 3)])
    assert sssp(g, 0, mode="bfs").dist == [0, 3, 3, 6]
    assert sssp(g, 0).dist == [0, 3, 3, 6]


def test_bfs_mode_rejects_mixed_weights():
    g = ColoredDigraph(3, 1, [(0, 1, 1, 1), (1, 2, 1, 2)])
    with pytest.raises(ValueError):
        sssp(g, 0, mode="bfs")


def test_dijkstra_rejects_negative_weights():
    g = ColoredDigraph(2, 1, [(0, 1, 1, -1)])
    with pytest.raises(ValueError):
        sssp(g, 0, mode="dijkstra")


def test_auto_uses_bellman_ford_for_negative_dag():
    g = ColoredDigraph(3, 1, [(0, 1, 1, -2), (1, 2, 1, -2), (0, 2, 1, 0)])
    assert sssp(g, 0).dist == [0, -2, -4]


def test_bad_source_rejected(diamond):
    with pytest.raises(ValueError):
        sssp(diamond, 7)


def test_spg_keeps_all_diamond_edges(diamond, diamond_spg):
    assert diamond_spg.edge_count == 4
    assert diamond_spg.root == 0
    assert sorted(diamond_spg.edge_ids.tolist()) == [0, 1, 2, 3]


def test_spg_drops_slack_parallel_edge():
    g = ColoredDigraph(2, 1, [(0, 1, 1, 1), (0, 1, 1, 5)])
    spg = build_spg(g, 0, sssp(g, 0))
    assert spg.edge_ids.tolist() == [0]


def test_zero_cycle_on_shortest_paths_rejected():
    g = ColoredDigraph(3, 1, [(0, 1, 1, 1), (1, 2, 1, 0), (2, 1, 1, 0)])
    d = sssp(g, 0)
    assert d.dist == [0, 1, 1]
    with pytest.raises(NonPositiveCycle) as info:
        build_spg(g, 0, d)
    exc = info.value
    check_cycle_stitching(g, exc.vertices, exc.edge_ids)
    assert cycle_weight(g, exc.edge_ids) == 0


def test_unreachable_vertex_rejected():
    g = ColoredDigraph(3, 1, [(0, 1, 1, 1)])
    with pytest.raises(UnreachableVertex):
        build_spg(g, 0, sssp(g, 0))


def test_distance_table_source_mismatch(diamond):
    d = sssp(diamond, 0)
    with pytest.raises(ValueError):
        build_spg(diamond, 1, d)


def test_stale_distance_table_detected(diamond):
    bogus = DistanceTable(0, [0, 1, 1, 99])
    spg = None
    try:
        spg = build_spg(diamond, 0, bogus)
    except NonPositiveCycle:
        pass
    # distances that tighten no edge into t leave t without in-edges
    if spg is not None:
        assert spg.in_edge_ids()[3] == []


def test_is_acyclic_empty():
    res = is_acyclic(ColoredDigraph(3, 0, []))
    assert res.acyclic and sorted(res.topo_order) == [0, 1, 2]


def test_is_acyclic_two_cycle_witness():
    g = ColoredDigraph(2, 1, [(0, 1, 1, 1), (1, 0, 1, 1)])
    res = is_acyclic(g)
    assert not res.acyclic
    check_cycle_stitching(g, res.cycle_vertices, res.cycle_edges)
    assert sorted(res.cycle_vertices) == [0, 1]


def test_topo_order_is_topological(diamond_spg):
    pos = {v: i for i, v in enumerate(diamond_spg.topo_order)}
    t, h, _, _, ids = diamond_spg.columns()
    for i in range(len(ids)):
        assert pos[int(t[i])] < pos[int(h[i])]


def test_random_positive_spgs_are_acyclic():
    # tight subgraphs of positive-weight digraphs can have no cycles
    for i in range(100):
        rng = Random(1000 + i)
        g = gen_random_positive_cycle_digraph(rng.randint(2, 10),
                                              rng.randint(1, 3),
                                              rng.random() * 0.6, 2000 + i)
        spg = build_spg(g, 0, sssp(g, 0))
        sub = ColoredDigraph(g.n, g.q,
                             [tuple(int(x) for x in (g.tails[e], g.heads[e],
                                                     g.colors[e],
                                                     g.weights[e]))
                              for e in spg.edge_ids.tolist()])
        assert is_acyclic(sub).acyclic


def test_from_dag_keeps_everything(diamond_min):
    spg = SpgGraph.from_dag(diamond_min, 0)
    assert spg.edge_count == 4
    assert spg.in_edge_ids()[3] == [2, 3]


def test_from_dag_rejects_cycle():
    g = ColoredDigraph(2, 1, [(0, 1, 1, 1), (1, 0, 1, 1)])
    with pytest.raises(NotAcyclic) as info:
        SpgGraph.from_dag(g, 0)
    check_cycle_stitching(g, info.value.vertices, info.value.edge_ids)


def test_from_dag_validates_supplied_order(diamond_min):
    spg = SpgGraph.from_dag(diamond_min, 0, topo_order=[0, 1, 2, 3])
    assert spg.topo_order == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        SpgGraph.from_dag(diamond_min, 0, topo_order=[3, 2, 1, 0])
    with pytest.raises(ValueError):
        SpgGraph.from_dag(diamond_min, 0, topo_order=[0, 0, 2, 3])


def test_spg_in_degree_by_color(diamond_spg):
    pi = diamond_spg.in_degree_by_color()
    assert pi.count(3, 1) == 1 and pi.count(3, 2) == 1
    assert pi.count(1, 1) == 1 and pi.count(1, 2) == 0
