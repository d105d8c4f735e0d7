import pytest
from hypothesis import given

from graphs import small_instances, topology_text
from oracle import best_pair_by_enumeration
from npcodes.provisioner import parse_topology
from npcodes.provisioner.bhandari import (DisjointPathError, bhandari_pair, greedy_two_pass, path_arcs,
                                          path_cost, shortest_path)


def topo(edges, conns=()):
    nodes = sorted({x for e in edges for x in e[:2]})
    return parse_topology(topology_text(nodes, edges, conns))[0]


def test_four_cycle():
    t = topo([("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)])
    pair = bhandari_pair(t, "a", "c")
    assert pair.total == 4
    assert pair.paths == (("a", "b", "c"), ("a", "d", "c"))


def test_triangle():
    t = topo([("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
    pair = bhandari_pair(t, "a", "b")
    assert pair.total == 3
    assert pair.working == ("a", "b") and pair.backup == ("a", "c", "b")
    assert pair.costs == (1, 2)


TRAP = [("s", "a", 1), ("a", "b", 1), ("b", "r", 1), ("s", "b", 3), ("a", "r", 3)]


def test_trap_graph_beats_greedy():
    t = topo(TRAP)
    assert shortest_path(t, "s", "r") == ("s", "a", "b", "r")
    assert greedy_two_pass(t, "s", "r") is None
    pair = bhandari_pair(t, "s", "r")
    assert pair.total == 8 == best_pair_by_enumeration(t, "s", "r")
    assert not {frozenset(a) for a in path_arcs(pair.paths[0])} & {frozenset(a) for a in path_arcs(pair.paths[1])}


def test_bridge_raises():
    t = topo([("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("c", "d", 1)])
    with pytest.raises(DisjointPathError, match="not 2-link-connected between a and d"):
        bhandari_pair(t, "a", "d")


def test_same_endpoints_rejected():
    t = topo(TRAP)
    with pytest.raises(DisjointPathError):
        bhandari_pair(t, "s", "s")


@given(small_instances(max_nodes=6, max_conns=1, max_cost=5))
def test_matches_enumeration(inst):
    t, c = inst
    s, r = c[1].s, c[1].r
    pair = bhandari_pair(t, s, r)
    assert pair.total == best_pair_by_enumeration(t, s, r)
    assert pair.costs == tuple(path_cost(t, p) for p in pair.paths)
    assert pair.costs[0] <= pair.costs[1]
    for p in pair.paths:
        assert p[0] == s and p[-1] == r and len(set(p)) == len(p)
    assert not {frozenset(a) for a in path_arcs(pair.paths[0])} & {frozenset(a) for a in path_arcs(pair.paths[1])}


@given(small_instances(max_nodes=6, max_conns=1, max_cost=5))
def test_deterministic(inst):
    t, c = inst
    assert bhandari_pair(t, c[1].s, c[1].r) == bhandari_pair(t, c[1].s, c[1].r)
