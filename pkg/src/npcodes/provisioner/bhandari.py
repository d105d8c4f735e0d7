"""Minimum-cost pair of link-disjoint paths.

Shortest path first, then a shortest path in the residual graph where the
first path's arcs are removed and their reverses cost ``-c``; arcs the two
paths use in opposite directions cancel and the rest splits into two paths.
Ties are broken by node order in the topology so the result is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .topology import Arc, Topology


class DisjointPathError(ValueError):
    pass


@dataclass(frozen=True)
class PathPair:
    s: str
    r: str
    paths: tuple[tuple[str, ...], tuple[str, ...]]  # cheaper first
    costs: tuple[Fraction, Fraction]

    @property
    def total(self) -> Fraction:
        return self.costs[0] + self.costs[1]

    @property
    def working(self) -> tuple[str, ...]:
        return self.paths[0]

    @property
    def backup(self) -> tuple[str, ...]:
        return self.paths[1]


def path_arcs(path: tuple[str, ...]) -> list[Arc]:
    return list(zip(path, path[1:]))


def path_cost(t: Topology, path: tuple[str, ...]) -> Fraction:
    c = t.cost
    return sum((c[a] for a in path_arcs(path)), Fraction(0))


def _bellman_ford(nodes: tuple[str, ...], arcs: dict[Arc, Fraction], s: str, r: str):
    dist: dict[str, Fraction | None] = {v: None for v in nodes}
    pred: dict[str, str | None] = {v: None for v in nodes}
    dist[s] = Fraction(0)
    ordered = sorted(arcs, key=lambda a: (nodes.index(a[0]), nodes.index(a[1])))
    for _ in range(len(nodes) - 1):
        changed = False
        for (u, v) in ordered:
            du = dist[u]
            if du is None:
                continue
            nd = du + arcs[(u, v)]
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                changed = True
        if not changed:
            break
    if dist[r] is None:
        return None
    path = [r]
    while path[-1] != s:
        path.append(pred[path[-1]])
        if len(path) > len(nodes):
            raise AssertionError("negative cycle in residual graph")
    return tuple(reversed(path))


def shortest_path(t: Topology, s: str, r: str) -> tuple[str, ...] | None:
    return _bellman_ford(t.nodes, t.cost, s, r)


def bhandari_pair(t: Topology, s: str, r: str) -> PathPair:
    """Two link-disjoint ``s -> r`` paths of minimum total cost."""
    if s == r:
        raise DisjointPathError("source and destination coincide")
    fail = DisjointPathError(f"graph not 2-link-connected between {s} and {r}")
    p1 = shortest_path(t, s, r)
    if p1 is None:
        raise fail
    cost = t.cost
    residual = dict(cost)
    for u, v in path_arcs(p1):
        del residual[(u, v)]
        residual[(v, u)] = -cost[(u, v)]
    p2 = _bellman_ford(t.nodes, residual, s, r)
    if p2 is None:
        raise fail
    used = set(path_arcs(p1))
    for u, v in path_arcs(p2):
        if (v, u) in used:
            used.discard((v, u))  # interlacing: both cancel
        else:
            used.add((u, v))
    paths = []
    for _ in range(2):
        walk = [s]
        while walk[-1] != r:
            nxt = sorted((b for a, b in used if a == walk[-1]), key=t.nodes.index)
            if not nxt:
                raise AssertionError("arc union does not decompose into two paths")
            used.discard((walk[-1], nxt[0]))
            walk.append(nxt[0])
        paths.append(tuple(walk))
    if used:
        raise AssertionError("leftover arcs after decomposition")
    paths.sort(key=lambda p: (path_cost(t, p), len(p), [t.nodes.index(x) for x in p]))
    return PathPair(s, r, (paths[0], paths[1]), (path_cost(t, paths[0]), path_cost(t, paths[1])))


def greedy_two_pass(t: Topology, s: str, r: str) -> tuple[tuple[str, ...], ...] | None:
    """Shortest path, delete its spans, shortest path again (may fail on trap graphs)."""
    p1 = shortest_path(t, s, r)
    if p1 is None:
        return None
    spans = {frozenset(a) for a in path_arcs(p1)}
    rest = Topology(t.nodes, tuple(e for e in t.edges if frozenset(e[:2]) not in spans))
    p2 = shortest_path(rest, s, r)
    return None if p2 is None else (p1, p2)
