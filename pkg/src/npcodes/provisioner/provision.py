"""End-to-end provisioning: solve, decode, check, compare with 1+1."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bhandari import PathPair, bhandari_pair, path_arcs
from .bnb import BnbResult, Limits, solve_bnb
from .ilp import IlpModel, assignment_from_paths, av, build_ilp, nv
from .topology import Arc, ConnectionSet, Topology, decimal_text


@dataclass
class ProvisionResult:
    total: Fraction
    working: Fraction
    spare: Fraction
    paths: dict[int, tuple[str, ...]]  # working path per connection
    backups: dict[int, tuple[str, ...]]  # paid secondary paths (unprotected connections)
    groups: list[tuple[int, ...]]
    s_arcs: dict[tuple[int, ...], tuple[Arc, ...]] = field(default_factory=dict)
    r_arcs: dict[tuple[int, ...], tuple[Arc, ...]] = field(default_factory=dict)
    status: str = "optimal"


def groups_from(m: IlpModel, x, c: ConnectionSet) -> list[tuple[int, ...]]:
    H = list(c.indices)
    seen: set[int] = set()
    out = []
    for h in H:
        if h in seen:
            continue
        g = tuple([h] + [l for l in H if l != h and x[nv(h, l)]])
        seen.update(g)
        out.append(g)
    return out


def _walk(arcs: set[Arc], s: str, r: str, nodes: tuple[str, ...]) -> tuple[str, ...]:
    """Follow arcs from ``s`` to ``r``; stray cycles off the walk are ignored."""
    path = [s]
    arcs = set(arcs)
    while path[-1] != r:
        nxt = sorted((b for a, b in arcs if a == path[-1]), key=nodes.index)
        if not nxt:
            raise ValueError(f"arcs do not form a path from {s} to {r}")
        arcs.discard((path[-1], nxt[0]))
        path.append(nxt[0])
    return tuple(path)


def decode(t: Topology, c: ConnectionSet, m: IlpModel, x, status: str = "optimal") -> ProvisionResult:
    cost = t.cost
    groups = groups_from(m, x, c)
    paths, backups = {}, {}
    working = Fraction(0)
    for h in c.indices:
        z = {a for a in t.arcs if x[av("z", h, a)]}
        working += sum((cost[a] for a in z), Fraction(0))
        paths[h] = _walk(z, c[h].s, c[h].r, t.nodes)
        beta = {a for a in t.arcs if x[av("beta", h, a)]}
        if beta:
            backups[h] = _walk(beta, c[h].s, c[h].r, t.nodes)
    s_arcs, r_arcs = {}, {}
    for grp in groups:
        if len(grp) < 2:
            continue
        s_arcs[grp] = tuple(a for a in t.arcs if any(x[av("p", h, a)] for h in grp))
        r_arcs[grp] = tuple(a for a in t.arcs if any(x[av("q", h, a)] for h in grp))
    total = m.objective_value(x)
    return ProvisionResult(total, working, total - working, paths, backups, groups, s_arcs, r_arcs, status)


def disjointness_problems(t: Topology, c: ConnectionSet, res: ProvisionResult) -> list[str]:
    """Graph-level checks that do not look at the ILP rows."""
    out = []
    spans = {h: {frozenset(a) for a in path_arcs(p)} for h, p in res.paths.items()}
    for h, p in res.paths.items():
        if p[0] != c[h].s or p[-1] != c[h].r:
            out.append(f"path {h} does not join {c[h].s} to {c[h].r}")
        if len(set(p)) != len(p):
            out.append(f"path {h} revisits a node")
    for grp in res.groups:
        for i, h in enumerate(grp):
            for l in grp[i + 1:]:
                if spans[h] & spans[l]:
                    out.append(f"working paths {h} and {l} share a span in group {grp}")
        used = set().union(*(spans[h] for h in grp))
        for kind, circ in (("S", res.s_arcs.get(grp, ())), ("R", res.r_arcs.get(grp, ()))):
            if {frozenset(a) for a in circ} & used:
                out.append(f"{kind} circuit of group {grp} touches a working span")
    for h, b in res.backups.items():
        if set(path_arcs(b)) & set(path_arcs(res.paths[h])):
            out.append(f"secondary path {h} reuses a working arc")
    return out


def one_plus_one(t: Topology, c: ConnectionSet) -> dict[int, PathPair]:
    return {x.h: bhandari_pair(t, x.s, x.r) for x in c}


def provision(t: Topology, c: ConnectionSet, limits: Limits = Limits(), seed_with_1p1: bool = True,
              model: IlpModel | None = None) -> tuple[ProvisionResult | None, BnbResult]:
    m = model if model is not None else build_ilp(t, c)
    seed = None
    if seed_with_1p1:
        try:
            pairs = one_plus_one(t, c)
        except ValueError:
            pairs = None
        if pairs is not None:
            seed = assignment_from_paths(m, {h: p.working for h, p in pairs.items()},
                                         {h: p.backup for h, p in pairs.items()})
    sol = solve_bnb(m, limits, incumbent=seed)
    if sol.assignment is None:
        return None, sol
    return decode(t, c, m, sol.assignment, sol.status), sol


@dataclass(frozen=True)
class CostRow:
    instance: str
    scheme: str
    total: Fraction
    working: Fraction
    spare: Fraction
    status: str = "optimal"

    def csv(self) -> str:
        return ",".join([self.instance, self.scheme, decimal_text(self.total),
                         decimal_text(self.working), decimal_text(self.spare)])


COST_HEADER = "instance,scheme,total,working,spare"


def one_plus_one_row(t: Topology, c: ConnectionSet, instance: str) -> CostRow:
    pairs = one_plus_one(t, c)
    work = sum((p.costs[0] for p in pairs.values()), Fraction(0))
    spare = sum((p.costs[1] for p in pairs.values()), Fraction(0))
    return CostRow(instance, "1+1", work + spare, work, spare)


def compare_costs(t: Topology, c: ConnectionSet, instance: str = "instance",
                  limits: Limits = Limits()) -> tuple[CostRow, CostRow]:
    base = one_plus_one_row(t, c, instance)
    res, sol = provision(t, c, limits)
    if res is None:
        raise RuntimeError(f"{instance}: solver returned no solution ({sol.status})")
    return base, CostRow(instance, "npc", res.total, res.working, res.spare, sol.status)
