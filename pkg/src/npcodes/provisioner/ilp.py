"""Joint-protection provisioning as a 0/1 integer program.

Variables (``h < l`` for pair variables, arcs ``i -> j`` of the topology):

==============  ===========================================================
``n_h_l``       connections ``h`` and ``l`` are protected together
``z_h_i_j``     working path of ``h`` uses arc ``i -> j``
``b_h_i_j``     secondary (1+1) path of ``h`` uses the arc
``beta_h_i_j``  the secondary path is paid for (``h`` protected alone)
``P_h``         ``h`` needs a source circuit
``p_h_i_j``     source circuit of ``h`` uses the arc
``Pj_h_l_j``    the source circuits of ``h`` and ``l`` meet at node ``j``
``Q_h``, ``q``, ``Qj``  the same for the receiver circuit
``cP_h_l_i_j``  ``h`` and ``l`` are grouped and share the arc on their source circuits
``cQ_h_l_i_j``  same for receiver circuits
``pi_h_i_j``    ``h`` is the lowest-numbered group member on that source-circuit arc
``theta_h_i_j`` same for receiver circuits
==============  ===========================================================

The objective is ``sum c_ij (z + beta + pi/2 + theta/2)``.  Constraint rows
are stored with integer coefficients (rows with halves or thirds are
multiplied through), so the replay check is exact.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .topology import Arc, ConnectionSet, Topology

SENSES = ("<=", ">=", "=")


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[str, int], ...]
    sense: str
    rhs: int

    def activity(self, x: Mapping[str, int]) -> int:
        return sum(a * x.get(v, 0) for v, a in self.terms)

    def holds(self, x: Mapping[str, int]) -> bool:
        act = self.activity(x)
        if self.sense == "<=":
            return act <= self.rhs
        if self.sense == ">=":
            return act >= self.rhs
        return act == self.rhs


@dataclass
class IlpModel:
    name: str = "model"
    variables: list[str] = field(default_factory=list)
    objective: dict[str, Fraction] = field(default_factory=dict)
    constraints: list[Constraint] = field(default_factory=list)
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def var(self, name: str, cost: Fraction | int = 0) -> str:
        if name in self._index:
            raise ValueError(f"variable {name} declared twice")
        self._index[name] = len(self.variables)
        self.variables.append(name)
        if cost:
            self.objective[name] = Fraction(cost)
        return name

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def add(self, name: str, terms: Iterable[tuple[str, int]], sense: str, rhs: int):
        if sense not in SENSES:
            raise ValueError(f"bad sense {sense!r}")
        merged: dict[str, int] = {}
        for v, a in terms:
            if v not in self._index:
                raise KeyError(f"constraint {name} uses undeclared variable {v}")
            merged[v] = merged.get(v, 0) + a
        row = tuple((v, a) for v, a in merged.items() if a)
        self.constraints.append(Constraint(name, row, sense, rhs))

    def objective_value(self, x: Mapping[str, int]) -> Fraction:
        return sum((c * x.get(v, 0) for v, c in self.objective.items()), Fraction(0))

    def violations(self, x: Mapping[str, int]) -> list[str]:
        """Names of violated rows; also flags non-binary or unknown entries."""
        bad = [f"domain:{v}" for v, val in x.items() if v not in self._index or val not in (0, 1)]
        return bad + [c.name for c in self.constraints if not c.holds(x)]


def _pair(h: int, l: int) -> tuple[int, int]:
    return (h, l) if h < l else (l, h)


def nv(h: int, l: int) -> str:
    a, b = _pair(h, l)
    return f"n_{a}_{b}"


def av(prefix: str, h: int, arc: Arc) -> str:
    return f"{prefix}_{h}_{arc[0]}_{arc[1]}"


def build_ilp(t: Topology, c: ConnectionSet, name: str = "npc") -> IlpModel:
    m = IlpModel(name)
    H = list(c.indices)
    pairs = [(h, l) for h in H for l in H if h < l]
    arcs = t.arcs
    cost = t.cost
    nodes = t.nodes
    into = {v: [a for a in arcs if a[1] == v] for v in nodes}
    out = {v: [a for a in arcs if a[0] == v] for v in nodes}
    half = Fraction(1, 2)

    # declaration order doubles as branching order: groupings, working paths, the rest
    for h, l in pairs:
        m.var(nv(h, l))
    for h in H:
        for a in arcs:
            m.var(av("z", h, a), cost[a])
    for h in H:
        for a in arcs:
            m.var(av("b", h, a))
        for a in arcs:
            m.var(av("beta", h, a), cost[a])
    for circ, big, joint in (("p", "P", "Pj"), ("q", "Q", "Qj")):
        for h in H:
            m.var(f"{big}_{h}")
            for a in arcs:
                m.var(av(circ, h, a))
        for h, l in pairs:
            for j in nodes:
                m.var(f"{joint}_{h}_{l}_{j}")
    for shared in ("cP", "cQ"):
        for h, l in pairs:
            for a in arcs:
                m.var(f"{shared}_{h}_{l}_{a[0]}_{a[1]}")
    for lowest in ("pi", "theta"):
        for h in H:
            for a in arcs:
                m.var(av(lowest, h, a), cost[a] * half)

    # I: working paths; II: secondary paths (same shape)
    for fam, x in (("I", "z"), ("II", "b")):
        for h in H:
            s, r = c[h].s, c[h].r
            for a in into[s]:
                m.add(f"{fam}_src_in_{h}_{a[0]}", [(av(x, h, a), 1)], "=", 0)
            for a in out[r]:
                m.add(f"{fam}_dst_out_{h}_{a[1]}", [(av(x, h, a), 1)], "=", 0)
            m.add(f"{fam}_src_out_{h}", [(av(x, h, a), 1) for a in out[s]], "=", 1)
            m.add(f"{fam}_dst_in_{h}", [(av(x, h, a), 1) for a in into[r]], "=", 1)
            for j in nodes:
                if j in (s, r):
                    continue
                m.add(f"{fam}_flow_{h}_{j}",
                      [(av(x, h, a), 1) for a in into[j]] + [(av(x, h, a), -1) for a in out[j]], "=", 0)
    for h, l in pairs:
        for u, v, _ in t.edges:
            m.add(f"I_joint_{h}_{l}_{u}_{v}",
                  [(av("z", h, (u, v)), 1), (av("z", h, (v, u)), 1),
                   (av("z", l, (u, v)), 1), (av("z", l, (v, u)), 1), (nv(h, l), 1)], "<=", 2)
    for h in H:
        others = [nv(h, l) for l in H if l != h]
        for a in arcs:
            m.add(f"II_beta_{h}_{a[0]}_{a[1]}",
                  [(av("beta", h, a), 1), (av("b", h, a), -1)] + [(n, 1) for n in others], ">=", 0)
            m.add(f"II_disj_{h}_{a[0]}_{a[1]}", [(av("beta", h, a), 1), (av("z", h, a), 1)], "<=", 1)

    # III / IV: source and receiver circuits
    for fam, circ, big, joint, end, same in (("III", "p", "P", "Pj", "s", c.gamma),
                                              ("IV", "q", "Q", "Qj", "r", c.delta)):
        for h in H:
            for l in H:
                if l != h:
                    m.add(f"{fam}_need_{h}_{l}", [(f"{big}_{h}", 1), (nv(h, l), -1)], ">=", -same(h, l))
            e = getattr(c[h], end)
            m.add(f"{fam}_out_{h}", [(av(circ, h, a), 1) for a in out[e]] + [(f"{big}_{h}", -1)], "=", 0)
            m.add(f"{fam}_in_{h}", [(av(circ, h, a), 1) for a in into[e]] + [(f"{big}_{h}", -1)], "=", 0)
            for j in nodes:
                m.add(f"{fam}_flow_{h}_{j}",
                      [(av(circ, h, a), 1) for a in into[j]] + [(av(circ, h, a), -1) for a in out[j]], "=", 0)
            # z + (x_ij + x_ji)/2 <= 1, doubled
            for a in arcs:
                m.add(f"{fam}_own_{h}_{a[0]}_{a[1]}",
                      [(av("z", h, a), 2), (av(circ, h, a), 1), (av(circ, h, (a[1], a[0])), 1)], "<=", 2)
        for h, l in permutations(H, 2):
            for a in arcs:
                m.add(f"{fam}_other_{h}_{l}_{a[0]}_{a[1]}",
                      [(av("z", h, a), 2), (av(circ, l, a), 1), (av(circ, l, (a[1], a[0])), 1),
                       (nv(h, l), 2)], "<=", 4)
        for h, l in pairs:
            for j in nodes:
                pj = f"{joint}_{h}_{l}_{j}"
                m.add(f"{fam}_tail_{h}_{l}_{j}",
                      [(av(circ, h, a), 1) for a in into[j]] + [(av(circ, l, a), 1) for a in into[j]]
                      + [(pj, -2)], ">=", 0)
                m.add(f"{fam}_head_{h}_{l}_{j}",
                      [(av(circ, h, a), 1) for a in out[j]] + [(av(circ, l, a), 1) for a in out[j]]
                      + [(pj, -2)], ">=", 0)
            m.add(f"{fam}_meet_{h}_{l}",
                  [(f"{joint}_{h}_{l}_{j}", 1) for j in nodes] + [(nv(h, l), -1)], ">=", -same(h, l))

    # grouping is transitive
    for h, l, k in permutations(H, 3):
        if h < k:
            m.add(f"T_{h}_{l}_{k}", [(nv(h, l), 1), (nv(l, k), 1), (nv(h, k), -1)], "<=", 1)

    # V: circuit cost, each shared arc paid once by the lowest-numbered member
    for fam, circ, shared, lowest in (("V_s", "p", "cP", "pi"), ("V_r", "q", "cQ", "theta")):
        for h, l in pairs:
            for a in arcs:
                m.add(f"{fam}_share_{h}_{l}_{a[0]}_{a[1]}",
                      [(f"{shared}_{h}_{l}_{a[0]}_{a[1]}", 3), (av(circ, h, a), -1),
                       (av(circ, l, a), -1), (nv(h, l), -1)], "<=", 0)
        for l in H:
            for a in arcs:
                m.add(f"{fam}_low_{l}_{a[0]}_{a[1]}",
                      [(av(lowest, l, a), 1), (av(circ, l, a), -1)]
                      + [(f"{shared}_{h}_{l}_{a[0]}_{a[1]}", 1) for h in H if h < l], ">=", 0)
    return m


def assignment_from_paths(m: IlpModel, working: Mapping[int, tuple[str, ...]],
                          backup: Mapping[int, tuple[str, ...]]) -> dict[str, int]:
    """Full 0/1 assignment for independent 1+1 provisioning (every ``n = 0``)."""
    x = dict.fromkeys(m.variables, 0)
    for h, path in working.items():
        for a in zip(path, path[1:]):
            x[av("z", h, a)] = 1
    for h, path in backup.items():
        for a in zip(path, path[1:]):
            x[av("b", h, a)] = 1
            x[av("beta", h, a)] = 1
    return x
