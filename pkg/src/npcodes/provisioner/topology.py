"""Topology documents: nodes, undirected spans and connection demands.

Grammar (``#`` starts a comment, blank lines are ignored)::

    nodes:
      a b c d          # ids are [A-Za-z0-9]+, any number per line
    edges:
      a b              # undirected span, cost 1 per direction
      b c 2.5          # optional positive cost (int or decimal)
    connections:
      a c              # s r, numbered 1.. in file order

A line ending in ``:`` opens a section; each section may appear once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

SECTIONS = ("nodes", "edges", "connections")
_ID = re.compile(r"[A-Za-z0-9]+\Z")

Arc = tuple[str, str]


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class Topology:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, Fraction], ...]  # (u, v, cost) in file order

    @property
    def arcs(self) -> tuple[Arc, ...]:
        """Both directions of every span, ``u->v`` before ``v->u``."""
        out = []
        for u, v, _ in self.edges:
            out += [(u, v), (v, u)]
        return tuple(out)

    @property
    def cost(self) -> dict[Arc, Fraction]:
        c = {}
        for u, v, w in self.edges:
            c[(u, v)] = w
            c[(v, u)] = w
        return c

    def neighbors(self, u: str) -> list[str]:
        out = []
        for a, b, _ in self.edges:
            if a == u:
                out.append(b)
            elif b == u:
                out.append(a)
        return sorted(out)


@dataclass(frozen=True)
class Connection:
    h: int
    s: str
    r: str


@dataclass(frozen=True)
class ConnectionSet:
    connections: tuple[Connection, ...]

    def __len__(self) -> int:
        return len(self.connections)

    def __iter__(self):
        return iter(self.connections)

    def __getitem__(self, h: int) -> Connection:
        """1-based lookup by connection index."""
        return self.connections[h - 1]

    @property
    def indices(self) -> range:
        return range(1, len(self.connections) + 1)

    def gamma(self, h: int, l: int) -> int:
        """1 if connections ``h`` and ``l`` share a source."""
        return int(self[h].s == self[l].s)

    def delta(self, h: int, l: int) -> int:
        """1 if connections ``h`` and ``l`` share a destination."""
        return int(self[h].r == self[l].r)


@dataclass
class _Doc:
    nodes: list[str] = field(default_factory=list)
    edges: list[tuple[str, str, Fraction]] = field(default_factory=list)


_COST = re.compile(r"\d+(\.\d+)?\Z")


def _cost(tok: str, where: str) -> Fraction:
    # decimals only, so every cost (and half of it) prints exactly
    if not _COST.match(tok):
        raise TopologyError(f"{where}: cost {tok!r} is not a decimal number")
    c = Fraction(tok)
    if c <= 0:
        raise TopologyError(f"{where}: cost must be positive, got {tok}")
    return c


def parse_topology(text: str, source: str = "<topology>") -> tuple[Topology, ConnectionSet]:
    doc = _Doc()
    section = None
    seen_sections: set[str] = set()
    node_set: set[str] = set()
    spans: set[frozenset[str]] = set()
    pending_edges: list[tuple[int, list[str]]] = []
    pending_conns: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        where = f"{source}:{lineno}"
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.endswith(":"):
            name = line[:-1].strip().lower()
            if name not in SECTIONS:
                raise TopologyError(f"{where}: unknown section {name!r}")
            if name in seen_sections:
                raise TopologyError(f"{where}: section {name!r} repeated")
            seen_sections.add(name)
            section = name
            continue
        toks = line.split()
        if section is None:
            raise TopologyError(f"{where}: content before any section header")
        if section == "nodes":
            for t in toks:
                if not _ID.match(t):
                    raise TopologyError(f"{where}: node id {t!r} must be alphanumeric")
                if t in node_set:
                    raise TopologyError(f"{where}: node {t!r} declared twice")
                node_set.add(t)
                doc.nodes.append(t)
        elif section == "edges":
            if len(toks) not in (2, 3):
                raise TopologyError(f"{where}: edge needs 'u v [cost]'")
            pending_edges.append((lineno, toks))
        else:
            if len(toks) != 2:
                raise TopologyError(f"{where}: connection needs 's r'")
            pending_conns.append((lineno, toks))

    # nodes may be declared after edges; resolve references once all are known
    for lineno, toks in pending_edges:
        where = f"{source}:{lineno}"
        u, v = toks[:2]
        for x in (u, v):
            if x not in node_set:
                raise TopologyError(f"{where}: unknown node {x!r}")
        if u == v:
            raise TopologyError(f"{where}: self-loop at {u!r}")
        span = frozenset((u, v))
        if span in spans:
            raise TopologyError(f"{where}: duplicate edge {u}-{v}")
        spans.add(span)
        doc.edges.append((u, v, _cost(toks[2], where) if len(toks) == 3 else Fraction(1)))
    conns = []
    for lineno, (s, r) in pending_conns:
        where = f"{source}:{lineno}"
        for x in (s, r):
            if x not in node_set:
                raise TopologyError(f"{where}: unknown node {x!r}")
        if s == r:
            raise TopologyError(f"{where}: connection source equals destination ({s!r})")
        conns.append(Connection(len(conns) + 1, s, r))
    return Topology(tuple(doc.nodes), tuple(doc.edges)), ConnectionSet(tuple(conns))


def load_topology(path: str | Path) -> tuple[Topology, ConnectionSet]:
    p = Path(path)
    return parse_topology(p.read_text(), str(p))


def format_topology(t: Topology, c: ConnectionSet) -> str:
    lines = ["nodes:", "  " + " ".join(t.nodes), "edges:"]
    for u, v, w in t.edges:
        lines.append(f"  {u} {v}" if w == 1 else f"  {u} {v} {decimal_text(w)}")
    lines.append("connections:")
    lines += [f"  {x.s} {x.r}" for x in c]
    return "\n".join(lines) + "\n"


def decimal_text(x: Fraction) -> str:
    """Exact decimal text for a rational with a terminating expansion."""
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        raise ValueError(f"{x} has no terminating decimal expansion")
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole, frac = divmod(x.numerator, x.denominator)
    digits = ""
    rem = Fraction(frac, x.denominator)
    while rem:
        rem *= 10
        digits += str(rem.numerator // rem.denominator)
        rem -= rem.numerator // rem.denominator
    return f"{sign}{whole}.{digits}"
