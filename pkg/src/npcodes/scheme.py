"""Rotating encoded-transmission discipline.

Time is split into cycles of ``n`` rounds.  In every round ``m`` of the ``n``
connections carry encoded combinations and the other ``k`` send plain data;
the encoded role rotates by one connection per round so that each
connection is encoded exactly ``m`` times per cycle.

Connections are numbered ``1..n``.  Code coordinates are 0-based: in each
round the plain connections (ascending) take coordinates ``0..k-1`` and the
encoded connections (in rotation order) take ``k..n-1``.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .codes import LinearCode


class SchemeError(ValueError):
    pass


@dataclass(frozen=True)
class Packet:
    source_id: int
    payload: int
    round: int
    encoded: bool


@dataclass(frozen=True)
class RoundPlan:
    n: int
    cycle: int
    round: int  # 1..n within the cycle
    protection: tuple[int, ...]  # rotation order
    plain: tuple[int, ...]  # ascending

    @property
    def m(self) -> int:
        return len(self.protection)

    @property
    def k(self) -> int:
        return len(self.plain)

    @property
    def global_round(self) -> int:
        return (self.cycle - 1) * self.n + self.round

    @property
    def protection_set(self) -> frozenset[int]:
        return frozenset(self.protection)

    @property
    def plain_set(self) -> frozenset[int]:
        return frozenset(self.plain)

    @property
    def order(self) -> tuple[int, ...]:
        """Connection held by each code coordinate."""
        return self.plain + self.protection

    def position(self, conn: int) -> int:
        return self.order.index(conn)


def plan_round(n: int, m: int, round: int) -> RoundPlan:
    """Role assignment for global round ``round`` (1-based).

    Round ``j`` of a cycle gives the encoded role to connections
    ``j, j+1, ..., j+m-1`` (wrapping past ``n``).
    """
    if not 1 <= m < n:
        raise SchemeError(f"need 1 <= m < n, got n={n}, m={m}")
    if round < 1:
        raise SchemeError("rounds are numbered from 1")
    cycle, j = divmod(round - 1, n)
    protection = tuple((j + i) % n + 1 for i in range(m))
    plain = tuple(c for c in range(1, n + 1) if c not in protection)
    return RoundPlan(n, cycle + 1, j + 1, protection, plain)


def canonical_plan(code: LinearCode) -> RoundPlan:
    """The round whose role order matches the code's coordinate order."""
    return plan_round(code.n, code.m, code.k + 1)


def _check(code: LinearCode, plan: RoundPlan, data: Sequence[int]):
    if code.generator is None:
        raise SchemeError(f"{code.label} has no generator matrix")
    if (plan.n, plan.k) != (code.n, code.k):
        raise SchemeError(f"plan is for n={plan.n}, k={plan.k} but code is {code.label}")
    if len(data) != code.k:
        raise SchemeError(f"expected {code.k} plain symbols, got {len(data)}")


def codeword_symbols(code: LinearCode, data: Sequence[int]) -> list[int]:
    """``data . G`` with each symbol an int bit-block (XOR is width-agnostic)."""
    g = code.generator
    out = []
    for pos in range(code.n):
        acc = 0
        for i, w in enumerate(g.words):
            if (w >> pos) & 1:
                acc ^= data[i]
        out.append(acc)
    return out


def encode_round(code: LinearCode, plan: RoundPlan, data: Sequence[int]) -> list[Packet]:
    """One packet per connection, ordered by connection id.

    ``data[i]`` is sent in plain by ``plan.plain[i]``; the ``j``-th encoded
    connection of the rotation sends column ``j`` of ``P`` applied to
    ``data``.
    """
    _check(code, plan, data)
    symbols = codeword_symbols(code, data)
    by_conn = dict(zip(plan.order, symbols))
    encoded = plan.protection_set
    return [Packet(c, by_conn[c], plan.global_round, c in encoded) for c in range(1, plan.n + 1)]


# -- round ledger ------------------------------------------------------------

Term = tuple[int, int]  # (source connection, sequence number of its plain symbol)


@dataclass(frozen=True)
class TransmissionRound:
    plan: RoundPlan
    packets: tuple[Packet, ...]
    terms: dict[int, tuple[Term, ...]]  # plain symbols each connection carries

    def data(self) -> tuple[int, ...]:
        """Plain symbols in code-coordinate order."""
        return tuple(self.packets[c - 1].payload for c in self.plan.plain)


def run_rounds(code: LinearCode, rounds: int, source: Callable[[int, int], int],
               start: int = 1) -> list[TransmissionRound]:
    """Transmit ``rounds`` consecutive rounds from per-source queues.

    ``source(conn, seq)`` yields the ``seq``-th plain symbol (1-based) of
    ``conn``.  A plain sender pops its next symbol; an encoded sender mixes
    the symbols popped by the plain senders of the same round.
    """
    n, m = code.n, code.m
    sent = [0] * (n + 1)
    # sources skip their queue on rounds where they were encoders before `start`
    for r in range(1, start):
        for c in plan_round(n, m, r).plain:
            sent[c] += 1
    ledger = []
    for r in range(start, start + rounds):
        plan = plan_round(n, m, r)
        seqs = []
        for c in plan.plain:
            sent[c] += 1
            seqs.append(sent[c])
        data = [source(c, s) for c, s in zip(plan.plain, seqs)]
        packets = encode_round(code, plan, data)
        terms: dict[int, tuple[Term, ...]] = {c: ((c, s),) for c, s in zip(plan.plain, seqs)}
        g = code.generator
        for j, c in enumerate(plan.protection):
            col = code.k + j
            terms[c] = tuple((plan.plain[i], seqs[i]) for i, w in enumerate(g.words) if (w >> col) & 1)
        ledger.append(TransmissionRound(plan, tuple(packets), terms))
    return ledger


def ledger_lines(rounds: Sequence[TransmissionRound], symbolic: bool = False) -> list[str]:
    """Rows ``cycle round conn role payload``, one per connection per round.

    Symbolic payloads name the plain symbol (``x2^1``: second source, first
    symbol) or the encoded connection (``y3``).
    """
    out = []
    for tr in rounds:
        p = tr.plan
        for pkt in tr.packets:
            role = "encoded" if pkt.encoded else "plain"
            if symbolic:
                if pkt.encoded:
                    payload = f"y{pkt.source_id}"
                else:
                    (src, seq), = tr.terms[pkt.source_id]
                    payload = f"x{src}^{seq}"
            else:
                payload = str(pkt.payload)
            out.append(f"{p.cycle} {p.round} {pkt.source_id} {role} {payload}")
    return out


def rotation_table(rounds: Sequence[TransmissionRound]) -> str:
    """Grid of symbolic payloads: one row per connection, one column per round."""
    if not rounds:
        return ""
    n = rounds[0].plan.n
    cells = [[""] * len(rounds) for _ in range(n)]
    for col, tr in enumerate(rounds):
        for pkt in tr.packets:
            if pkt.encoded:
                cells[pkt.source_id - 1][col] = f"y{pkt.source_id}"
            else:
                (src, seq), = tr.terms[pkt.source_id]
                cells[pkt.source_id - 1][col] = f"x{src}^{seq}"
    header = "round    " + " ".join(f"{tr.plan.global_round:>5}" for tr in rounds)
    lines = [header]
    for c in range(n):
        lines.append(f"s{c + 1}->r{c + 1}".ljust(9) + " ".join(f"{x:>5}" for x in cells[c]))
    return "\n".join(lines)


# -- capacity ----------------------------------------------------------------

def capacity(n: int, m: int) -> Fraction:
    """Average normalized capacity ``(n - m)/n`` of a network with ``m`` encoded paths."""
    if n < 1 or not 0 <= m <= n:
        raise SchemeError(f"need n >= 1 and 0 <= m <= n, got n={n}, m={m}")
    return Fraction(n - m, n)


@dataclass(frozen=True)
class CapacityLedger:
    n: int
    m: int
    active: tuple[int, ...]  # rounds each connection spent as a plain sender
    encoded: tuple[int, ...]

    @property
    def normalized(self) -> Fraction:
        # per-round C_N = (1/n) sum_i c_i, averaged over the n rounds of a cycle
        return Fraction(sum(self.active), self.n * self.n)


def cycle_capacity(n: int, m: int, cycle: int = 1) -> CapacityLedger:
    """Count plain/encoded rounds per connection over one cycle of ``plan_round``."""
    active = [0] * n
    encoded = [0] * n
    if m == 0:
        return CapacityLedger(n, m, tuple([n] * n), tuple(encoded))
    for r in range((cycle - 1) * n + 1, cycle * n + 1):
        plan = plan_round(n, m, r)
        for c in plan.plain:
            active[c - 1] += 1
        for c in plan.protection:
            encoded[c - 1] += 1
    return CapacityLedger(n, m, tuple(active), tuple(encoded))
