"""Failure injection, recovery and exhaustive validation.

Failures are erasures at known connections.  Recovery distinguishes three
cases: only encoded paths failed (nothing to do), only plain paths failed,
or a mix.  Operation counts follow the query protocol:

* single-failure codes (``m = 1``): the failed receiver queries the other
  ``n - 1`` receivers and XORs what it gets back;
* plain-only failures with ``m > 1``: the lowest-indexed encoded-path
  receiver sends ``n - m - 1`` queries, then unicasts each decoded symbol
  to its receiver;
* mixed failures: the same decoder queries every surviving receiver it has
  not heard from, i.e. ``n - |failed| - 1`` queries.

``xor_ops`` counts the XORs of the recovery equations actually used: an
equation combining ``w`` surviving symbols costs ``w - 1``.
"""

from __future__ import annotations

import csv
import io
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .codes import LinearCode
from .gf2 import UnrecoverableErasure, erasure_recovery
from .scheme import Packet, RoundPlan, canonical_plan, encode_round

CASES = ("encoded-only", "plain-only", "mixed")


@dataclass(frozen=True)
class FailureScenario:
    failed: frozenset[int]
    round: int = 1

    def __post_init__(self):
        object.__setattr__(self, "failed", frozenset(self.failed))


@dataclass(frozen=True)
class Received:
    packets: tuple[Packet | None, ...]  # None where the link failed

    @property
    def failed(self) -> frozenset[int]:
        return frozenset(i + 1 for i, p in enumerate(self.packets) if p is None)


@dataclass(frozen=True)
class RecoveryStats:
    xor_ops: int
    queries: int
    case_label: str
    recovered: bool
    unicasts: int = 0
    decoder: int | None = None


def inject(packets: Sequence[Packet], scenario: FailureScenario) -> Received:
    n = len(packets)
    bad = [c for c in scenario.failed if not 1 <= c <= n]
    if bad:
        raise ValueError(f"failed connections {sorted(bad)} outside 1..{n}")
    return Received(tuple(None if p.source_id in scenario.failed else p for p in packets))


def recover(received: Received, code: LinearCode, plan: RoundPlan) -> tuple[tuple[int, ...], RecoveryStats]:
    """Restore the round's plain symbols (in code-coordinate order).

    Raises :class:`UnrecoverableErasure` carrying the failed connections when
    the erased coordinates cannot be solved for.
    """
    if code.parity is None:
        raise ValueError(f"{code.label} has no parity-check matrix")
    n, k, m = code.n, code.k, code.m
    if len(received.packets) != n:
        raise ValueError(f"received {len(received.packets)} packets for a length-{n} code")
    order = plan.order
    failed = received.failed
    erased = frozenset(plan.position(c) for c in failed)
    plain_lost = sorted(e for e in erased if e < k)
    enc_lost = [e for e in erased if e >= k]
    symbols = [received.packets[c - 1].payload if c not in failed else 0 for c in order]

    if not plain_lost:
        return tuple(symbols[:k]), RecoveryStats(0, 0, "encoded-only", True)
    if len(failed) == n:
        raise UnrecoverableErasure(failed, "every connection failed")
    try:
        eqs = erasure_recovery(code.parity, erased)
    except UnrecoverableErasure:
        raise UnrecoverableErasure(failed) from None

    xor_ops = 0
    for e in plain_lost:
        mask = eqs[e]
        acc = 0
        j = 0
        while mask:
            if mask & 1:
                acc ^= symbols[j]
            mask >>= 1
            j += 1
        symbols[e] = acc
        xor_ops += eqs[e].bit_count() - 1

    survivors = sorted(set(range(1, n + 1)) - failed)
    if m == 1:
        stats = RecoveryStats(xor_ops, n - 1, "plain-only", True, 0, order[plain_lost[0]])
    else:
        live_encoders = sorted(c for c in plan.protection if c not in failed)
        decoder = live_encoders[0] if live_encoders else survivors[0]
        if not enc_lost:
            stats = RecoveryStats(xor_ops, n - m - 1, "plain-only", True, len(plain_lost), decoder)
        else:
            stats = RecoveryStats(xor_ops, len(survivors) - 1, "mixed", True, len(plain_lost), decoder)
    return tuple(symbols[:k]), stats


# -- exhaustive validation ---------------------------------------------------

@dataclass
class CaseSummary:
    count: int = 0
    xor_min: int | None = None
    xor_max: int | None = None
    queries_min: int | None = None
    queries_max: int | None = None

    def add(self, s: RecoveryStats):
        self.count += 1
        self.xor_min = s.xor_ops if self.xor_min is None else min(self.xor_min, s.xor_ops)
        self.xor_max = s.xor_ops if self.xor_max is None else max(self.xor_max, s.xor_ops)
        self.queries_min = s.queries if self.queries_min is None else min(self.queries_min, s.queries)
        self.queries_max = s.queries if self.queries_max is None else max(self.queries_max, s.queries)


@dataclass
class ValidationReport:
    code: str
    n: int
    k: int
    d: int
    t: int
    patterns_tested: int
    codewords: int
    exhaustive: bool
    failures: int = 0
    witness: tuple[int, ...] | None = None
    cases: dict[str, CaseSummary] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        verdict = "pass" if self.passed else "fail"
        out = f"{self.code} {self.n} {self.k} {self.d} {self.t} {self.patterns_tested} {verdict}"
        if self.witness is not None:
            out += " " + ",".join(map(str, self.witness))
        return out

    def csv_row(self) -> str:
        w = "" if self.witness is None else ";".join(map(str, self.witness))
        buf = io.StringIO()
        csv.writer(buf, lineterminator="").writerow(
            [self.code, self.n, self.k, self.d, self.t, self.patterns_tested, "pass" if self.passed else "fail", w])
        return buf.getvalue()


CSV_HEADER = "code,n,k,d,t,patterns_tested,result,witness"


def _patterns(n: int, t: int, cap: int, rng: random.Random) -> tuple[list[tuple[int, ...]], bool]:
    total = comb(n, t)
    if total <= cap:
        return list(combinations(range(1, n + 1), t)), True
    seen: set[tuple[int, ...]] = set()
    while len(seen) < cap:
        seen.add(tuple(sorted(rng.sample(range(1, n + 1), t))))
    return sorted(seen), False


def bit_sliced_data(k: int, messages: Sequence[int]) -> list[int]:
    """Pack messages into ``k`` symbols: bit ``w`` of symbol ``i`` is bit ``i`` of message ``w``."""
    data = [0] * k
    for w, msg in enumerate(messages):
        for i in range(k):
            if (msg >> i) & 1:
                data[i] |= 1 << w
    return data


def exhaustive_validate(code: LinearCode, t: int, *, max_patterns: int = 100_000,
                        max_codewords: int = 100, seed: int = 0) -> ValidationReport:
    """Erase every ``t``-subset of connections and check exact recovery.

    All ``C(n, t)`` patterns are tried when there are at most
    ``max_patterns`` of them, otherwise a seeded sample.  Every pattern is
    run against all ``2^k`` messages if that fits in ``max_codewords``,
    otherwise against a seeded sample, carried bit-sliced in one round.
    The first failing pattern (lexicographic) is kept as the witness.
    """
    if code.generator is None:
        raise ValueError(f"{code.label} has no generator matrix")
    if not 0 <= t <= code.n:
        raise ValueError(f"failure budget t={t} outside 0..{code.n}")
    rng = random.Random(seed)
    k = code.k
    if (1 << k) <= max_codewords:
        messages = list(range(1 << k))
    else:
        messages = sorted(rng.sample(range(1 << k), max_codewords)) if k < 63 else \
            [rng.getrandbits(k) for _ in range(max_codewords)]
    data = bit_sliced_data(k, messages)
    plan = canonical_plan(code)
    packets = encode_round(code, plan, data)
    patterns, exhaustive = _patterns(code.n, t, max_patterns, rng)
    report = ValidationReport(code.label, code.n, k, code.d_min, t, len(patterns), len(messages),
                              exhaustive and (1 << k) <= max_codewords)
    for pattern in patterns:
        received = inject(packets, FailureScenario(pattern))
        try:
            restored, stats = recover(received, code, plan)
        except UnrecoverableErasure:
            report.failures += 1
            if report.witness is None:
                report.witness = pattern
            continue
        if list(restored) != data:
            report.failures += 1
            if report.witness is None:
                report.witness = pattern
            continue
        report.cases.setdefault(stats.case_label, CaseSummary()).add(stats)
    return report
