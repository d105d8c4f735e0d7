from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from npcodes.codes import construct_bch, example_code, single_parity_code
from npcodes.scheme import (SchemeError, capacity, codeword_symbols, cycle_capacity, encode_round,
                            ledger_lines, plan_round, rotation_table, run_rounds)


@st.composite
def nm(draw, max_n=32):
    n = draw(st.integers(2, max_n))
    return n, draw(st.integers(1, n - 1))


@given(nm())
def test_each_connection_encoded_m_times_per_cycle(p):
    n, m = p
    for cycle in (1, 2):
        led = cycle_capacity(n, m, cycle)
        assert led.encoded == (m,) * n
        assert led.active == (n - m,) * n


@given(nm(), st.integers(1, 200))
def test_plan_partitions_connections(p, r):
    n, m = p
    plan = plan_round(n, m, r)
    assert plan.m == m and plan.k == n - m
    assert sorted(plan.order) == list(range(1, n + 1))
    assert list(plan.plain) == sorted(plan.plain)
    assert plan.global_round == r
    assert plan_round(n, m, r + n).protection == plan.protection


def test_rotation_shifts_by_one():
    assert [plan_round(5, 2, r).protection for r in range(1, 7)] == [
        (1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 2)]


@pytest.mark.parametrize("n, m", [(5, 1), (15, 4), (31, 10), (7, 3)])
def test_capacity_is_exact(n, m):
    assert cycle_capacity(n, m).normalized == Fraction(n - m, n) == capacity(n, m)


def test_bad_plans():
    with pytest.raises(SchemeError):
        plan_round(5, 5, 1)
    with pytest.raises(SchemeError):
        plan_round(5, 1, 0)
    with pytest.raises(SchemeError):
        capacity(3, 4)


@given(st.sampled_from([(7, 3), (15, 3), (15, 5)]), st.integers(1, 40), st.data())
def test_encoded_packets_are_codeword(nd, r, data):
    code = construct_bch(*nd)
    plan = plan_round(code.n, code.m, r)
    msg = data.draw(st.lists(st.integers(0, 255), min_size=code.k, max_size=code.k))
    packets = encode_round(code, plan, msg)
    assert len(packets) == code.n
    assert [p.source_id for p in packets] == list(range(1, code.n + 1))
    word = [0] * code.n
    for p in packets:
        word[plan.position(p.source_id)] = p.payload
        assert p.encoded == (p.source_id in plan.protection_set)
    assert word[:code.k] == msg
    # every parity check sums to zero, bitwise on 8-bit blocks
    for row in code.parity.words:
        acc = 0
        for j in range(code.n):
            if row >> j & 1:
                acc ^= word[j]
        assert acc == 0


def test_parity_code_encodes_xor_of_plain():
    code = single_parity_code(4)
    assert codeword_symbols(code, [1, 2, 4]) == [1, 2, 4, 7]


def test_run_rounds_tracks_queues():
    code = single_parity_code(3)
    rounds = run_rounds(code, 3, lambda c, s: 10 * c + s)
    lines = ledger_lines(rounds, symbolic=True)
    assert lines[:3] == ["1 1 1 encoded y1", "1 1 2 plain x2^1", "1 1 3 plain x3^1"]
    # connection 2 encodes in round 2, so its next plain symbol is its second
    assert "1 3 2 plain x2^2" in lines
    assert rounds[1].terms[2] == ((1, 1), (3, 2))
    assert ledger_lines(rounds)[0] == f"1 1 1 encoded {21 ^ 31}"


def test_run_rounds_resume_matches_continuous():
    code = example_code(4)
    src = lambda c, s: (c * 7919 + s * 104729) & 0xFFFF
    full = run_rounds(code, 30, src)
    tail = run_rounds(code, 10, src, start=21)
    assert ledger_lines(full[20:]) == ledger_lines(tail)


def test_rotation_table_layout():
    table = rotation_table(run_rounds(single_parity_code(3), 3, lambda c, s: 0))
    assert table.splitlines() == [
        "round        1     2     3",
        "s1->r1      y1  x1^1  x1^2",
        "s2->r2    x2^1    y2  x2^2",
        "s3->r3    x3^1  x3^2    y3",
    ]
