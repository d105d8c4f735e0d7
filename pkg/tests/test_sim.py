import csv

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import codewords
from npcodes.codes import construct_bch, example_code, single_parity_code
from npcodes.gf2 import UnrecoverableErasure
from npcodes.scheme import encode_round, plan_round
from npcodes.sim import CSV_HEADER, FailureScenario, bit_sliced_data, exhaustive_validate, inject, recover


def hidden_codeword(code, erased_positions) -> bool:
    """Some nonzero codeword is supported inside the erased coordinates."""
    keep = [j for j in range(code.n) if j not in erased_positions]
    w = codewords(code.generator.to_array())
    return bool(((w.sum(axis=1) > 0) & (w[:, keep].sum(axis=1) == 0)).any())


@pytest.mark.parametrize("n", range(3, 17))
def test_single_failure_counts(n):
    code = single_parity_code(n)
    for r in range(1, n + 1):
        plan = plan_round(n, 1, r)
        data = list(range(1, n))
        packets = encode_round(code, plan, data)
        assert len(packets) == n
        for c in range(1, n + 1):
            out, st_ = recover(inject(packets, FailureScenario({c}, r)), code, plan)
            assert list(out) == data
            if c in plan.protection:
                assert (st_.xor_ops, st_.queries, st_.case_label) == (0, 0, "encoded-only")
            else:
                assert (st_.xor_ops, st_.queries, st_.case_label) == (n - 2, n - 1, "plain-only")


def test_no_failures():
    code = construct_bch(7, 3)
    plan = plan_round(7, 3, 1)
    packets = encode_round(code, plan, [1, 2, 3, 4])
    out, s = recover(inject(packets, FailureScenario(())), code, plan)
    assert list(out) == [1, 2, 3, 4] and s.xor_ops == 0


def test_mixed_case_label():
    code = construct_bch(15, 5)
    plan = plan_round(15, 8, 3)
    packets = encode_round(code, plan, list(range(7)))
    failed = {plan.plain[0], plan.protection[1]}
    out, s = recover(inject(packets, FailureScenario(failed)), code, plan)
    assert list(out) == list(range(7))
    assert s.case_label == "mixed" and s.unicasts == 1


@given(st.sampled_from([(7, 3), (15, 3), (15, 5)]), st.integers(1, 30), st.data())
def test_recover_iff_no_hidden_codeword(nd, r, data):
    code = construct_bch(*nd)
    plan = plan_round(code.n, code.m, r)
    failed = data.draw(st.sets(st.integers(1, code.n), max_size=code.n - 1))
    msg = data.draw(st.lists(st.integers(0, 2**16), min_size=code.k, max_size=code.k))
    received = inject(encode_round(code, plan, msg), FailureScenario(failed, r))
    positions = {plan.position(c) for c in failed}
    plain_lost = any(p < code.k for p in positions)
    if plain_lost and hidden_codeword(code, positions):
        with pytest.raises(UnrecoverableErasure) as exc:
            recover(received, code, plan)
        assert set(exc.value.positions) == failed
    else:
        assert list(recover(received, code, plan)[0]) == msg


def test_inject_rejects_unknown_connection():
    code = single_parity_code(4)
    packets = encode_round(code, plan_round(4, 1, 1), [1, 2, 3])
    with pytest.raises(ValueError):
        inject(packets, FailureScenario({5}))


def test_bit_slicing():
    assert bit_sliced_data(2, [0b01, 0b10, 0b11]) == [0b101, 0b110]


@pytest.mark.parametrize("which, nd", [(None, (7, 3)), (None, (15, 5)), (4, None)])
def test_validation_passes_at_t_and_fails_above(which, nd):
    code = example_code(which) if which else construct_bch(*nd)
    ok = exhaustive_validate(code, code.t, max_codewords=4096)
    assert ok.passed and ok.exhaustive and ok.witness is None
    bad = exhaustive_validate(code, code.d_min, max_codewords=4096)
    assert not bad.passed and bad.witness is not None
    plan = plan_round(code.n, code.m, code.k + 1)
    assert hidden_codeword(code, {plan.position(c) for c in bad.witness})


def test_hamming_7_witness_is_lexicographically_first():
    rep = exhaustive_validate(construct_bch(7, 3), 3)
    assert rep.line() == f"[7,4,3] 7 4 3 3 {rep.patterns_tested} fail {','.join(map(str, rep.witness))}"
    assert rep.patterns_tested == 35


def test_sampled_patterns_are_seeded():
    code = construct_bch(31, 5)
    a = exhaustive_validate(code, 4, max_patterns=500, seed=3)
    b = exhaustive_validate(code, 4, max_patterns=500, seed=3)
    assert a.csv_row() == b.csv_row() and not a.exhaustive and a.patterns_tested == 500
    row = next(csv.reader([a.csv_row()]))
    assert len(row) == len(CSV_HEADER.split(",")) and row[0] == "[31,21,5]"


def test_validate_needs_matrix():
    from npcodes.catalog import catalog
    paramonly = next(c for c in catalog(n=10))
    with pytest.raises(ValueError):
        exhaustive_validate(paramonly, 1)
