import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import brute_dmin, codewords, rank_mod2
from npcodes.gf2 import (BitMatrix, NotAGeneratorMatrix, UnrecoverableErasure, erasure_recovery,
                         has_codeword_of_weight, is_systematic, min_distance, min_distance_by_enumeration,
                         parity_check_from_generator, rank, rref, solve_erasures, systematic_form)


def matrices(max_rows=6, max_cols=10):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(r, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)))


def full_rank(rows):
    return rank_mod2(rows) == len(rows)


def code_rows(rows):
    return full_rank(rows) and len(rows) < len(rows[0])


def test_from_rows_text_round_trip():
    m = BitMatrix.from_rows(["1010", "0111"])
    assert m.shape == (2, 4)
    assert m[0, 0] == 1 and m[0, 1] == 0 and m[1, 3] == 1
    assert BitMatrix.from_text(m.to_text()) == m
    assert np.array_equal(m.to_array(), [[1, 0, 1, 0], [0, 1, 1, 1]])


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        BitMatrix.from_rows(["101", "01"])


@given(matrices())
def test_rank_matches_reference(rows):
    assert rank(BitMatrix.from_rows(rows)) == rank_mod2(rows)


@given(matrices())
def test_rank_of_transpose(rows):
    m = BitMatrix.from_rows(rows)
    assert rank(m) == rank(m.T)


@st.composite
def product_pair(draw):
    r, inner, c = (draw(st.integers(1, 6)) for _ in range(3))
    bits = st.integers(0, 1)
    a = draw(st.lists(st.lists(bits, min_size=inner, max_size=inner), min_size=r, max_size=r))
    b = draw(st.lists(st.lists(bits, min_size=c, max_size=c), min_size=inner, max_size=inner))
    return a, b


@given(product_pair())
def test_matmul_matches_numpy(pair):
    a, b = pair
    got = (BitMatrix.from_rows(a) @ BitMatrix.from_rows(b)).to_array()
    assert np.array_equal(got, (np.array(a) @ np.array(b)) % 2)


@given(matrices())
def test_rref_is_reduced(rows):
    r, rk, pivots = rref(BitMatrix.from_rows(rows))
    a = r.to_array()
    assert rk == len(pivots) == rank_mod2(rows)
    for i, p in enumerate(pivots):
        assert a[i, p] == 1 and a[:, p].sum() == 1
    assert not a[rk:].any()


@given(matrices().filter(code_rows))
def test_systematic_form_spans_permuted_code(rows):
    g = BitMatrix.from_rows(rows)
    gs, perm = systematic_form(g)
    assert is_systematic(gs)
    assert sorted(perm) == list(range(g.ncols))
    assert rank_mod2(np.vstack([gs.to_array(), g.select_columns(perm).to_array()])) == g.nrows
    h = parity_check_from_generator(gs)
    assert (gs @ h.T).is_zero()
    assert h.shape == (g.ncols - g.nrows, g.ncols)


def test_dependent_rows_rejected():
    with pytest.raises(NotAGeneratorMatrix):
        systematic_form(BitMatrix.from_rows(["110", "110"]))


@given(matrices().filter(code_rows))
def test_min_distance_matches_brute_force(rows):
    g = BitMatrix.from_rows(rows)
    assert min_distance_by_enumeration(g) == brute_dmin(rows)
    gs, _ = systematic_form(g)
    d = min_distance(h=parity_check_from_generator(gs), search_cap=g.ncols)
    assert d.exact and d.value == brute_dmin(rows)


@given(matrices().filter(code_rows), st.integers(1, 10))
def test_weight_search_matches_brute_force(rows, w):
    gs, _ = systematic_form(BitMatrix.from_rows(rows))
    h = parity_check_from_generator(gs)
    weights = set(codewords(rows).sum(axis=1).tolist())
    assert has_codeword_of_weight(h, w) == (w in weights)


@given(matrices().filter(code_rows), st.data())
def test_erasures_recovered_iff_no_codeword_inside(rows, data):
    gs, _ = systematic_form(BitMatrix.from_rows(rows))
    h = parity_check_from_generator(gs)
    n = gs.ncols
    erased = frozenset(data.draw(st.sets(st.integers(0, n - 1), max_size=n)))
    words = codewords(gs.to_array())
    hidden = any(w.any() and not w[[j for j in range(n) if j not in erased]].any() for w in words)
    if hidden:
        with pytest.raises(UnrecoverableErasure):
            erasure_recovery(h, erased)
        return
    msg = data.draw(st.integers(0, (1 << gs.nrows) - 1))
    word = gs.encode(msg)
    bits = [(word >> j) & 1 for j in range(n)]
    garbled = [0 if j in erased else b for j, b in enumerate(bits)]
    assert list(solve_erasures(h, garbled, erased)) == bits


def test_bit_blocks_recovered_like_bits():
    g = BitMatrix.from_rows(["1001", "0101", "0011"])  # single parity, n=4
    h = parity_check_from_generator(g)
    blocks = [0b1011, 0b0110, 0b1111]
    word = blocks + [blocks[0] ^ blocks[1] ^ blocks[2]]
    got = solve_erasures(h, [word[0], 0, word[2], word[3]], {1})
    assert list(got) == word
