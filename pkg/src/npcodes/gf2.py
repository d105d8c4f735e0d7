"""Exact linear algebra over GF(2).

Matrices are stored row-major as Python ints: bit ``j`` of ``words[i]`` is
entry ``(i, j)``.  Addition is XOR, so every routine here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

# k at or below this -> enumerate all 2^k codewords for d_min
ENUMERATION_MAX_K = 20
# subset evaluations allowed for one bounded-weight search
PATTERN_SEARCH_BUDGET = 2_000_000


class NotAGeneratorMatrix(ValueError):
    pass


class NotSystematic(ValueError):
    pass


class UnrecoverableErasure(ValueError):
    """Erased positions whose parity-check columns are linearly dependent."""

    def __init__(self, positions: Iterable[int], message: str = "unrecoverable erasure pattern"):
        self.positions = tuple(sorted(positions))
        super().__init__(f"{message}: {list(self.positions)}")


@dataclass(frozen=True)
class BitMatrix:
    nrows: int
    ncols: int
    words: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 1 or self.ncols < 1:
            raise ValueError(f"BitMatrix needs at least one row and column, got {self.nrows}x{self.ncols}")
        if len(self.words) != self.nrows:
            raise ValueError("row count does not match stored words")
        limit = 1 << self.ncols
        for w in self.words:
            if w < 0 or w >= limit:
                raise ValueError("row word has bits beyond ncols")

    # -- construction -------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | str]) -> "BitMatrix":
        rows = [r.strip() if isinstance(r, str) else r for r in rows]
        if not rows:
            raise ValueError("BitMatrix needs at least one row")
        ncols = len(rows[0])
        words = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            w = 0
            for j, b in enumerate(r):
                b = int(b)
                if b not in (0, 1):
                    raise ValueError(f"entry {b!r} is not a bit")
                w |= b << j
            words.append(w)
        return cls(len(rows), ncols, tuple(words))

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        return cls.from_rows([ln for ln in text.split() if ln])

    @classmethod
    def from_array(cls, a) -> "BitMatrix":
        a = np.asarray(a, dtype=np.int64) % 2
        return cls.from_rows(a.tolist())

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls(k, k, tuple(1 << i for i in range(k)))

    # -- views --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.words[i] >> j) & 1

    def row(self, i: int) -> tuple[int, ...]:
        w = self.words[i]
        return tuple((w >> j) & 1 for j in range(self.ncols))

    def column_word(self, j: int) -> int:
        """Column ``j`` packed as an int over the row index."""
        c = 0
        for i, w in enumerate(self.words):
            c |= ((w >> j) & 1) << i
        return c

    def to_array(self) -> np.ndarray:
        return np.array([self.row(i) for i in range(self.nrows)], dtype=np.uint8)

    def to_text(self) -> str:
        return "\n".join("".join(map(str, self.row(i))) for i in range(self.nrows))

    def __str__(self) -> str:
        return self.to_text()

    # -- algebra ------------------------------------------------------
    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.ncols, self.nrows, tuple(self.column_word(j) for j in range(self.ncols)))

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.words, other.words)))

    __sub__ = __add__

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for w in self.words:
            acc = 0
            j = 0
            while w:
                if w & 1:
                    acc ^= other.words[j]
                w >>= 1
                j += 1
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.words)

    def select_columns(self, cols: Sequence[int]) -> "BitMatrix":
        """New matrix whose column ``c`` is this matrix's column ``cols[c]``."""
        out = []
        for w in self.words:
            v = 0
            for c, j in enumerate(cols):
                v |= ((w >> j) & 1) << c
            out.append(v)
        return BitMatrix(self.nrows, len(cols), tuple(out))

    def drop_rows(self, drop: Iterable[int]) -> "BitMatrix":
        drop = set(drop)
        return BitMatrix(self.nrows - len(drop), self.ncols,
                         tuple(w for i, w in enumerate(self.words) if i not in drop))

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return BitMatrix(self.nrows, self.ncols + other.ncols,
                         tuple(a | (b << self.ncols) for a, b in zip(self.words, other.words)))

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return BitMatrix(self.nrows + other.nrows, self.ncols, self.words + other.words)

    def encode(self, message: int) -> int:
        """Codeword word for ``message`` (bit i = coefficient of row i)."""
        cw = 0
        i = 0
        while message:
            if message & 1:
                cw ^= self.words[i]
            message >>= 1
            i += 1
        return cw


def word_to_bits(word: int, length: int) -> tuple[int, ...]:
    return tuple((word >> j) & 1 for j in range(length))


def bits_to_word(bits: Sequence[int]) -> int:
    w = 0
    for j, b in enumerate(bits):
        w |= (int(b) & 1) << j
    return w


def rref(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns.

    Pivots are taken leftmost-first; within a column the lowest available
    row wins.  Zero rows are kept at the bottom so the shape is unchanged.
    """
    rows = list(m.words)
    pivots: list[int] = []
    r = 0
    for col in range(m.ncols):
        if r == len(rows):
            break
        bit = 1 << col
        sel = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
    return BitMatrix(m.nrows, m.ncols, tuple(rows)), r, pivots


def rank(m: BitMatrix) -> int:
    return rref(m)[1]


def systematic_form(g: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Bring a full-rank generator to ``[I_k | P]``.

    Returns ``(gsys, perm)`` where column ``c`` of ``gsys`` comes from column
    ``perm[c]`` of the row-reduced input.  ``perm`` is the identity when the
    pivots already sit in the first ``k`` columns.
    """
    reduced, r, pivots = rref(g)
    if r < g.nrows:
        raise NotAGeneratorMatrix(f"not a generator matrix: rank {r} < {g.nrows} rows")
    pivot_set = set(pivots)
    perm = tuple(pivots) + tuple(j for j in range(g.ncols) if j not in pivot_set)
    return reduced.select_columns(perm), perm


def is_systematic(g: BitMatrix) -> bool:
    k = g.nrows
    mask = (1 << k) - 1
    return k <= g.ncols and all((w & mask) == (1 << i) for i, w in enumerate(g.words))


def parity_check_from_generator(gsys: BitMatrix) -> BitMatrix:
    """``H = [P^T | I_{n-k}]`` for a systematic ``[I_k | P]``."""
    k, n = gsys.shape
    if k >= n:
        raise NotSystematic(f"need k < n, got k={k}, n={n}")
    if not is_systematic(gsys):
        raise NotSystematic("generator is not in [I_k | P] form")
    m = n - k
    rows = []
    for j in range(m):
        col = k + j
        pt = 0
        for i, w in enumerate(gsys.words):
            pt |= ((w >> col) & 1) << i
        rows.append(pt | (1 << (k + j)))
    return BitMatrix(m, n, tuple(rows))


@lru_cache(maxsize=65536)
def erasure_recovery(h: BitMatrix, erased: frozenset[int]) -> dict[int, int]:
    """Recovery equations for a set of erased positions.

    Returns ``{position: mask}`` where ``mask`` selects the surviving
    positions whose XOR reproduces the erased symbol for every codeword.
    Raises :class:`UnrecoverableErasure` when the erased columns of ``h``
    are linearly dependent.
    """
    unknown = sorted(erased)
    if not unknown:
        return {}
    known_mask = ((1 << h.ncols) - 1) & ~sum(1 << e for e in unknown)
    # one equation per row of h: (bits over unknown index, mask over known positions)
    eqs = []
    for w in h.words:
        lhs = 0
        for u, e in enumerate(unknown):
            if (w >> e) & 1:
                lhs |= 1 << u
        eqs.append([lhs, w & known_mask])
    r = 0
    for u in range(len(unknown)):
        bit = 1 << u
        sel = next((i for i in range(r, len(eqs)) if eqs[i][0] & bit), None)
        if sel is None:
            raise UnrecoverableErasure(erased)
        eqs[r], eqs[sel] = eqs[sel], eqs[r]
        for i in range(len(eqs)):
            if i != r and eqs[i][0] & bit:
                eqs[i][0] ^= eqs[r][0]
                eqs[i][1] ^= eqs[r][1]
        r += 1
    return {unknown[u]: eqs[u][1] for u in range(len(unknown))}


def solve_erasures(h: BitMatrix, received: Sequence[int], erased: Iterable[int]) -> tuple[int, ...]:
    """Fill erased positions of ``received`` so the word satisfies ``h``.

    Symbols may be single bits or equal-width bit blocks held in ints; the
    solve is applied bitwise.  Values at erased positions are ignored.
    """
    if len(received) != h.ncols:
        raise ValueError(f"received length {len(received)} != code length {h.ncols}")
    erased = frozenset(erased)
    if any(e < 0 or e >= h.ncols for e in erased):
        raise ValueError("erased position out of range")
    eqs = erasure_recovery(h, erased)
    out = list(received)
    for pos, mask in eqs.items():
        acc = 0
        j = 0
        while mask:
            if mask & 1:
                acc ^= received[j]
            mask >>= 1
            j += 1
        out[pos] = acc
    return tuple(out)


@dataclass(frozen=True)
class Distance:
    """Minimum distance, or a lower bound on it when ``exact`` is False."""

    value: int
    exact: bool
    method: str

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


def min_distance_by_enumeration(g: BitMatrix) -> int:
    """Minimum nonzero codeword weight over all ``2^k - 1`` codewords (Gray order)."""
    k = g.nrows
    best = g.ncols + 1
    cw = 0
    words = g.words
    for i in range(1, 1 << k):
        cw ^= words[(i & -i).bit_length() - 1]
        wt = cw.bit_count()
        if wt < best:
            best = wt
            if best == 1:
                break
    return best


def _pattern_cost(n: int, w: int) -> int:
    a = (w + 1) // 2
    return comb(n, a) + comb(n, w - a)


def has_codeword_of_weight(h: BitMatrix, w: int) -> bool:
    """True if some ``w`` columns of ``h`` sum to zero (meet in the middle).

    A ``w``-subset sorted ascending splits into its first ``a`` and last
    ``b`` elements, so the right half only needs to start after the left
    half ends.
    """
    n = h.ncols
    cols = [h.column_word(j) for j in range(n)]
    a = (w + 1) // 2
    b = w - a
    # syndrome -> largest minimum index over b-subsets with that syndrome
    right: dict[int, int] = {}
    if b == 0:
        right[0] = n
    else:
        for sub in combinations(range(n), b):
            s = 0
            for j in sub:
                s ^= cols[j]
            if right.get(s, -1) < sub[0]:
                right[s] = sub[0]
    for sub in combinations(range(n), a):
        s = 0
        for j in sub:
            s ^= cols[j]
        if right.get(s, -1) > sub[-1]:
            return True
    return False


def min_distance_by_patterns(h: BitMatrix, search_cap: int, budget: int = PATTERN_SEARCH_BUDGET) -> Distance:
    """Smallest ``w <= search_cap`` with a weight-``w`` codeword of ``ker h``.

    When no such weight exists (or the budget runs out first) the result is
    a lower bound: no codeword lighter than ``value`` exists.
    """
    n = h.ncols
    for w in range(1, min(search_cap, n) + 1):
        if _pattern_cost(n, w) > budget:
            return Distance(w, False, "pattern-search")
        if has_codeword_of_weight(h, w):
            return Distance(w, True, "pattern-search")
    return Distance(min(search_cap, n) + 1, False, "pattern-search")


def min_distance(g: BitMatrix | None = None, *, h: BitMatrix | None = None,
                 search_cap: int = 8, budget: int = PATTERN_SEARCH_BUDGET) -> Distance:
    """Minimum distance of the code generated by ``g`` (or with checks ``h``).

    Exhaustive over codewords when ``k <= ENUMERATION_MAX_K``; otherwise a
    bounded-weight search against the parity-check matrix.
    """
    if search_cap < 1:
        raise ValueError("search_cap must be >= 1")
    if g is None and h is None:
        raise ValueError("need a generator or a parity-check matrix")
    if g is not None and g.nrows <= ENUMERATION_MAX_K:
        return Distance(min_distance_by_enumeration(g), True, "enumeration")
    if h is None:
        gsys, perm = systematic_form(g)
        h = parity_check_from_generator(gsys)
    return min_distance_by_patterns(h, search_cap, budget)
