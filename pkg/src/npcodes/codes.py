"""Network protection codes: BCH construction, derivation rules, bounds.

An ``[n, k, d_min]`` code maps its ``n`` coordinates onto ``n`` link-disjoint
connections; ``k`` of them carry plain data and ``m = n - k`` carry encoded
combinations.  It tolerates ``t = d_min - 1`` failures at known positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

from .field import field, gf2_poly_mul, minimal_polynomial, multiplicative_order, poly_str, PRIMITIVE_POLYS
from .gf2 import (
    BitMatrix,
    Distance,
    ENUMERATION_MAX_K,
    PATTERN_SEARCH_BUDGET,
    min_distance,
    min_distance_by_patterns,
    parity_check_from_generator,
    rank,
    rref,
    systematic_form,
)


class CodeError(ValueError):
    pass


class BchRangeError(CodeError):
    pass


@dataclass(frozen=True)
class LinearCode:
    n: int
    k: int
    distance: Distance
    generator: BitMatrix | None = None
    parity: BitMatrix | None = None
    provenance: str = ""
    # column c of ``generator`` is coordinate perm[c] of the unsystematized code
    perm: tuple[int, ...] | None = None
    note: str = ""

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise CodeError(f"invalid dimensions n={self.n}, k={self.k}")
        if self.generator is not None:
            if self.generator.shape != (self.k, self.n):
                raise CodeError(f"generator shape {self.generator.shape} != ({self.k}, {self.n})")
            if self.parity is not None and not (self.generator @ self.parity.T).is_zero():
                raise CodeError("generator and parity-check matrices are not orthogonal")

    @property
    def d_min(self) -> int:
        return self.distance.value

    @property
    def m(self) -> int:
        return self.n - self.k

    @property
    def t(self) -> int:
        return self.d_min - 1

    @property
    def has_matrix(self) -> bool:
        return self.generator is not None

    @property
    def label(self) -> str:
        return f"[{self.n},{self.k},{self.distance}]"

    def __str__(self) -> str:
        return self.label


def code_from_generator(g: BitMatrix, provenance: str, *, distance: Distance | None = None,
                        search_cap: int | None = None, note: str = "") -> LinearCode:
    """Systematize ``g``, attach ``H`` and (unless given) compute ``d_min``."""
    gsys, perm = systematic_form(g)
    k, n = gsys.shape
    h = parity_check_from_generator(gsys) if k < n else None
    if distance is None:
        if k == n:
            distance = Distance(1, True, "trivial")
        else:
            distance = min_distance(gsys, h=h, search_cap=search_cap or n)
    identity = tuple(range(n))
    return LinearCode(n, k, distance, gsys, h, provenance, None if perm == identity else perm, note)


def single_parity_code(n: int) -> LinearCode:
    """The ``[n, n-1, 2]`` code protecting against one failure."""
    if n < 2:
        raise CodeError("parity code needs n >= 2")
    k = n - 1
    rows = tuple((1 << i) | (1 << k) for i in range(k))
    g = BitMatrix(k, n, rows)
    return LinearCode(n, k, Distance(2, True, "construction"), g, parity_check_from_generator(g),
                      f"parity({n})")


def repetition_code(n: int) -> LinearCode:
    g = BitMatrix(1, n, ((1 << n) - 1,))
    h = parity_check_from_generator(g) if n > 1 else None
    return LinearCode(n, 1, Distance(n, True, "construction"), g, h, f"repetition({n})")


# -- cyclotomic cosets and the BCH dimension -----------------------------

def cyclotomic_cosets(n: int, q: int = 2) -> list[tuple[int, ...]]:
    """Orbits of ``{0..n-1}`` under multiplication by ``q`` mod ``n``.

    Each coset is listed in orbit order starting from its smallest member;
    cosets are ordered by that member.
    """
    if n < 1:
        raise CodeError("n must be positive")
    if gcd(n, q) != 1:
        raise CodeError(f"gcd({n}, {q}) != 1")
    seen = set()
    out = []
    for s in range(n):
        if s in seen:
            continue
        orbit = []
        x = s
        while x not in orbit:
            orbit.append(x)
            x = (x * q) % n
        seen.update(orbit)
        out.append(tuple(orbit))
    return out


def bch_dmax(n: int, mu: int) -> int:
    return min((n * 2 ** ((mu + 1) // 2)) // (2 ** mu - 1), n)


def bch_dimension(n: int, d: int, mu: int) -> int:
    """Closed-form dimension ``n - mu * ceil((d-1)/2)`` of a binary narrow-sense BCH code.

    Valid only inside the range where the closed form is known to hold; outside
    it, raises :class:`BchRangeError` (count cosets instead).
    """
    if n % 2 == 0:
        raise BchRangeError(f"length {n} is even; need gcd(n, 2) = 1")
    if multiplicative_order(2, n) != mu:
        raise BchRangeError(f"mu={mu} is not the multiplicative order of 2 mod {n}")
    if not 2 ** (mu // 2) < n <= 2 ** mu - 1:
        raise BchRangeError(f"length {n} outside 2^floor(mu/2) < n <= 2^mu - 1")
    dmax = bch_dmax(n, mu)
    if not 2 <= d <= dmax:
        raise BchRangeError(f"designed distance out of closed-form range: need 2 <= d <= {dmax}, got {d}")
    return n - mu * -(-(d - 1) // 2)


def bch_zero_cosets(n: int, d: int) -> list[tuple[int, ...]]:
    """Distinct cyclotomic cosets covering the exponents ``1 .. d-1``."""
    cosets = cyclotomic_cosets(n)
    where = {x: c for c in cosets for x in c}
    picked = []
    for i in range(1, d):
        c = where[i % n]
        if c not in picked:
            picked.append(c)
    return picked


def bch_generator_polynomial(n: int, d: int) -> tuple[int, int, list[tuple[int, ...]]]:
    """``(g, mu, cosets)``: lcm of the minimal polynomials of ``alpha^1 .. alpha^(d-1)``.

    ``alpha = beta^((2^mu - 1)/n)`` for the bundled primitive ``beta``.
    """
    if n < 3 or n % 2 == 0:
        raise CodeError(f"BCH length must be odd and >= 3, got {n}")
    if not 2 <= d <= n:
        raise CodeError(f"designed distance must satisfy 2 <= d <= n, got d={d}")
    mu = multiplicative_order(2, n)
    if mu not in PRIMITIVE_POLYS:
        raise CodeError(f"length {n} needs GF(2^{mu}); only degrees 2..10 are bundled")
    f = field(mu)
    alpha = f.alpha_pow(f.order // n)
    picked = bch_zero_cosets(n, d)
    g = 1
    for c in picked:
        g = gf2_poly_mul(g, minimal_polynomial(f, alpha, c))
    return g, mu, picked


def cyclic_generator_matrix(g: int, n: int) -> BitMatrix:
    k = n - (g.bit_length() - 1)
    return BitMatrix(k, n, tuple(g << i for i in range(k)))


def construct_bch(n: int, d: int, *, budget: int = PATTERN_SEARCH_BUDGET) -> LinearCode:
    """Binary narrow-sense BCH code of length ``n`` and designed distance ``d``.

    The true minimum distance is computed exactly when feasible (codeword
    enumeration for small ``k``, bounded-weight search otherwise).  When the
    search budget runs out before weight ``d`` the distance is reported as a
    lower bound.
    """
    g, mu, cosets = bch_generator_polynomial(n, d)
    deg = g.bit_length() - 1
    k = n - deg
    if k < 1:
        raise CodeError(f"BCH({n},{d}) has dimension 0")
    try:
        closed = bch_dimension(n, d, mu)
    except BchRangeError:
        closed = None
    if closed is not None and closed != k:
        raise AssertionError(f"coset count k={k} disagrees with closed form {closed}")
    gsys, perm = systematic_form(cyclic_generator_matrix(g, n))
    h = parity_check_from_generator(gsys)
    if k <= ENUMERATION_MAX_K:
        dist = min_distance(gsys)
    else:
        dist = min_distance_by_patterns(h, d, budget)
        if not dist.exact and dist.value < d:
            # search could not reach d; fall back on the BCH bound
            dist = Distance(d, False, "bch-bound")
    if dist.value < d:
        raise AssertionError(f"BCH bound violated: d_min {dist.value} < designed {d}")
    identity = tuple(range(n))
    prov = f"bch(n={n},d={d},poly={poly_str(PRIMITIVE_POLYS[mu])},g=0x{g:x})"
    return LinearCode(n, k, dist, gsys, h, prov, None if perm == identity else perm)


# -- derivation rules -------------------------------------------------------

RULES = ("shorten", "puncture", "append", "extend")


def _delete_column(words, j: int) -> tuple[int, ...]:
    low = (1 << j) - 1
    return tuple((w & low) | ((w >> (j + 1)) << j) for w in words)


def _rederive_distance(g: BitMatrix, parent: LinearCode, floor: int) -> Distance | None:
    """Exact distance when cheap; otherwise ``None`` so the caller keeps a bound."""
    if g.nrows <= ENUMERATION_MAX_K:
        return None
    gsys, _ = systematic_form(g)
    dist = min_distance_by_patterns(parity_check_from_generator(gsys), parent.d_min + 1)
    if dist.exact:
        return dist
    return Distance(max(dist.value, floor), False, "derivation-bound")


def covering_leader(h: BitMatrix) -> tuple[int, int]:
    """``(word, weight)`` of a heaviest coset leader (weight = covering radius).

    Breadth-first over syndromes; ties resolve to the first syndrome reached
    in column order.
    """
    m = h.nrows
    if m > 22:
        raise CodeError(f"covering radius search over 2^{m} syndromes is too large")
    cols = [h.column_word(j) for j in range(h.ncols)]
    leader = {0: 0}
    frontier = [0]
    weight = 0
    total = 1 << m
    while len(leader) < total:
        nxt = []
        for s in frontier:
            base = leader[s]
            for j, c in enumerate(cols):
                if (base >> j) & 1:
                    continue
                t = s ^ c
                if t not in leader:
                    leader[t] = base | (1 << j)
                    nxt.append(t)
        if not nxt:
            raise CodeError("parity-check matrix is rank deficient")
        frontier = nxt
        weight += 1
    return leader[frontier[0]], weight


def derive(c: LinearCode, rule: str, position: int | None = None) -> LinearCode:
    """Apply one propagation rule.

    ``shorten`` -> ``[n-1, k-1, >=d]``; ``puncture`` -> ``[n-1, k, >=d-1]``;
    ``append`` (overall parity) -> ``[n+1, k, d or d+1]``;
    ``extend`` (new information coordinate placed at the deepest coset
    leader) -> ``[n+1, k+1, min(d, rho+1)]`` with ``rho`` the covering radius.
    ``position`` (0-based) defaults to the last coordinate.
    """
    if rule not in RULES:
        raise CodeError(f"unknown rule {rule!r}; expected one of {RULES}")
    if c.generator is None:
        raise CodeError(f"{c.label} has no generator matrix to derive from")
    g = c.generator
    n, k = c.n, c.k
    prov = f"{rule}({c.provenance or c.label})"

    if rule in ("shorten", "puncture"):
        p = n - 1 if position is None else position
        if not 0 <= p < n:
            raise CodeError(f"position {p} outside 0..{n - 1}")
        if n < 2:
            raise CodeError(f"cannot {rule} a code of length {n}")
        if rule == "shorten":
            if k < 2:
                raise CodeError("shortening needs k >= 2")
            words = list(g.words)
            bit = 1 << p
            sel = next((i for i, w in enumerate(words) if w & bit), None)
            if sel is not None:
                for i in range(len(words)):
                    if i != sel and words[i] & bit:
                        words[i] ^= words[sel]
                del words[sel]
            newg = BitMatrix(len(words), n - 1, _delete_column(words, p))
            floor = c.d_min
        else:
            newg = BitMatrix(k, n - 1, _delete_column(g.words, p))
            reduced, r, _ = rref(newg)
            if r < k:
                newg = BitMatrix(r, n - 1, reduced.words[:r])
            floor = max(c.d_min - 1, 1)
        if newg.nrows == newg.ncols:
            gsys, _ = systematic_form(newg)
            return LinearCode(newg.ncols, newg.nrows, Distance(1, True, "trivial"), gsys, None, prov)
        dist = _rederive_distance(newg, c, floor)
        return code_from_generator(newg, prov, distance=dist)

    if rule == "append":
        col = tuple(w.bit_count() & 1 for w in g.words)
        newg = BitMatrix(k, n + 1, tuple(w | (b << n) for w, b in zip(g.words, col)))
        dist = _rederive_distance(newg, c, c.d_min)
        return code_from_generator(newg, prov, distance=dist)

    # extend
    if c.parity is None:
        raise CodeError("extension needs a parity-check matrix")
    v, rho = covering_leader(c.parity)
    newrow = v | (1 << n)
    newg = BitMatrix(k + 1, n + 1, g.words + (newrow,))
    if rank(newg) != k + 1:
        raise AssertionError("extension row is dependent")
    dist = _rederive_distance(newg, c, 1)
    if dist is not None and not dist.exact:
        dist = Distance(min(c.d_min, rho + 1), c.distance.exact, "derivation-bound")
    return code_from_generator(newg, prov, distance=dist)


# -- bounds -----------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    singleton_ok: bool
    hamming_ok: bool
    min_m_required: int
    hamming_sum: int = 0
    hamming_tight: bool = False


def ceil_log2(x: int) -> int:
    if x < 1:
        raise ValueError("log of non-positive number")
    return (x - 1).bit_length()


def check_bounds(c: LinearCode) -> BoundReport:
    """Singleton (``t <= n - k``) and binary Hamming checks, plus the fewest
    protection paths those bounds allow for this ``n`` and ``d_min``."""
    n, k, d = c.n, c.k, c.d_min
    t = d - 1
    ball = sum(comb(n, i) for i in range(t // 2 + 1))
    return BoundReport(
        singleton_ok=t <= n - k,
        hamming_ok=ball <= 2 ** (n - k),
        min_m_required=max(t, ceil_log2(ball)),
        hamming_sum=ball,
        hamming_tight=ball == 2 ** (n - k),
    )


# -- explicit example matrices ---------------------------------------------

EXAMPLE_15_11_ROWS = (
    "100000000001100",
    "010000000000110",
    "001000000000011",
    "000100000001101",
    "000010000001010",
    "000001000000101",
    "000000100001110",
    "000000010000111",
    "000000001001111",
    "000000000101011",
    "000000000011001",
)

EXAMPLE_15_8_ROWS = (
    "100000001101000",
    "010000000110100",
    "001000000011010",
    "000100000001101",
    "000010001101110",
    "000001000110111",
    "000000101110011",
    "000000011010001",
)


def example_code(which: int) -> LinearCode:
    """The explicit [15,11] (``which=3``) or [15,8] (``which=4``) generator."""
    rows = {3: EXAMPLE_15_11_ROWS, 4: EXAMPLE_15_8_ROWS}.get(which)
    if rows is None:
        raise CodeError("only examples 3 and 4 carry explicit matrices")
    return code_from_generator(BitMatrix.from_rows(rows), f"example{which}")
