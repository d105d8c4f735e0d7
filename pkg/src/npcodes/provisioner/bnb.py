"""Depth-first branch and bound for 0/1 models.

Every node runs bound propagation over the integer rows.  Small models
(fewer than ``lp_threshold`` variables) are then searched by plain DFS on
the first unfixed variable in declaration order, bounded only by the cost of
the variables already set to 1 plus the negative costs still free.  Larger models bound each node with the LP
relaxation (HiGHS, warm-started) and branch on the
first fractional variable in declaration order.

Because every objective coefficient is a multiple of the model's
granularity ``g``, a node is pruned once its bound, rounded up to a multiple
of ``g``, reaches the incumbent.
"""

from __future__ import annotations

import math
import time
from itertools import combinations
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

import highspy
import numpy as np

from .ilp import IlpModel

EPS = 1e-6


@dataclass(frozen=True)
class Limits:
    nodes: int | None = None
    seconds: float | None = None
    lp_threshold: int = 200


@dataclass
class BnbResult:
    status: str  # "optimal", "infeasible" or "capped"
    objective: Fraction | None
    assignment: dict[str, int] | None
    nodes: int
    lp_solves: int
    seconds: float

    @property
    def capped(self) -> bool:
        return self.status == "capped"


def granularity(m: IlpModel) -> Fraction:
    coefs = [abs(c) for c in m.objective.values() if c]
    if not coefs:
        return Fraction(1)
    num = 0
    den = 1
    for c in coefs:
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, 1) / den if num else Fraction(1)


class _Rows:
    """Integer rows in ``a.x <= b`` form plus a variable-to-row index."""

    def __init__(self, m: IlpModel):
        idx = m.index
        self.rows: list[tuple[list[int], list[int], int]] = []
        for c in m.constraints:
            vs = [idx(v) for v, _ in c.terms]
            a = [a for _, a in c.terms]
            if c.sense in ("<=", "="):
                self.rows.append((vs, a, c.rhs))
            if c.sense in (">=", "="):
                self.rows.append((vs, [-x for x in a], -c.rhs))
        self.by_var: list[list[int]] = [[] for _ in m.variables]
        for r, (vs, _, _) in enumerate(self.rows):
            for v in vs:
                self.by_var[v].append(r)

    def propagate(self, lo: np.ndarray, hi: np.ndarray, touched) -> bool:
        """Tighten ``lo``/``hi`` in place; False on infeasibility."""
        queue = list(dict.fromkeys(r for v in touched for r in self.by_var[v]))
        pending = set(queue)
        while queue:
            r = queue.pop()
            pending.discard(r)
            vs, a, b = self.rows[r]
            act = 0
            for v, c in zip(vs, a):
                act += c * (lo[v] if c > 0 else hi[v])
            if act > b:
                return False
            for v, c in zip(vs, a):
                if lo[v] == hi[v]:
                    continue
                if act + abs(c) > b:
                    if c > 0:
                        hi[v] = 0
                    else:
                        lo[v] = 1
                    for r2 in self.by_var[v]:
                        if r2 not in pending:
                            pending.add(r2)
                            queue.append(r2)
        return True


def implied_cuts(rows: "_Rows", max_support: int = 6, max_size: int = 3) -> list[tuple[list[int], list[int], int]]:
    """Cover cuts implied by single short rows.

    For a row ``a.x <= b`` with at most ``max_support`` variables, every
    minimal set ``S`` of at most ``max_size`` literals whose joint truth
    already forces the row's minimum activity above ``b`` yields the cut
    "not all of ``S``".  Each cut holds at every 0/1 point of its source
    row, so adding it to the relaxation never removes an integer solution;
    it only removes fractional points such as ``cP = 2/3`` under
    ``3 cP <= p + p' + n``.
    """
    out = []
    seen = set()
    for vs, a, b in rows.rows:
        if len(vs) > max_support or len(vs) < 2:
            continue
        base = sum(c for c in a if c < 0)  # min activity with nothing forced
        # literal (v, 1) forces x_v = 1, (v, 0) forces x_v = 0; only the
        # direction that raises the minimum activity matters
        lits = [(v, 1 if c > 0 else 0, abs(c)) for v, c in zip(vs, a)]
        found: list[frozenset] = []
        for size in range(1, max_size + 1):
            for combo in combinations(lits, size):
                key = frozenset((v, pol) for v, pol, _ in combo)
                if any(f <= key for f in found):
                    continue
                if base + sum(w for _, _, w in combo) > b:
                    found.append(key)
        for key in found:
            if len(key) < 2:
                continue  # single literals are handled by propagation
            cut = tuple(sorted(key))
            if cut in seen:
                continue
            seen.add(cut)
            cv = [v for v, _ in cut]
            ca = [1 if pol else -1 for _, pol in cut]
            rhs = len(cut) - 1 - sum(1 for _, pol in cut if not pol)
            out.append((cv, ca, rhs))
    return out


class _Relaxation:
    """The model's LP relaxation held in one HiGHS instance.

    Successive nodes only change column bounds, so each solve warm-starts
    from the previous basis.
    """

    def __init__(self, m: IlpModel, cuts=()):
        n = len(m.variables)
        cols: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        row_lo, row_hi = [], []
        for r, con in enumerate(m.constraints):
            for v, a in con.terms:
                cols[m.index(v)].append((r, a))
            row_lo.append(-highspy.kHighsInf if con.sense == "<=" else con.rhs)
            row_hi.append(highspy.kHighsInf if con.sense == ">=" else con.rhs)
        for vs, a, b in cuts:
            r = len(row_lo)
            for v, c in zip(vs, a):
                cols[v].append((r, c))
            row_lo.append(-highspy.kHighsInf)
            row_hi.append(b)
        lp = highspy.HighsLp()
        lp.num_col_ = n
        lp.num_row_ = len(row_lo)
        lp.col_cost_ = np.array([float(m.objective.get(v, 0)) for v in m.variables])
        lp.col_lower_ = np.zeros(n)
        lp.col_upper_ = np.ones(n)
        lp.row_lower_ = np.array(row_lo, dtype=float)
        lp.row_upper_ = np.array(row_hi, dtype=float)
        lp.a_matrix_.format_ = highspy.MatrixFormat.kColwise
        lp.a_matrix_.start_ = np.cumsum([0] + [len(c) for c in cols]).astype(np.int32)
        lp.a_matrix_.index_ = np.array([r for c in cols for r, _ in c], dtype=np.int32)
        lp.a_matrix_.value_ = np.array([a for c in cols for _, a in c], dtype=float)
        self.n = n
        self.all = np.arange(n, dtype=np.int32)
        self.h = highspy.Highs()
        self.h.setOptionValue("output_flag", False)
        self.h.passModel(lp)

    def solve(self, lo: np.ndarray, hi: np.ndarray):
        h = self.h
        h.changeColsBounds(self.n, self.all, lo.astype(float), hi.astype(float))
        h.run()
        status = h.getModelStatus()
        if status == highspy.HighsModelStatus.kInfeasible:
            return None
        if status != highspy.HighsModelStatus.kOptimal:
            raise RuntimeError(f"LP relaxation ended with {h.modelStatusToString(status)}")
        return h.getInfo().objective_function_value, np.asarray(h.getSolution().col_value)


def _round_up(value: float, g: Fraction) -> Fraction:
    steps = math.ceil(value / float(g) - EPS)
    return g * steps


def solve_bnb(m: IlpModel, limits: Limits = Limits(),
              incumbent: Mapping[str, int] | None = None) -> BnbResult:
    """Minimize ``m`` exactly, or report the best point found before a cap.

    ``incumbent`` (a feasible full assignment) seeds the upper bound.
    """
    t0 = time.monotonic()
    n = len(m.variables)
    g = granularity(m)
    cost = np.array([float(m.objective.get(v, 0)) for v in m.variables])
    neg = np.minimum(cost, 0.0)
    rows = _Rows(m)
    use_lp = n >= limits.lp_threshold
    relax = _Relaxation(m, implied_cuts(rows)) if use_lp else None

    best_x: dict[str, int] | None = None
    best: Fraction | None = None
    if incumbent is not None:
        bad = m.violations(incumbent)
        if bad:
            raise ValueError(f"seed assignment violates {bad[:3]}")
        best_x = {v: int(incumbent.get(v, 0)) for v in m.variables}
        best = m.objective_value(best_x)

    lo = np.zeros(n, dtype=np.int8)
    hi = np.ones(n, dtype=np.int8)
    nodes = lp_solves = 0
    capped = False
    stack: list[tuple[np.ndarray, np.ndarray, list[int]]] = [(lo, hi, list(range(n)))]
    while stack:
        if limits.nodes is not None and nodes >= limits.nodes:
            capped = True
            break
        if limits.seconds is not None and time.monotonic() - t0 > limits.seconds:
            capped = True
            break
        lo, hi, touched = stack.pop()
        nodes += 1
        if not rows.propagate(lo, hi, touched):
            continue
        free = np.flatnonzero(lo != hi)
        # cost of the variables set to 1, plus any negative cost still free
        fixed_cost = float(cost @ lo + neg[free].sum())
        if best is not None and _round_up(fixed_cost, g) >= best:
            continue
        if use_lp:
            lp_solves += 1
            sol = relax.solve(lo, hi)
            if sol is None:
                continue
            bound, xs = sol
            if best is not None and _round_up(bound, g) >= best:
                continue
            frac = free[np.abs(xs[free] - np.round(xs[free])) > EPS]
            if not len(frac):
                x = {name: int(round(xs[i])) for i, name in enumerate(m.variables)}
                if not m.violations(x):
                    val = m.objective_value(x)
                    if best is None or val < best:
                        best, best_x = val, x
                    continue
                frac = free  # numerically integral but not exact: branch on
                if not len(frac):
                    continue
            v = int(frac[0])
            first = 1 if xs[v] >= 0.5 else 0
        else:
            if len(free) == 0:
                x = {name: int(lo[i]) for i, name in enumerate(m.variables)}
                if m.violations(x):
                    continue
                val = m.objective_value(x)
                if best is None or val < best:
                    best, best_x = val, x
                continue
            v = int(free[0])
            first = 0
        for val in (1 - first, first):  # pushed last is explored first
            clo, chi = lo.copy(), hi.copy()
            clo[v] = chi[v] = val
            stack.append((clo, chi, [v]))
    elapsed = time.monotonic() - t0
    if capped:
        status = "capped"
    elif best is None:
        status = "infeasible"
    else:
        status = "optimal"
    return BnbResult(status, best, best_x, nodes, lp_solves, elapsed)
