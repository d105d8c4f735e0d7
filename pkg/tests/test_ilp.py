from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from graphs import small_instances, topology_text
from helpers import SAMPLES
from npcodes.provisioner import (Limits, assignment_from_paths, build_ilp, load_topology, one_plus_one,
                                 parse_topology, solve_bnb)
from npcodes.provisioner.bnb import _Rows, implied_cuts
from npcodes.provisioner.ilp import IlpModel, av, nv

FAMILIES = ["I_src_in", "I_dst_out", "I_src_out", "I_dst_in", "I_flow", "I_joint",
            "II_src_out", "II_dst_in", "II_flow", "II_beta", "II_disj",
            "III_need", "III_out", "III_in", "III_flow", "III_own", "III_other", "III_tail", "III_head", "III_meet",
            "IV_need", "IV_out", "IV_in", "IV_flow", "IV_own", "IV_other", "IV_tail", "IV_head", "IV_meet",
            "T", "V_s_share", "V_s_low", "V_r_share", "V_r_low"]



def load(name):
    return load_topology(SAMPLES / f"{name}.top")


def test_every_family_present():
    m = build_ilp(*load("d5_common_sink"))
    names = {c.name for c in m.constraints}
    for fam in FAMILIES:
        assert any(n.startswith(fam + "_") for n in names), fam


def test_variable_counts():
    t, c = load("d5_common_sink")
    m = build_ilp(t, c)
    A, V, H = len(t.arcs), len(t.nodes), len(c)
    pairs = H * (H - 1) // 2
    # n; z b beta p q pi theta per arc; P Q; Pj Qj per node; cP cQ per arc
    assert len(m.variables) == pairs + 7 * H * A + 2 * H + 2 * pairs * V + 2 * pairs * A
    assert len(set(m.variables)) == len(m.variables)


def test_objective_coefficients():
    t, c = parse_topology(topology_text(["a", "b", "c"], [("a", "b", 2), ("b", "c", 1.5), ("c", "a", 1)],
                                        [("a", "b"), ("b", "c")]))
    m = build_ilp(t, c)
    arc = ("b", "c")
    assert m.objective[av("z", 1, arc)] == Fraction(3, 2)
    assert m.objective[av("beta", 2, arc)] == Fraction(3, 2)
    assert m.objective[av("pi", 1, arc)] == Fraction(3, 4)
    assert m.objective[av("theta", 2, arc)] == Fraction(3, 4)
    assert av("b", 1, arc) not in m.objective and av("p", 1, arc) not in m.objective


def test_single_connection_has_no_pair_variables():
    m = build_ilp(*load("d1_triangle"))
    assert not [v for v in m.variables if v.startswith(("n_", "Pj_", "Qj_", "cP_", "cQ_"))]


def test_single_connection_on_cycle_is_twice_shortest():
    t, c = parse_topology(topology_text(list("abcdef"), [(u, v, 1) for u, v in zip("abcdef", "bcdefa")],
                                        [("a", "d")]))
    sol = solve_bnb(build_ilp(t, c))
    assert sol.status == "optimal" and sol.objective == 6


def test_shared_source_relaxes_need_row():
    m = build_ilp(*load("d3_twin_demand"))
    rows = {r.name: r for r in m.constraints}
    assert rows["III_need_1_2"].rhs == -1 and rows["IV_need_1_2"].rhs == -1
    m2 = build_ilp(*load("d4_bowtie"))
    assert {r.name: r for r in m2.constraints}["III_need_1_2"].rhs == 0


def test_grouping_with_distinct_sources_needs_meeting_node():
    t, c = load("d4_bowtie")
    m = build_ilp(t, c)
    m.add("force", [(nv(1, 2), 1)], "=", 1)
    sol = solve_bnb(m)
    x = sol.assignment
    assert x["P_1"] == x["P_2"] == x["Q_1"] == x["Q_2"] == 1
    assert any(x[f"Pj_1_2_{j}"] for j in t.nodes) and any(x[f"Qj_1_2_{j}"] for j in t.nodes)
    assert sol.objective == 6


def test_forbidding_groups_gives_one_plus_one():
    t, c = load("d5_common_sink")
    m = build_ilp(t, c)
    for h, l in [(1, 2), (1, 3), (2, 3)]:
        m.add(f"apart_{h}_{l}", [(nv(h, l), 1)], "=", 0)
    sol = solve_bnb(m)
    assert sol.objective == sum(p.total for p in one_plus_one(t, c).values())


@pytest.mark.parametrize("name", ["d5_common_sink", "d6_prism"])
def test_grouping_is_transitive(name):
    t, c = load(name)
    sol = solve_bnb(build_ilp(t, c))
    x = sol.assignment
    for h, l, k in product(c.indices, repeat=3):
        if len({h, l, k}) == 3 and x[nv(h, l)] and x[nv(l, k)]:
            assert x[nv(h, k)]


@given(small_instances(max_nodes=5, max_conns=3))
def test_one_plus_one_injection_is_feasible(inst):
    t, c = inst
    m = build_ilp(t, c)
    pairs = one_plus_one(t, c)
    x = assignment_from_paths(m, {h: p.working for h, p in pairs.items()}, {h: p.backup for h, p in pairs.items()})
    assert m.violations(x) == []
    assert m.objective_value(x) == sum(p.total for p in pairs.values())


def test_replay_flags_bad_points():
    m = build_ilp(*load("d1_triangle"))
    x = dict.fromkeys(m.variables, 0)
    bad = m.violations(x)
    assert "I_src_out_1" in bad and "I_dst_in_1" in bad
    assert m.violations({**x, "nope": 1})[0] == "domain:nope"
    assert m.violations({**x, m.variables[0]: 2})[0] == f"domain:{m.variables[0]}"


def test_model_rejects_unknown_variable():
    m = IlpModel()
    m.var("x")
    with pytest.raises(KeyError):
        m.add("r", [("y", 1)], "<=", 1)
    with pytest.raises(ValueError):
        m.var("x")
    with pytest.raises(ValueError):
        m.add("r", [("x", 1)], "<", 1)


def test_duplicate_terms_merge():
    m = IlpModel()
    m.var("x")
    m.var("y")
    m.add("r", [("x", 1), ("y", 2), ("x", 2), ("y", -2)], "<=", 3)
    assert m.constraints[0].terms == (("x", 3),)


# -- implied cover cuts --------------------------------------------------------

@st.composite
def single_row_models(draw):
    k = draw(st.integers(2, 6))
    m = IlpModel()
    names = [m.var(f"x{i}") for i in range(k)]
    coefs = draw(st.lists(st.integers(-4, 4), min_size=k, max_size=k))
    sense = draw(st.sampled_from(["<=", ">=", "="]))
    rhs = draw(st.integers(-6, 6))
    m.add("r", list(zip(names, coefs)), sense, rhs)
    return m


@given(single_row_models())
def test_implied_cuts_keep_every_integer_point(m):
    rows = _Rows(m)
    cuts = implied_cuts(rows)
    for bits in product((0, 1), repeat=len(m.variables)):
        if not m.constraints[0].holds(dict(zip(m.variables, bits))):
            continue
        for vs, a, b in cuts:
            assert sum(c * bits[v] for v, c in zip(vs, a)) <= b


def test_implied_cut_removes_fractional_share():
    m = IlpModel()
    for v in ("c", "p", "q", "n"):
        m.var(v)
    m.add("share", [("c", 3), ("p", -1), ("q", -1), ("n", -1)], "<=", 0)
    cuts = implied_cuts(_Rows(m))
    # c = 1 with p = 0 is impossible, so c <= p (and likewise q, n)
    assert ([0, 1], [1, -1], 0) in [(vs, a, b) for vs, a, b in cuts]
