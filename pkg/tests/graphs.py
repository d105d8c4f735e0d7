"""Hypothesis strategies and builders for small topologies."""

from hypothesis import strategies as st

from npcodes.provisioner import parse_topology


def topology_text(nodes, edges, conns) -> str:
    lines = ["nodes:", "  " + " ".join(nodes), "edges:"]
    lines += [f"  {u} {v} {c}" for u, v, c in edges]
    lines += ["connections:"] + [f"  {s} {r}" for s, r in conns]
    return "\n".join(lines) + "\n"


@st.composite
def small_instances(draw, max_nodes=5, max_conns=2, max_cost=3):
    k = draw(st.integers(3, max_nodes))
    nodes = [f"v{i}" for i in range(k)]
    # a spanning cycle keeps every pair 2-edge-connected
    edges = {(nodes[i], nodes[(i + 1) % k]) for i in range(k)}
    chords = [(nodes[i], nodes[j]) for i in range(k) for j in range(i + 2, k) if (i, j) != (0, k - 1)]
    edges |= set(draw(st.lists(st.sampled_from(chords), unique=True, max_size=3))) if chords else set()
    edges = sorted(edges)
    costed = [(u, v, draw(st.integers(1, max_cost))) for u, v in edges]
    nconn = draw(st.integers(1, max_conns))
    conns = []
    for _ in range(nconn):
        s, r = draw(st.lists(st.sampled_from(nodes), min_size=2, max_size=2, unique=True))
        conns.append((s, r))
    return parse_topology(topology_text(nodes, costed, conns), "<generated>")
