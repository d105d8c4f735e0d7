"""CPLEX LP text export.

Output depends only on the model's declaration order, so re-exporting the
same model is byte-identical.  Long rows are wrapped below the format's
line-length limit.
"""

from __future__ import annotations

from fractions import Fraction

from .ilp import IlpModel
from .topology import decimal_text

MAX_LINE = 200


def _term(coef: Fraction | int, var: str, first: bool) -> str:
    coef = Fraction(coef)
    sign = "-" if coef < 0 else ("" if first else "+")
    mag = abs(coef)
    body = var if mag == 1 else f"{decimal_text(mag)} {var}"
    return f"{sign} {body}" if sign else body


def _wrap(head: str, pieces: list[str]) -> list[str]:
    lines, cur = [], head
    for p in pieces:
        if len(cur) + 1 + len(p) > MAX_LINE:
            lines.append(cur)
            cur = "   " + p
        else:
            cur = f"{cur} {p}"
    lines.append(cur)
    return lines


def export_lp(m: IlpModel) -> str:
    out = [f"\\ {m.name}: {len(m.variables)} binaries, {len(m.constraints)} rows", "Minimize"]
    obj = [(v, m.objective[v]) for v in m.variables if v in m.objective]
    pieces = [_term(a, v, i == 0) for i, (v, a) in enumerate(obj)]
    if not pieces and m.variables:
        pieces = [f"0 {m.variables[0]}"]  # some readers reject an empty objective
    out += _wrap(" obj:", pieces)
    out.append("Subject To")
    for c in m.constraints:
        pieces = [_term(a, v, i == 0) for i, (v, a) in enumerate(c.terms)] or [f"0 {m.variables[0]}"]
        pieces.append(f"{c.sense} {c.rhs}")
        out += _wrap(f" {c.name}:", pieces)
    out.append("Binaries")
    out += _wrap("", m.variables) if m.variables else []
    out.append("End")
    return "\n".join(line.rstrip() for line in out) + "\n"
