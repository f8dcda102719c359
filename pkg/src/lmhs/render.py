"""Text rendering of diagrams, string specs and fixtures.

Grids put p on the horizontal axis and q on the vertical axis with the
origin at the lower left.  Output is deterministic byte for byte.
"""
from __future__ import annotations

from .degeneration import DegenerationFixture
from .hodge import HodgeDeligneDiagram, LmhsSpec


def render_diagram(diag: HodgeDeligneDiagram) -> str:
    if diag.is_zero():
        return "(empty)"
    ps = [p for (p, _), _ in diag.entries]
    qs = [q for (_, q), _ in diag.entries]
    pmin, pmax = min(ps), max(ps)
    qmin, qmax = min(qs), max(qs)
    cells = {}
    width = 1
    for (p, q), m in diag.entries:
        text = str(m)
        cells[(p, q)] = text
        width = max(width, len(text))
    for p in range(pmin, pmax + 1):
        width = max(width, len(str(p)))
    qlabel = max(len(str(q)) for q in range(qmin, qmax + 1))
    lines = []
    for q in range(qmax, qmin - 1, -1):
        row = [cells.get((p, q), ".").rjust(width) for p in range(pmin, pmax + 1)]
        lines.append(f"q={str(q).rjust(qlabel)} | " + " ".join(row))
    rule = " " * (qlabel + 3) + "+" + "-" * ((width + 1) * (pmax - pmin + 1))
    lines.append(rule)
    lines.append(
        " " * (qlabel + 5) + " ".join(str(p).rjust(width) for p in range(pmin, pmax + 1)) + "  (p)"
    )
    return "\n".join(lines)


def render_lmhs(spec: LmhsSpec) -> str:
    from . import hodge

    lines = [render_diagram(hodge.diagram(spec))]
    arrows = []
    braces = {}
    for s in spec.strings:
        if s.length > 1:
            tag = f"N-string {s.top}->{s.bottom}"
            if s.multiplicity > 1:
                tag += f" x{s.multiplicity}"
            if s.order > 1:
                tag += f" {{zeta_{s.order}^{s.exponent}}}"
            arrows.append(tag)
        elif s.order > 1:
            key = (s.order, s.exponent)
            braces[key] = braces.get(key, 0) + s.multiplicity
    if arrows:
        lines.append("strings: " + "; ".join(arrows))
    if braces:
        lines.append(
            "eigenvalues: "
            + ", ".join(
                f"{{zeta_{d}^{a}}} x{m}" for (d, a), m in sorted(braces.items())
            )
        )
    return "\n".join(lines)


def render_degeneration(fixture: DegenerationFixture) -> str:
    lines = [f"relative dimension n = {fixture.n}"]
    f = fixture.flags
    lines.append(
        "flags: smooth total space = {}, reduced special fiber = {}, d_sing = {}, "
        "singularity class = {}".format(
            f.total_space_smooth, f.special_fiber_reduced, f.d_sing, f.singularity_class
        )
    )
    for k, data in fixture.degrees:
        lines.append(f"--- degree {k} ---")
        lines.append("special fiber:")
        lines.append(render_diagram(data.special_fiber))
        if data.lmhs is not None and data.lmhs.strings:
            lines.append("limit MHS:")
            lines.append(render_lmhs(data.lmhs))
        if data.phantom is not None:
            lines.append(f"phantom: {data.phantom}")
        if data.vanishing is not None:
            lines.append(f"vanishing: {data.vanishing}")
    return "\n".join(lines)
