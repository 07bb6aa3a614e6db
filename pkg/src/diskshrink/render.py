"""SVG drawings of disk configurations."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

from diskshrink.geometry import build_disk_graph
from diskshrink.model import Instance, Solution

SCALE = 40.0  # pixels per unit


def render_svg(inst: Instance, sol: Solution | None = None, margin: float = 1.5) -> str:
    """Unit disks (dashed), final disks (solid, shrunk ones in red) and the graph they induce."""
    n = inst.n
    radii = [1.0] * n if sol is None else sol.radius_list(n)
    if n:
        xs = [p.x for p in inst.points]
        ys = [p.y for p in inst.points]
        x0, x1, y0, y1 = min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin
    else:
        x0, x1, y0, y1 = -margin, margin, -margin, margin
    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE

    def X(x):
        return f"{(x - x0) * SCALE:.3f}"

    def Y(y):
        return f"{(y1 - y) * SCALE:.3f}"  # flip so +y points up

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1f}" height="{h:.1f}" '
        f'viewBox="0 0 {w:.3f} {h:.3f}">',
        f"<title>{inst.problem.value}, alpha={inst.alpha}, k={inst.k}</title>",
        '<g id="unit-disks" fill="none" stroke="#999999" stroke-dasharray="4 3" stroke-width="1">',
    ]
    out += [f'<circle cx="{X(p.x)}" cy="{Y(p.y)}" r="{SCALE:.3f}"/>' for p in inst.points]
    out.append("</g>")
    out.append('<g id="final-disks" fill="none" stroke-width="1.5">')
    shrunk = set() if sol is None else sol.shrunk
    for i, p in enumerate(inst.points):
        colour = "#cc2222" if i in shrunk else "#2255aa"
        out.append(f'<circle cx="{X(p.x)}" cy="{Y(p.y)}" r="{radii[i] * SCALE:.3f}" stroke="{colour}"/>')
    out.append("</g>")
    g = build_disk_graph(inst.points, radii, inst.model)
    out.append('<g id="edges" stroke="#333333" stroke-width="1">')
    for u, v in sorted(g.edges):
        a, b = inst.points[u], inst.points[v]
        out.append(f'<line x1="{X(a.x)}" y1="{Y(a.y)}" x2="{X(b.x)}" y2="{Y(b.y)}"/>')
    out.append("</g>")
    out.append('<g id="centres" fill="#000000">')
    for i, p in enumerate(inst.points):
        out.append(f'<rect x="{float(X(p.x)) - 1.5:.3f}" y="{float(Y(p.y)) - 1.5:.3f}" width="3" height="3">'
                   f"<desc>{quoteattr(str(i))[1:-1]}</desc></rect>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
