"""SVG drawings of one edge coloring of the layered lattice.

Each layer is a block of horizontal rows crossing vertical columns.  Layer
p+1 sits north-east of layer p and the bond columns of layer p bend east into
its rows.  Coordinate tops carry a circle with the output color.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .labels import check_colors
from .lattice import build_lattice, configuration_weight, iter_configurations

CELL = 44
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2",
           "#17becf")
UNSET = "#bbbbbb"


def pick_configuration(graph, spectral, params, colors, index=None):
    """Edge colors of the configuration with the largest |weight|, or the index-th one.

    Returns ``(edge_colors, weight)``; both are None when the boundary admits
    no configuration.
    """
    best, best_w, best_abs = None, None, -1.0
    for n, cfg in enumerate(iter_configurations(graph, colors)):
        w = configuration_weight(graph, cfg, spectral, params, colors)
        if index is not None:
            if n == index:
                return cfg, w
            continue
        a = abs(complex(w))
        if a > best_abs:
            best, best_w, best_abs = cfg, w, a
    if index is not None:
        raise IndexError(f"configuration {index} does not exist")
    return best, best_w


def _layout(shape):
    """Origins (west x, top y) of every layer block in drawing units."""
    origins = {1: (0.0, 0.0)}
    for p in range(1, shape.M):
        ox, oy = origins[p]
        last_bond = ox + (shape.LI[p - 1] + shape.k[p]) * CELL
        k_next = shape.k[p]
        origins[p + 1] = (last_bond, oy - (k_next + 1.5) * CELL)
    return origins


def _color(c):
    return PALETTE[(c - 1) % len(PALETTE)] if c else UNSET


def render_svg(shape, spectral, colors, params, index=None, title=None) -> str:
    colors = check_colors(colors, shape)
    graph = build_lattice(shape)
    edge_colors, weight = pick_configuration(graph, spectral, params, colors, index)
    ecol = (lambda e: edge_colors[e]) if edge_colors is not None else (lambda e: 0)
    origins = _layout(shape)

    def col_x(p, c):
        return origins[p][0] + c * CELL

    def row_y(p, r):
        return origins[p][1] + r * CELL

    lines, texts, circles = [], [], []
    bond_edges = {e for e, _, _ in graph.bonds}
    for p in range(1, shape.M + 1):
        k, n = shape.k[p - 1], shape.ncols(p)
        for r in range(1, k + 1):
            y = row_y(p, r)
            for c in range(1, n + 2):
                e = graph.hedge[(p, r, c)]
                x0 = col_x(p, c - 1) if c > 1 else col_x(p, 0) + CELL / 3
                if c == 1 and p > 1:
                    # bond: rises from layer p-1 and turns east into this row
                    bx = col_x(p - 1, shape.LI[p - 2] + r)
                    top = row_y(p - 1, 1)
                    lines.append((((bx, top), (bx, y), (col_x(p, 1), y)), _color(ecol(e))))
                    continue
                x1 = col_x(p, c) if c <= n else col_x(p, n) + 2 * CELL / 3
                lines.append((((x0, y), (x1, y)), _color(ecol(e))))
            texts.append((col_x(p, 0) + CELL / 3 - 4, y - 6, f"x{p}.{r}", "end"))
        for c in range(1, n + 1):
            x = col_x(p, c)
            for r in range(1, k + 2):
                e = graph.vedge[(p, r, c)]
                if r == 1 and e in bond_edges:
                    continue
                y0 = row_y(p, r - 1) if r > 1 else row_y(p, 0) + CELL / 3
                y1 = row_y(p, r) if r <= k else row_y(p, k) + 2 * CELL / 3
                lines.append((((x, y0), (x, y1)), _color(ecol(e))))
    for idx, e in sorted(graph.coord_edge.items()):
        for (p, r, c), v in graph.vedge.items():
            if v == e:
                break
        circles.append((col_x(p, c), row_y(p, 0) + CELL / 3, colors[idx - 1], idx))

    xs = [pt[0] for seg, _ in lines for pt in seg] + [c[0] for c in circles]
    ys = [pt[1] for seg, _ in lines for pt in seg] + [c[1] for c in circles]
    pad = CELL
    minx, miny = min(xs) - 1.5 * pad, min(ys) - pad
    width, height = max(xs) - minx + pad, max(ys) - miny + pad + 20

    def fx(v):
        return f"{v - minx:.1f}"

    def fy(v):
        return f"{v - miny:.1f}"

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" '
           f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
           f"<title>{escape(title or str(shape))}</title>",
           '<g fill="none" stroke-width="3" stroke-linecap="round" stroke-linejoin="round">']
    for seg, stroke in lines:
        pts = " ".join(f"{fx(x)},{fy(y)}" for x, y in seg)
        out.append(f'<polyline points="{pts}" stroke="{stroke}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="11" fill="#333">')
    for x, y, t, anchor in texts:
        out.append(f'<text x="{fx(x)}" y="{fy(y)}" text-anchor="{anchor}">{escape(t)}</text>')
    out.append("</g>")
    out.append('<g stroke="#222" stroke-width="1.2" font-family="sans-serif" font-size="11">')
    for x, y, c, idx in circles:
        out.append(f'<circle cx="{fx(x)}" cy="{fy(y)}" r="9" fill="{_color(c)}"/>')
        out.append(f'<text x="{fx(x)}" y="{fy(y + 4)}" text-anchor="middle" fill="#fff" '
                   f'stroke="none">{c}</text>')
        out.append(f'<text x="{fx(x)}" y="{fy(y - 13)}" text-anchor="middle" fill="#555" '
                   f'stroke="none" font-size="9">{idx}</text>')
    out.append("</g>")
    caption = "no configuration" if edge_colors is None else f"weight {_fmt_weight(weight)}"
    out.append(f'<text x="6" y="{height - 8:.0f}" font-family="sans-serif" font-size="11" '
               f'fill="#333">{escape(caption)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _fmt_weight(w):
    if isinstance(w, complex):
        return f"{w.real:.6g}{w.imag:+.6g}i"
    return str(w)
