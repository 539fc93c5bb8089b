"""Two-panel SVG figure: the polygon with its side disks, and the circular
embedding of the intersection graph with chords coloured by the conflict
graph bipartition (or an odd cycle drawn in a distinct stroke)."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .geom import Disk
from .graph import IntersectGraph, is_planar_hamiltonian
from .poly import ConvexPolygon, side_disks

__all__ = ["render_svg"]

PANEL = 400
MARGIN = 20
PALETTE = ("#1f77b4", "#d62728")
ODD = "#ff7f0e"
DISK_FILL = ("#8dd3c7", "#fdb462", "#bebada", "#fb8072", "#80b1d3", "#b3de69")


def _clip(poly, a, b, c):
    """Sutherland-Hodgman: keep the part of ``poly`` with a*x + b*y + c >= 0."""
    out = []
    m = len(poly)
    for k in range(m):
        p, q = poly[k], poly[(k + 1) % m]
        fp = a * p[0] + b * p[1] + c
        fq = a * q[0] + b * q[1] + c
        if fp >= 0:
            out.append(p)
        if (fp >= 0) != (fq >= 0):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _viewport(p: ConvexPolygon, disks):
    xs, ys = [], []
    for v in p.vertices:
        x, y = v.as_float()
        xs.append(x)
        ys.append(y)
    for d in disks:
        if isinstance(d, Disk):
            cx, cy = d.center.as_float()
            r = math.sqrt(float(d.r2))
            xs += [cx - r, cx + r]
            ys += [cy - r, cy + r]
    if not p.bounded:
        # leave room for the two rays
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        for s in (p.sides[0], p.sides[-1]):
            ax, ay = s.apex.as_float()
            dx, dy = s.dir.as_float()
            norm = math.hypot(dx, dy)
            xs.append(ax + dx / norm * span)
            ys.append(ay + dy / norm * span)
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.05 * span
    return x0 - pad, y0 - pad, span + 2 * pad


def _polygon_panel(p: ConvexPolygon) -> list[str]:
    disks = list(side_disks(p))
    x0, y0, span = _viewport(p, disks)
    k = (PANEL - 2 * MARGIN) / span

    def tr(x, y):
        # SVG y axis points down
        return MARGIN + (x - x0) * k, PANEL - MARGIN - (y - y0) * k

    box = [(x0, y0), (x0 + span, y0), (x0 + span, y0 + span), (x0, y0 + span)]
    out = [f'<clipPath id="view"><rect x="0" y="0" width="{PANEL}" height="{PANEL}"/></clipPath>',
           '<g id="polygon-panel" clip-path="url(#view)">']
    for idx, d in enumerate(disks):
        fill = DISK_FILL[idx % len(DISK_FILL)]
        if isinstance(d, Disk):
            cx, cy = d.center.as_float()
            sx, sy = tr(cx, cy)
            r = math.sqrt(float(d.r2)) * k
            out.append(f'<circle cx="{sx:.3f}" cy="{sy:.3f}" r="{r:.3f}" fill="{fill}" '
                       f'fill-opacity="0.25" stroke="{fill}"><title>side {idx}</title></circle>')
        else:
            l = d.boundary
            a, b, c = (float(v) * d.inside_sign for v in (l.a, l.b, l.c))
            region = _clip(box, a, b, c)
            if len(region) >= 3:
                pts = " ".join("%.3f,%.3f" % tr(*q) for q in region)
                out.append(f'<polygon points="{pts}" fill="{fill}" fill-opacity="0.2" '
                           f'stroke="{fill}"><title>side {idx} (halfplane)</title></polygon>')
    verts = [v.as_float() for v in p.vertices]
    pts = " ".join("%.3f,%.3f" % tr(*q) for q in verts)
    if p.bounded:
        out.append(f'<polygon points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
    else:
        def far(ray):
            ax, ay = ray.apex.as_float()
            dx, dy = ray.dir.as_float()
            t = 4 * span / math.hypot(dx, dy)
            return ax + dx * t, ay + dy * t

        chain = [far(p.sides[0])] + verts + [far(p.sides[-1])]
        pts = " ".join("%.3f,%.3f" % tr(*q) for q in chain)
        out.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
    for v in verts:
        sx, sy = tr(*v)
        out.append(f'<circle cx="{sx:.3f}" cy="{sy:.3f}" r="2" fill="black"/>')
    out.append("</g>")
    return out


def _embedding_panel(g: IntersectGraph) -> list[str]:
    n = g.n
    cx, cy, rad = PANEL * 1.5, PANEL / 2, PANEL / 2 - 2 * MARGIN
    pos = [(cx + rad * math.cos(2 * math.pi * i / n), cy - rad * math.sin(2 * math.pi * i / n))
           for i in range(n)]
    out = ['<g id="embedding-panel">',
           f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{rad:.3f}" fill="none" stroke="#999999"/>']
    ok, cert = is_planar_hamiltonian(g)
    odd = set(tuple(c) for c in (cert.odd_cycle or []))
    cyc = {(i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i) for i in range(n)}
    for i, j in sorted(g.edges):
        (x1, y1), (x2, y2) = pos[i], pos[j]
        if (i, j) in cyc:
            style = 'stroke="black" stroke-width="2"'
        elif (i, j) in odd:
            style = f'stroke="{ODD}" stroke-width="3" stroke-dasharray="6,3"'
        elif ok:
            style = f'stroke="{PALETTE[cert.coloring[(i, j)]]}" stroke-width="1.5"'
        else:
            style = 'stroke="#777777" stroke-width="1"'
        out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" {style}>'
                   f'<title>{i}-{j}</title></line>')
    for i, (x, y) in enumerate(pos):
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="9" fill="white" stroke="black"/>')
        out.append(f'<text x="{x:.3f}" y="{y + 4:.3f}" font-size="10" text-anchor="middle">{i}</text>')
    verdict = "planar" if ok else "NOT planar (odd cycle highlighted)"
    out.append(f'<text x="{cx:.3f}" y="{PANEL - 6}" font-size="12" text-anchor="middle">'
               f'{escape(verdict)}</text>')
    out.append("</g>")
    return out


def render_svg(p: ConvexPolygon, g: IntersectGraph | None = None, title: str = "") -> str:
    """SVG 1.1 document. The right panel needs ``g`` (bounded polygons only)."""
    parts = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{2 * PANEL}" '
             f'height="{PANEL}" viewBox="0 0 {2 * PANEL} {PANEL}">']
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    parts.append(f'<rect x="0" y="0" width="{2 * PANEL}" height="{PANEL}" fill="white"/>')
    parts += _polygon_panel(p)
    if g is not None:
        parts += _embedding_panel(g)
    else:
        parts.append(f'<text x="{PANEL * 1.5}" y="{PANEL / 2}" font-size="12" text-anchor="middle">'
                     "no circular embedding for unbounded polygons</text>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
