"""Deterministic SVG pictures of complexes in the plane.

All geometry is exact until the final coordinate formatting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from gmpy2 import mpq

from .errors import NotRenderable
from .polyhedra import PolyhedralComplex, QPolyhedron, canonicalize

SIZE = 400
PALETTE = ["#cfe2f3", "#d9ead3", "#fff2cc", "#f4cccc", "#d9d2e9", "#fce5cd", "#d0e0e3", "#ead1dc"]


@dataclass
class RenderSpec:
    """Viewport half-width (``None`` = automatic), label switch and label text function."""

    radius: object = None
    labels: bool = True
    label_fn: Callable | None = None
    title: str = ""


def _box(R) -> list:
    return [([1, 0], R), ([-1, 0], R), ([0, 1], R), ([0, -1], R)]


def _vertices(P: QPolyhedron) -> list:
    return [f.point for f in P.faces() if f.dim == 0] if P.dim > 0 else ([P.point] if P.dim == 0 else [])


def _auto_radius(cx: PolyhedralComplex):
    m = mpq(0)
    for c in cx.cells:
        if c.dim == 0:
            m = max(m, abs(c.point[0]), abs(c.point[1]))
    return max(mpq(2), m * 2 + 1)


def _polygon(P: QPolyhedron, R) -> list:
    Q = canonicalize(2, list(P.ineqs) + _box(R), P.eqs)
    if Q.empty:
        return []
    pts = _vertices(Q)
    if Q.dim < 2:
        return pts
    cx = sum(float(p[0]) for p in pts) / len(pts)
    cy = sum(float(p[1]) for p in pts) / len(pts)
    return sorted(pts, key=lambda p: math.atan2(float(p[1]) - cy, float(p[0]) - cx))


def _xy(p, R) -> tuple:
    s = SIZE / (2 * float(R))
    return (f"{float(p[0]) * s + SIZE / 2:.3f}", f"{SIZE / 2 - float(p[1]) * s:.3f}")


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_svg(cx: PolyhedralComplex, spec: RenderSpec | None = None) -> str:
    """SVG document: shaded 2-cells, edges (arrows on unbounded ones), vertices, labels."""
    spec = spec or RenderSpec()
    if cx.ambient != 2:
        raise NotRenderable(f"ambient dimension {cx.ambient} is not 2; project first")
    R = mpq(spec.radius) if spec.radius is not None else _auto_radius(cx)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto">'
        '<path d="M0,0 L8,4 L0,8 z" fill="#222"/></marker></defs>',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="0" y1="{SIZE / 2}" x2="{SIZE}" y2="{SIZE / 2}" stroke="#bbb" stroke-dasharray="4,4"/>',
        f'<line x1="{SIZE / 2}" y1="0" x2="{SIZE / 2}" y2="{SIZE}" stroke="#bbb" stroke-dasharray="4,4"/>',
    ]
    if spec.title:
        out.append(f'<text x="8" y="16" font-size="12">{_escape(spec.title)}</text>')
    k = 0
    texts = []
    for c, lab in zip(cx.cells, cx.labels):
        if c.dim != 2:
            continue
        poly = _polygon(c, R)
        pts = " ".join(",".join(_xy(p, R)) for p in poly)
        out.append(f'<polygon points="{pts}" fill="{PALETTE[k % len(PALETTE)]}" stroke="none"/>')
        k += 1
        if spec.labels and poly:
            ctr = (sum(p[0] for p in poly) / len(poly), sum(p[1] for p in poly) / len(poly))
            text = spec.label_fn(lab) if spec.label_fn else ""
            if text:
                x, y = _xy(ctr, R)
                texts.append(f'<text x="{x}" y="{y}" font-size="12" text-anchor="middle">{_escape(text)}</text>')
    for c in cx.cells:
        if c.dim != 1:
            continue
        seg = _polygon(c, R)
        if len(seg) != 2:
            continue
        inner = _vertices(c)
        (x1, y1), (x2, y2) = _xy(seg[0], R), _xy(seg[1], R)
        if len(inner) == 1:
            # ray: draw from the vertex outwards
            if seg[1] == inner[0]:
                (x1, y1), (x2, y2) = (x2, y2), (x1, y1)
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#222" stroke-width="2" '
                       'marker-end="url(#arrow)"/>')
        else:
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#222" stroke-width="2"/>')
    for c in cx.cells:
        if c.dim == 0 and all(abs(x) <= R for x in c.point):
            x, y = _xy(c.point, R)
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="#222"/>')
    out += texts
    out.append("</svg>")
    return "\n".join(out) + "\n"
