"""Deterministic SVG 1.1 output: envelopes, family patterns and bifurcation diagrams."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

SIZE = 400
MARGIN = 20
PALETTE = ("#1f4e9c", "#b8402a", "#2d7d46", "#7a4a9e", "#a07a12", "#444444")


@dataclass
class Panel:
    """One plotting area in data coordinates."""

    curves: List[np.ndarray] = field(default_factory=list)
    clouds: List[np.ndarray] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)
    markers: List[Tuple[float, float, str]] = field(default_factory=list)
    vlines: List[Tuple[float, str]] = field(default_factory=list)
    hlines: List[Tuple[float, str]] = field(default_factory=list)
    bounds: Optional[Tuple[float, float, float, float]] = None
    title: str = ""


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _bounds(panel: Panel) -> Tuple[float, float, float, float]:
    if panel.bounds is not None:
        return panel.bounds
    pts = [a for a in panel.curves + panel.clouds if len(a)]
    if not pts:
        return (-1.0, 1.0, -1.0, 1.0)
    allp = np.vstack(pts)
    x0, y0 = np.min(allp, axis=0)
    x1, y1 = np.max(allp, axis=0)
    # square, origin-containing frame with 8% padding
    x0, x1 = min(x0, 0.0), max(x1, 0.0)
    y0, y1 = min(y0, 0.0), max(y1, 0.0)
    span = max(x1 - x0, y1 - y0, 1e-9) * 1.08
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    return (cx - span / 2, cx + span / 2, cy - span / 2, cy + span / 2)


def _panel_svg(panel: Panel, ox: float, oy: float, size: float) -> List[str]:
    x0, x1, y0, y1 = _bounds(panel)

    def px(x):
        return ox + (x - x0) / (x1 - x0) * size

    def py(y):
        return oy + size - (y - y0) / (y1 - y0) * size

    out = [f'<rect x="{_fmt(ox)}" y="{_fmt(oy)}" width="{_fmt(size)}" height="{_fmt(size)}" '
           'fill="none" stroke="#cccccc" stroke-width="0.5"/>']
    # axes through the origin when visible
    if x0 <= 0 <= x1:
        out.append(f'<line class="axis" x1="{_fmt(px(0))}" y1="{_fmt(oy)}" x2="{_fmt(px(0))}" '
                   f'y2="{_fmt(oy + size)}" stroke="#999999" stroke-width="0.5"/>')
    if y0 <= 0 <= y1:
        out.append(f'<line class="axis" x1="{_fmt(ox)}" y1="{_fmt(py(0))}" x2="{_fmt(ox + size)}" '
                   f'y2="{_fmt(py(0))}" stroke="#999999" stroke-width="0.5"/>')
    for v, name in panel.vlines:
        out.append(f'<line class="stratum" x1="{_fmt(px(v))}" y1="{_fmt(oy)}" x2="{_fmt(px(v))}" '
                   f'y2="{_fmt(oy + size)}" stroke="#000000" stroke-width="1.2"/>')
        out.append(f'<text x="{_fmt(px(v) + 3)}" y="{_fmt(oy + 12)}" font-size="9">{_esc(name)}</text>')
    for v, name in panel.hlines:
        out.append(f'<line class="stratum" x1="{_fmt(ox)}" y1="{_fmt(py(v))}" x2="{_fmt(ox + size)}" '
                   f'y2="{_fmt(py(v))}" stroke="#000000" stroke-width="1.2"/>')
        out.append(f'<text x="{_fmt(ox + size - 40)}" y="{_fmt(py(v) - 3)}" font-size="9">{_esc(name)}</text>')
    for k, c in enumerate(panel.curves):
        if len(c) < 2:
            continue
        pts = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in c)
        colour = PALETTE[k % len(PALETTE)]
        label = f' data-label="{_esc(panel.labels[k])}"' if k < len(panel.labels) else ""
        out.append(f'<polyline class="curve"{label} fill="none" stroke="{colour}" stroke-width="1.3" '
                   f'points="{pts}"/>')
    for k, c in enumerate(panel.clouds):
        if not len(c):
            continue
        colour = PALETTE[(k + 2) % len(PALETTE)]
        d = " ".join(f"M{_fmt(px(a))} {_fmt(py(b))}h0.8v0.8h-0.8z" for a, b in c)
        out.append(f'<path class="cloud" fill="{colour}" stroke="none" d="{d}"/>')
    for x, y, name in panel.markers:
        out.append(f'<circle class="event" cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="3" fill="#000000"/>')
        out.append(f'<text x="{_fmt(px(x) + 4)}" y="{_fmt(py(y) - 4)}" font-size="9">{_esc(name)}</text>')
    if panel.title:
        out.append(f'<text x="{_fmt(ox + 4)}" y="{_fmt(oy + size - 4)}" font-size="10">{_esc(panel.title)}</text>')
    return out


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _document(body: List[str], title: str = "") -> str:
    head = ['<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">']
    if title:
        head.append(f"<title>{_esc(title)}</title>")
    head.append(f'<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>')
    return "\n".join(head + body + ["</svg>"]) + "\n"


def render_panel(panel: Panel, title: str = "") -> str:
    size = SIZE - 2 * MARGIN
    return _document(_panel_svg(panel, MARGIN, MARGIN, size), title or panel.title)


def render_envelope(curves: Sequence[np.ndarray], labels: Sequence[str] = (), clouds: Sequence[np.ndarray] = (),
                    title: str = "envelope") -> str:
    return render_panel(Panel(list(curves), list(clouds), list(labels)), title)


def render_family(curves: Sequence[np.ndarray], support: np.ndarray, title: str = "family") -> str:
    """Family members as thin curves plus the support drawn last."""
    return render_panel(Panel(list(curves) + [support], labels=[f"member {k}" for k in range(len(curves))]
                              + ["support"]), title)


def render_bifurcation(quadrants: Dict[str, np.ndarray], events: Sequence[Tuple[float, float, str]],
                       radius: float = 1.0, title: str = "bifurcation diagram") -> str:
    """Strata lam = 0 and mu = 0 in the parameter plane with one inset envelope per quadrant."""
    size = SIZE - 2 * MARGIN
    main = Panel(vlines=[(0.0, "lam = 0")], hlines=[(0.0, "mu = 0")],
                 markers=[(float(a), float(b), name) for a, b, name in events],
                 bounds=(-radius, radius, -radius, radius))
    body = _panel_svg(main, MARGIN, MARGIN, size)
    inset = size * 0.36
    pos = {"++": (MARGIN + size - inset - 6, MARGIN + 6), "-+": (MARGIN + 6, MARGIN + 6),
           "--": (MARGIN + 6, MARGIN + size - inset - 6), "+-": (MARGIN + size - inset - 6, MARGIN + size - inset - 6)}
    for name in ("++", "-+", "--", "+-"):
        if name not in quadrants:
            continue
        body.append(f'<g class="inset" data-quadrant="{name}">')
        body.append(f'<rect x="{_fmt(pos[name][0])}" y="{_fmt(pos[name][1])}" width="{_fmt(inset)}" '
                    f'height="{_fmt(inset)}" fill="#ffffff"/>')
        body.extend(_panel_svg(Panel(clouds=[quadrants[name]], title=f"lam{name[0]} mu{name[1]}"),
                               pos[name][0], pos[name][1], inset))
        body.append("</g>")
    return _document(body, title)
