"""Deterministic SVG stem plots of configurations, one lane per degree and kind."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

WIDTH = 640
LANE_H = 90
PAD_X = 70
PAD_TOP = 30


@dataclass(frozen=True)
class Lane:
    label: str
    points: tuple[tuple[float, int], ...]
    positive_axis: bool = False


def lanes_from_result(doc: dict) -> list[Lane]:
    """Lanes for every degree of a ``compute`` JSON document."""
    out = []
    degrees = doc["degrees"]
    for r in sorted(degrees, key=int):
        res = degrees[r]
        for kind in ("delta", "gamma"):
            conf = res[kind]
            pts = tuple((float(p["s"]), int(p["mult"])) for p in conf["points"])
            out.append(Lane(f"{kind}_{r}", pts, kind == "gamma"))
    return out


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0" if s in ("0.00", "-0.00") else s


def _ticks(lo: float, hi: float) -> list[float]:
    span = hi - lo
    step = 1.0
    for cand in (0.1, 0.2, 0.5, 1, 2, 5, 10, 20, 50, 100):
        if span / cand <= 8:
            step = cand
            break
    else:
        step = 10 ** len(str(int(span / 8)))
    first = -(-lo // step) * step
    out, t = [], first
    while t <= hi + 1e-9:
        out.append(round(t, 10))
        t += step
    return out


def render_svg(lanes: list[Lane], title: str = "") -> str:
    """One horizontal axis per lane with a stem at each support value.

    Stems are labelled with their multiplicity; lanes of gamma kind start at
    0 with an open marker, since their support lies in (0, inf).
    """
    xs = [s for ln in lanes for s, _ in ln.points] + [0.0]
    lo, hi = min(xs), max(xs)
    if hi - lo < 1e-9:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.08 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    plot_w = WIDTH - 2 * PAD_X

    def X(s: float) -> float:
        return PAD_X + (s - lo) / (hi - lo) * plot_w

    height = PAD_TOP + LANE_H * max(len(lanes), 1) + 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}" font-family="monospace" font-size="11">',
        f'<rect width="{WIDTH}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{WIDTH // 2}" y="18" text-anchor="middle">{escape(title)}</text>')
    ticks = _ticks(lo, hi)
    for i, ln in enumerate(lanes):
        base = PAD_TOP + LANE_H * (i + 1) - 25
        start = X(0.0) if ln.positive_axis else PAD_X
        parts.append(f'<text x="8" y="{base - 20:.1f}">{escape(ln.label)}</text>')
        parts.append(f'<line x1="{start:.1f}" y1="{base}" x2="{PAD_X + plot_w:.1f}" '
                     f'y2="{base}" stroke="black"/>')
        if ln.positive_axis:
            parts.append(f'<circle cx="{start:.1f}" cy="{base}" r="3" fill="white" '
                         f'stroke="black"/>')
        for t in ticks:
            if ln.positive_axis and t < 0:
                continue
            parts.append(f'<line x1="{X(t):.1f}" y1="{base}" x2="{X(t):.1f}" y2="{base + 4}" '
                         f'stroke="black"/>')
            parts.append(f'<text x="{X(t):.1f}" y="{base + 15}" text-anchor="middle" '
                         f'fill="#555">{_fmt(t)}</text>')
        for s, m in sorted(ln.points):
            x = X(s)
            parts.append(f'<line x1="{x:.1f}" y1="{base}" x2="{x:.1f}" y2="{base - 40}" '
                         f'stroke="#1f4e9c" stroke-width="2"/>')
            parts.append(f'<circle cx="{x:.1f}" cy="{base - 40}" r="3" fill="#1f4e9c"/>')
            parts.append(f'<text x="{x + 5:.1f}" y="{base - 44}">×{m}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
