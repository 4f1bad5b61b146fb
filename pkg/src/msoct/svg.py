"""Deterministic SVG figures: the flowed family, the d(t) graph and a view of the sphere."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .construction import (
    ExtremaReport,
    MsParams,
    TWO_PI,
    configuration,
    find_extrema,
    flowed_circle,
    profile_d,
)
from .errors import GeometryError
from .inversive import PlanarCircle
from .sphere import SphericalRealization, lift_and_normalize

SIZE = 1000
MARGIN = 40
N_FLOWED = 12
COLORS = {"u": "#1f77b4", "v": "#2ca02c", "w": "#d62728", "u'": "#9467bd", "v'": "#8c564b", "w'": "#e377c2"}


def _f(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    """Maps a square world window onto the fixed 1000x1000 canvas (y up)."""

    def __init__(self, xmin: float, xmax: float, ymin: float, ymax: float):
        span = max(xmax - xmin, ymax - ymin)
        cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2
        self.x0, self.y0 = cx - span / 2, cy - span / 2
        self.scale = (SIZE - 2 * MARGIN) / span
        self.items = []

    def pt(self, z: complex) -> tuple:
        return MARGIN + (z.real - self.x0) * self.scale, SIZE - MARGIN - (z.imag - self.y0) * self.scale

    def circle(self, c: PlanarCircle, cls: str, stroke: str, width: float = 1.5, **attrs) -> None:
        x, y = self.pt(c.center)
        extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        self.items.append(
            f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(c.radius * self.scale)}" '
            f'fill="none" stroke="{stroke}" stroke-width="{width}"{extra}/>'
        )

    def raw(self, element: str) -> None:
        self.items.append(element)


def _document(items, title: str) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">\n'
        f"<title>{title}</title>\n"
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>\n'
    )
    return head + "\n".join(items) + "\n</svg>\n"


def _flow_times(params: MsParams, ex: ExtremaReport) -> np.ndarray:
    if params.periodic:
        return np.linspace(0.0, TWO_PI, N_FLOWED, endpoint=False)
    pad = ex.m - ex.tau
    return np.linspace(ex.tau - pad, ex.tau_prime + pad, N_FLOWED)


def flow_figure(params: MsParams, extrema: Optional[ExtremaReport] = None) -> str:
    """Base triple, the two envelope circles and a fan of flowed circles."""
    ex = extrema or find_extrema(params)
    env = params.env
    reach = max(env.f2 + env.r2, 2.0)
    cv = _Canvas(-reach, reach, -reach + 0.5, reach + 0.5)
    # layer order: envelopes, flowed family, base triple
    cv.circle(env.A1, "envelope", "#7f7f7f", 1.0, stroke_dasharray="6 4")
    cv.circle(env.A2, "envelope", "#7f7f7f", 1.0, stroke_dasharray="6 4")
    for t in _flow_times(params, ex):
        try:
            c = flowed_circle(params, float(t))
        except GeometryError:
            continue
        cv.circle(c, "flowed", COLORS["w'"], 1.0, data_t=_f(float(t)))
    for key, c in zip("uvw", params.base):
        cv.circle(c, "base", COLORS[key], 2.5, data_vertex=key)
    return _document(cv.items, f"flowed family, {params.kind.flow_name} flow")


def graph_figure(params: MsParams, extrema: Optional[ExtremaReport] = None, samples: int = 600) -> str:
    """log10 d(t) against t with the extrema marked."""
    ex = extrema or find_extrema(params)
    if params.periodic:
        lo, hi = 0.0, TWO_PI
    else:
        pad = ex.m - ex.tau
        lo, hi = ex.tau - pad, ex.tau_prime + pad
    ts = np.linspace(lo, hi, samples)
    ys = np.log10([profile_d(params, float(t)) for t in ts])
    ymin, ymax = float(ys.min()), float(ys.max())
    yspan = max(ymax - ymin, 1e-9)
    inner = SIZE - 2 * MARGIN

    def xy(t, ly):
        return MARGIN + (t - lo) / (hi - lo) * inner, SIZE - MARGIN - (ly - ymin) / yspan * inner

    pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in (xy(t, v) for t, v in zip(ts, ys)))
    items = [
        f'<line class="axis" x1="{MARGIN}" y1="{SIZE - MARGIN}" x2="{SIZE - MARGIN}" y2="{SIZE - MARGIN}" '
        'stroke="black" stroke-width="1"/>',
        f'<line class="axis" x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{SIZE - MARGIN}" '
        'stroke="black" stroke-width="1"/>',
        f'<polyline class="profile" points="{pts}" fill="none" stroke="#1f77b4" stroke-width="2"/>',
    ]
    marks = [("tau", ex.tau, ex.d_tau), ("m", ex.m, ex.d_m)]
    if ex.M is not None:
        marks.append(("M", ex.M, ex.d_M))
    for name, t, d in marks:
        if not lo <= t <= hi:
            continue
        x, y = xy(t, math.log10(d))
        items.append(
            f'<circle class="marker" data-name="{name}" data-t="{t:.6f}" data-d="{d:.6g}" '
            f'cx="{_f(x)}" cy="{_f(y)}" r="5" fill="#d62728"/>'
        )
        items.append(
            f'<text class="label" x="{_f(x + 8)}" y="{_f(y - 8)}" font-size="16">{name}={t:.6f}, d={d:.6g}</text>'
        )
    return _document(items, f"d(t), {params.kind.flow_name} flow")


def _cap_boundary(center, radius: float, n: int = 240) -> np.ndarray:
    c = np.asarray(center, dtype=float)
    helper = np.array([1.0, 0.0, 0.0]) if abs(c[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(c, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(c, e1)
    th = np.linspace(0.0, TWO_PI, n + 1)
    return (math.cos(radius) * c[None, :]
            + math.sin(radius) * (np.cos(th)[:, None] * e1[None, :] + np.sin(th)[:, None] * e2[None, :]))


def sphere_figure(r: SphericalRealization) -> str:
    """Orthographic view from above the north pole; far-side arcs are dashed."""
    cv = _Canvas(-1.05, 1.05, -1.05, 1.05)
    cv.circle(PlanarCircle(0j, 1.0), "outline", "black", 1.5)
    for key, s in r.circles.items():
        pts = _cap_boundary(s.center, s.radius)
        visible = pts[:, 2] >= 0
        runs, start = [], 0
        for i in range(1, len(pts) + 1):
            if i == len(pts) or visible[i] != visible[start]:
                runs.append((start, i, bool(visible[start])))
                start = i
        for i0, i1, vis in runs:
            seg = pts[max(i0 - 1, 0):i1]
            if len(seg) < 2:
                continue
            coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in (cv.pt(complex(p[0], p[1])) for p in seg))
            dash = "" if vis else ' stroke-dasharray="4 4"'
            cls = "cap" if vis else "cap hidden"
            cv.raw(f'<polyline class="{cls}" data-vertex="{key}" points="{coords}" fill="none" '
                   f'stroke="{COLORS[key]}" stroke-width="2"{dash}/>')
        x, y = cv.pt(complex(s.center[0], s.center[1]))
        fill = COLORS[key] if s.center[2] >= 0 else "none"
        cv.raw(f'<circle class="center" data-vertex="{key}" cx="{_f(x)}" cy="{_f(y)}" r="4" '
               f'fill="{fill}" stroke="{COLORS[key]}"/>')
    return _document(cv.items, "sphere, view from the north pole")


def sphere_figure_for(params: MsParams, t: float, ctx) -> str:
    return sphere_figure(lift_and_normalize(configuration(params, t), ctx))
