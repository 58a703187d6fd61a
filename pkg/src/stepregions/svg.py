"""Two-dimensional arrangement pictures as standalone SVG documents.

Each hyperplane is drawn as a line clipped to the viewport with a small
arrow marking its positive side, every region gets its label printed at
the region's witness point, and the regions of an optional selection are
shaded. Output is deterministic: same arrangement, same bytes.
"""

from __future__ import annotations

import numpy as np

from .geometry import (
    DEFAULT_BOX,
    DEFAULT_MARGIN,
    DEFAULT_TOL,
    enumerate_regions,
    label_text,
)

_CANVAS_WIDTH = 720.0
_PAD_FRACTION = 0.2


def _fmt(v):
    return f"{v:.2f}"


def _viewport_from_witnesses(regions):
    pts = np.vstack([r.witness for r in regions])
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = hi - lo
    pad = np.where(span > 0, span * _PAD_FRACTION, 1.0)
    lo = lo - pad
    hi = hi + pad
    return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])


def _clip_line_to_rect(point, direction, rect):
    """Parameter interval of a line inside an axis-aligned rectangle."""
    xmin, ymin, xmax, ymax = rect
    t0, t1 = -np.inf, np.inf
    for axis, (lo, hi) in enumerate(((xmin, xmax), (ymin, ymax))):
        p, d = point[axis], direction[axis]
        if abs(d) < 1e-15:
            if p < lo or p > hi:
                return None
            continue
        ta, tb = (lo - p) / d, (hi - p) / d
        if ta > tb:
            ta, tb = tb, ta
        t0, t1 = max(t0, ta), min(t1, tb)
    if t0 >= t1:
        return None
    return t0, t1


def _clip_polygon(polygon, normal, offset):
    """Keep the part of a convex polygon with normal.x + offset >= 0."""
    out = []
    m = len(polygon)
    for i in range(m):
        p = polygon[i]
        q = polygon[(i + 1) % m]
        fp = float(normal @ p) + offset
        fq = float(normal @ q) + offset
        if fp >= 0:
            out.append(p)
        if (fp >= 0) != (fq >= 0):
            t = fp / (fp - fq)
            out.append(p + t * (q - p))
    return out


def render_svg(arrangement, selection=None, viewport=None, tol=DEFAULT_TOL,
               box=DEFAULT_BOX, margin=DEFAULT_MARGIN):
    """Render a 2-D arrangement (optionally with a shaded selection).

    ``viewport`` is ``(xmin, ymin, xmax, ymax)`` in world coordinates; the
    default is the bounding box of all region witnesses padded by 20%, so
    every region label is visible. Returns the SVG document as text.
    """
    if arrangement.dimension != 2:
        raise ValueError("plot requires dimension 2")
    regions = enumerate_regions(arrangement, tol=tol, box=box, margin=margin)
    rect = viewport if viewport is not None else _viewport_from_witnesses(regions)
    xmin, ymin, xmax, ymax = (float(v) for v in rect)
    if xmax <= xmin or ymax <= ymin:
        raise ValueError("viewport must have positive extent")

    scale = _CANVAS_WIDTH / (xmax - xmin)
    width = _CANVAS_WIDTH
    height = (ymax - ymin) * scale

    def to_px(p):
        return (float(p[0]) - xmin) * scale, (ymax - float(p[1])) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'fill="white" stroke="#444" stroke-width="1"/>',
    ]

    corners = [
        np.array([xmin, ymin]),
        np.array([xmax, ymin]),
        np.array([xmax, ymax]),
        np.array([xmin, ymax]),
    ]
    if selection is not None:
        vu = arrangement.unit_normals
        bu = arrangement.unit_offsets
        for label in sorted(selection.selected,
                            key=lambda m: tuple((m >> i) & 1 for i in range(arrangement.k))):
            poly = list(corners)
            for i in range(arrangement.k):
                sign = 1.0 if (label >> i) & 1 else -1.0
                poly = _clip_polygon(poly, sign * vu[i], sign * float(bu[i]))
                if len(poly) < 3:
                    break
            if len(poly) >= 3:
                pts = " ".join(
                    f"{_fmt(px)},{_fmt(py)}" for px, py in (to_px(p) for p in poly)
                )
                lines.append(
                    f'<polygon points="{pts}" fill="#9ecae1" fill-opacity="0.55"/>'
                )

    diag = min(width, height)
    arrow_len = 0.045 * diag
    for i, h in enumerate(arrangement.hyperplanes):
        vu_i = arrangement.unit_normals[i]
        bu_i = float(arrangement.unit_offsets[i])
        anchor = -bu_i * vu_i
        direction = np.array([-vu_i[1], vu_i[0]])
        span = _clip_line_to_rect(anchor, direction, (xmin, ymin, xmax, ymax))
        if span is None:
            continue
        p0 = anchor + span[0] * direction
        p1 = anchor + span[1] * direction
        (x0, y0), (x1, y1) = to_px(p0), to_px(p1)
        lines.append(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
            f'y2="{_fmt(y1)}" stroke="#333" stroke-width="1.5"/>'
        )
        mid = anchor + 0.5 * (span[0] + span[1]) * direction
        mx, my = to_px(mid)
        # Positive-side direction in pixel space (y axis flips).
        nx, ny = vu_i[0], -vu_i[1]
        tipx, tipy = mx + arrow_len * nx, my + arrow_len * ny
        headx = tipx + 0.35 * arrow_len * nx
        heady = tipy + 0.35 * arrow_len * ny
        perpx, perpy = -ny, nx
        wing = 0.18 * arrow_len
        lines.append(
            f'<line x1="{_fmt(mx)}" y1="{_fmt(my)}" x2="{_fmt(tipx)}" '
            f'y2="{_fmt(tipy)}" stroke="#d62728" stroke-width="1.5"/>'
        )
        lines.append(
            '<polygon points="'
            f'{_fmt(headx)},{_fmt(heady)} '
            f'{_fmt(tipx + wing * perpx)},{_fmt(tipy + wing * perpy)} '
            f'{_fmt(tipx - wing * perpx)},{_fmt(tipy - wing * perpy)}'
            '" fill="#d62728"/>'
        )
        lines.append(
            f'<text x="{_fmt(headx + 4.0)}" y="{_fmt(heady - 4.0)}" '
            f'font-family="monospace" font-size="13" fill="#d62728">{i + 1}</text>'
        )

    for region in regions:
        px, py = to_px(region.witness)
        lines.append(
            f'<text x="{_fmt(px)}" y="{_fmt(py)}" font-family="monospace" '
            f'font-size="13" text-anchor="middle" fill="#111" '
            f'class="region-label">{label_text(region.label)}</text>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
