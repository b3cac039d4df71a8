"""Deterministic SVG rendering of curves, shadings, witnesses, and joins.

Pieces map to native path commands (L, A, C); arcs wider than pi are split
so the large-arc flag is never needed.  The y axis is flipped to keep math
orientation (counterclockwise positive) on screen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import CurveSpec
from .pieces import ArcPiece, CubicPiece, LinePiece

__all__ = ["render_svg"]

_INSIDE_FILL = "#cfe3f7"
_NEAR_FILL = "#f7e3a1"


@dataclass(frozen=True)
class _Frame:
    x0: float
    y0: float
    scale: float
    height: float
    pad: float

    def map(self, x: float, y: float) -> tuple[float, float]:
        return (
            (x - self.x0) * self.scale + self.pad,
            self.height - ((y - self.y0) * self.scale + self.pad),
        )


def _fmt(v: float) -> str:
    return f"{v:.4f}"


def _frame_for(bbox: tuple[float, float, float, float], size: int) -> _Frame:
    x0, y0, x1, y1 = bbox
    pad = 0.05 * size
    span = max(x1 - x0, y1 - y0, 1e-9)
    scale = (size - 2 * pad) / span
    return _Frame(x0=x0, y0=y0, scale=scale, height=size, pad=pad)


def _path_data(spec: CurveSpec, fr: _Frame) -> str:
    start = spec.pieces[0].point(0.0)
    sx, sy = fr.map(start.x, start.y)
    parts = [f"M {_fmt(sx)} {_fmt(sy)}"]
    for piece in spec.pieces:
        if isinstance(piece, LinePiece):
            x, y = fr.map(piece.end.x, piece.end.y)
            parts.append(f"L {_fmt(x)} {_fmt(y)}")
        elif isinstance(piece, ArcPiece):
            n = max(1, int(math.ceil(abs(piece.sweep) / math.pi - 1e-12)))
            r = piece.radius * fr.scale
            # math-positive sweep appears angle-decreasing after the y flip
            flag = 0 if piece.sweep > 0 else 1
            for k in range(1, n + 1):
                a = piece.start_angle + piece.sweep * k / n
                ex = piece.center.x + piece.radius * math.cos(a)
                ey = piece.center.y + piece.radius * math.sin(a)
                x, y = fr.map(ex, ey)
                parts.append(
                    f"A {_fmt(r)} {_fmt(r)} 0 0 {flag} {_fmt(x)} {_fmt(y)}"
                )
        else:
            assert isinstance(piece, CubicPiece)
            x1, y1 = fr.map(piece.p1.x, piece.p1.y)
            x2, y2 = fr.map(piece.p2.x, piece.p2.y)
            x3, y3 = fr.map(piece.p3.x, piece.p3.y)
            parts.append(
                f"C {_fmt(x1)} {_fmt(y1)} {_fmt(x2)} {_fmt(y2)} "
                f"{_fmt(x3)} {_fmt(y3)}"
            )
    if spec.is_closed:
        parts.append("Z")
    return " ".join(parts)


def _spec_bbox(spec: CurveSpec) -> tuple[float, float, float, float]:
    boxes = [p.bbox() for p in spec.pieces]
    xs0, ys0, xs1, ys1 = zip(*boxes)
    return (min(xs0), min(ys0), max(xs1), max(ys1))


def render_svg(
    spec: CurveSpec,
    size: int = 640,
    shade=None,
    witnesses=(),
    join=None,
    stroke: str = "#202020",
) -> str:
    """Render a curve (plus optional overlays) to an SVG document string.

    ``shade`` accepts a :class:`~curvewind.index.RegionGrid`: inside cells
    are tinted, invalid (near-carrier) cells get a warning tone.
    ``witnesses`` are :class:`~curvewind.index.Witness` records; ``join``
    is a :class:`~curvewind.connectivity.PolygonalJoin`.
    """

    bbox = _spec_bbox(spec)
    fr = _frame_for(bbox, size)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    if shade is not None:
        side = shade.spacing * fr.scale
        cells = []
        for (cx, cy), w, v in zip(shade.centers, shade.winding, shade.valid):
            if v and w == 0:
                continue
            fill = _INSIDE_FILL if v else _NEAR_FILL
            x, y = fr.map(float(cx), float(cy))
            cells.append(
                f'<rect x="{_fmt(x - side / 2)}" y="{_fmt(y - side / 2)}" '
                f'width="{_fmt(side)}" height="{_fmt(side)}" fill="{fill}"/>'
            )
        out.append(f'<g stroke="none">{"".join(cells)}</g>')
    out.append(
        f'<path d="{_path_data(spec, fr)}" fill="none" stroke="{stroke}" '
        f'stroke-width="1.5"/>'
    )
    if join is not None:
        pts = " ".join(
            "{},{}".format(*map(_fmt, fr.map(v.x, v.y))) for v in join.vertices
        )
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="#1255cc" '
            f'stroke-width="1.2" stroke-dasharray="4 3"/>'
        )
    marks = []
    for w in witnesses:
        for pt, color in ((w.inside, "#0a7d32"), (w.outside, "#b02418")):
            x, y = fr.map(pt[0], pt[1])
            marks.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.2" fill="{color}"/>'
            )
        x, y = fr.map(w.on_curve[0], w.on_curve[1])
        marks.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="1.4" fill="#000"/>')
    if marks:
        out.append(f'<g stroke="none">{"".join(marks)}</g>')
    out.append("</svg>")
    return "\n".join(out)
