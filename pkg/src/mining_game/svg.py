"""Minimal self-contained SVG line plots (no plotting dependency).

Just enough for the sweep outputs: polylines, markers, straight segments,
axes with ticks, and a text legend.  Coordinates are formatted to 0.01 px
so output bytes are stable.
"""

from __future__ import annotations

from typing import Optional, Sequence

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def palette(i: int) -> str:
    return _PALETTE[i % len(_PALETTE)]


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:g}"


class LinePlot:
    def __init__(self, x_range: tuple[float, float], y_range: tuple[float, float],
                 x_label: str = "", y_label: str = "", title: str = "",
                 width: int = 640, height: int = 440, margin: int = 60):
        if x_range[0] >= x_range[1] or y_range[0] >= y_range[1]:
            raise ValueError("axis ranges must be nonempty")
        self.x_range = x_range
        self.y_range = y_range
        self.x_label = x_label
        self.y_label = y_label
        self.title = title
        self.width = width
        self.height = height
        self.margin = margin
        self._body: list[str] = []
        self._legend: list[tuple[str, str]] = []

    # -- coordinate transform -------------------------------------------------
    def _x(self, x: float) -> float:
        lo, hi = self.x_range
        return self.margin + (x - lo) / (hi - lo) * (self.width - 2 * self.margin)

    def _y(self, y: float) -> float:
        lo, hi = self.y_range
        return self.height - self.margin - (y - lo) / (hi - lo) * (self.height - 2 * self.margin)

    # -- drawing primitives ---------------------------------------------------
    def polyline(self, points: Sequence[tuple[float, float]], color: str,
                 stroke_width: float = 1.8, dasharray: Optional[str] = None) -> None:
        if len(points) < 2:
            if points:
                self.marker(points[0][0], points[0][1], color)
            return
        coords = " ".join(f"{_fmt(self._x(x))},{_fmt(self._y(y))}" for x, y in points)
        dash = f' stroke-dasharray="{dasharray}"' if dasharray else ""
        self._body.append(f'<polyline points="{coords}" fill="none" stroke="{color}"'
                          f' stroke-width="{stroke_width}"{dash}/>')

    def segment(self, x0: float, y0: float, x1: float, y1: float, color: str,
                stroke_width: float = 1.8, dasharray: Optional[str] = None) -> None:
        dash = f' stroke-dasharray="{dasharray}"' if dasharray else ""
        self._body.append(f'<line x1="{_fmt(self._x(x0))}" y1="{_fmt(self._y(y0))}"'
                          f' x2="{_fmt(self._x(x1))}" y2="{_fmt(self._y(y1))}"'
                          f' stroke="{color}" stroke-width="{stroke_width}"{dash}/>')

    def marker(self, x: float, y: float, color: str, radius: float = 3.0) -> None:
        self._body.append(f'<circle cx="{_fmt(self._x(x))}" cy="{_fmt(self._y(y))}"'
                          f' r="{radius:g}" fill="{color}"/>')

    def legend_entry(self, label: str, color: str) -> None:
        self._legend.append((label, color))

    # -- assembly ---------------------------------------------------------
    def _axes(self) -> list[str]:
        x0, x1 = self.x_range
        y0, y1 = self.y_range
        left, right = self._x(x0), self._x(x1)
        bottom, top = self._y(y0), self._y(y1)
        out = [f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(right - left)}"'
               f' height="{_fmt(bottom - top)}" fill="none" stroke="#333333"/>']
        n_ticks = 5
        for i in range(n_ticks + 1):
            xv = x0 + (x1 - x0) * i / n_ticks
            px = self._x(xv)
            out.append(f'<line x1="{_fmt(px)}" y1="{_fmt(bottom)}" x2="{_fmt(px)}"'
                       f' y2="{_fmt(bottom + 5)}" stroke="#333333"/>')
            out.append(f'<text x="{_fmt(px)}" y="{_fmt(bottom + 20)}" font-size="12"'
                       f' text-anchor="middle">{_tick_label(xv)}</text>')
            yv = y0 + (y1 - y0) * i / n_ticks
            py = self._y(yv)
            out.append(f'<line x1="{_fmt(left - 5)}" y1="{_fmt(py)}" x2="{_fmt(left)}"'
                       f' y2="{_fmt(py)}" stroke="#333333"/>')
            out.append(f'<text x="{_fmt(left - 8)}" y="{_fmt(py + 4)}" font-size="12"'
                       f' text-anchor="end">{_tick_label(yv)}</text>')
        mid_x = (left + right) / 2
        mid_y = (top + bottom) / 2
        if self.x_label:
            out.append(f'<text x="{_fmt(mid_x)}" y="{_fmt(self.height - 12)}"'
                       f' font-size="14" text-anchor="middle">{self.x_label}</text>')
        if self.y_label:
            out.append(f'<text x="16" y="{_fmt(mid_y)}" font-size="14" text-anchor="middle"'
                       f' transform="rotate(-90 16 {_fmt(mid_y)})">{self.y_label}</text>')
        if self.title:
            out.append(f'<text x="{_fmt(mid_x)}" y="24" font-size="15"'
                       f' text-anchor="middle">{self.title}</text>')
        return out

    def _legend_svg(self) -> list[str]:
        out = []
        x = self.width - self.margin - 150
        y = self._y(self.y_range[1]) + 16
        for i, (label, color) in enumerate(self._legend):
            yy = y + 18 * i
            out.append(f'<line x1="{_fmt(x)}" y1="{_fmt(yy - 4)}" x2="{_fmt(x + 22)}"'
                       f' y2="{_fmt(yy - 4)}" stroke="{color}" stroke-width="2.5"/>')
            out.append(f'<text x="{_fmt(x + 28)}" y="{_fmt(yy)}" font-size="12">{label}</text>')
        return out

    def to_svg(self) -> str:
        parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}"'
                 f' height="{self.height}" viewBox="0 0 {self.width} {self.height}">',
                 '<rect width="100%" height="100%" fill="white"/>']
        parts.extend(self._axes())
        parts.extend(self._body)
        parts.extend(self._legend_svg())
        parts.append("</svg>")
        return "\n".join(parts) + "\n"

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_svg())
