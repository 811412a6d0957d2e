"""SVG output for prefractals and curves, drawn in a unit-square viewBox."""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .curves import Polyline
from .pattern import Pattern


def _flip(scale_den: int) -> str:
    # maps integer grid units (y up) onto the unit square (y down)
    s = repr(1.0 / scale_den)
    return f"matrix({s} 0 0 -{s} 0 1)"


def render_svg(
    pattern: Pattern | None = None,
    curve: Polyline | None = None,
    *,
    size: int = 512,
    stroke_width: float = 0.004,
    background: str = "black",
    cell_fill: str = "white",
    stroke: str = "crimson",
    title: str | None = None,
) -> str:
    """Return an SVG document.

    White cells of ``pattern`` become one ``rect`` each; ``curve`` is drawn as
    a single stroked path.  ``stroke_width`` is in unit-square units.
    """
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 1 1">',
    ]
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    parts.append(f'<rect x="0" y="0" width="1" height="1" fill={quoteattr(background)}/>')
    if pattern is not None:
        rows, cols = np.nonzero(pattern.grid)
        parts.append(f'<g class="cells" fill={quoteattr(cell_fill)} transform="{_flip(pattern.width)}">')
        parts.extend(f'<rect x="{c}" y="{r}" width="1" height="1"/>' for r, c in zip(rows, cols))
        parts.append("</g>")
    if curve is not None:
        pts = " L".join(f"{int(x)} {int(y)}" for x, y in zip(curve.xs, curve.ys))
        width = stroke_width * curve.den
        parts.append(
            f'<path class="curve" d="M{pts}" fill="none" stroke={quoteattr(stroke)} '
            f'stroke-width="{width!r}" stroke-linejoin="round" transform="{_flip(curve.den)}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
