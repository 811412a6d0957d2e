"""Approximating curves through cell centres and edge midpoints, with exact lengths."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .generators import SequenceSpec, length_prefix
from .paths import ExitPath, PathType, _entry_exit_sides

# edge midpoint of each side, in half-cell units relative to the cell corner
_MID_DX = np.array([1, 1, 0, 2], dtype=np.int64)  # T, B, L, R
_MID_DY = np.array([2, 0, 1, 1], dtype=np.int64)


@dataclass(eq=False)
class Polyline:
    """Axis-parallel polyline with vertices ``(xs[k]/den, ys[k]/den)``."""

    level: int
    path_type: PathType
    xs: np.ndarray
    ys: np.ndarray
    den: int

    def __post_init__(self):
        if len(self.xs) < 2 or len(self.xs) != len(self.ys):
            raise ValueError("polyline needs at least two vertices")
        dx = np.diff(self.xs)
        dy = np.diff(self.ys)
        if ((dx != 0) & (dy != 0)).any():
            raise ValueError("polyline segments must be axis-parallel")

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def vertices(self) -> list[tuple[Fraction, Fraction]]:
        return [(Fraction(int(x), self.den), Fraction(int(y), self.den)) for x, y in zip(self.xs, self.ys)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polyline):
            return NotImplemented
        return self.vertices == other.vertices

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "path_type": self.path_type.value,
            "vertices": [[[v.numerator, v.denominator] for v in pt] for pt in self.vertices],
        }

    @classmethod
    def from_points(cls, points, level: int = 0, path_type: PathType = PathType.TB) -> "Polyline":
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        den = 1
        for x, y in pts:
            den = np.lcm(den, np.lcm(x.denominator, y.denominator))
        den = int(den)
        xs = np.array([int(x * den) for x, _ in pts], dtype=np.int64)
        ys = np.array([int(y * den) for _, y in pts], dtype=np.int64)
        return cls(level, PathType(path_type), xs, ys, den)


def _merge_collinear(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if len(xs) <= 2:
        return xs, ys
    same_x = (xs[:-2] == xs[1:-1]) & (xs[1:-1] == xs[2:])
    same_y = (ys[:-2] == ys[1:-1]) & (ys[1:-1] == ys[2:])
    keep = np.ones(len(xs), dtype=bool)
    keep[1:-1] = ~(same_x | same_y)
    return xs[keep], ys[keep]


def curve_from_path(path: ExitPath) -> Polyline:
    """Polyline joining, cell by cell, entry-edge midpoint -> centre -> exit-edge midpoint.

    Every cell contributes length ``1/m(n)``; collinear runs are merged.
    """
    entry, exit_ = _entry_exit_sides(path.cols, path.rows, path.path_type)
    bx = 2 * path.cols
    by = 2 * path.rows
    k = len(path)
    xs = np.empty(2 * k + 1, dtype=np.int64)
    ys = np.empty(2 * k + 1, dtype=np.int64)
    xs[0] = bx[0] + _MID_DX[entry[0]]
    ys[0] = by[0] + _MID_DY[entry[0]]
    xs[1::2] = bx + 1
    ys[1::2] = by + 1
    xs[2::2] = bx + _MID_DX[exit_]
    ys[2::2] = by + _MID_DY[exit_]
    xs, ys = _merge_collinear(xs, ys)
    return Polyline(path.level, path.path_type, xs, ys, 2 * path.width)


def curve_length(c: Polyline) -> Fraction:
    total = int(np.abs(np.diff(c.xs)).sum()) + int(np.abs(np.diff(c.ys)).sum())
    return Fraction(total, c.den)


def arc_length_lower_bound(k: int, mn: int) -> Fraction:
    """Minimum length of a curve inside the level-n set crossing a ``k``-cell exit path."""
    if k < 1 or mn < 1:
        raise ValueError("k and m(n) must be positive")
    return Fraction(k - 1, 2 * mn)


def length_sequence(spec: SequenceSpec, q: PathType | str, N: int) -> list[Fraction]:
    """Curve lengths at levels 1..N from matrix row sums; no polylines are built."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if spec.available is not None and N > spec.available:
        raise ValueError(f"sequence only defines {spec.available} patterns")
    return list(length_prefix(spec, N)[PathType(q)])


def parametrize(c: Polyline, t: Fraction) -> tuple[Fraction, Fraction]:
    """Point at parameter ``t`` in [0, 1], constant speed.

    Every generating cell contributes the same length, so cell ``k`` of ``K``
    occupies the parameter interval ``[k/K, (k+1)/K]``.
    """
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    target = t * curve_length(c)
    verts = c.vertices
    for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
        seg = abs(x1 - x0) + abs(y1 - y0)
        if target <= seg:
            if seg == 0:
                return x0, y0
            f = target / seg
            return x0 + (x1 - x0) * f, y0 + (y1 - y0) * f
        target -= seg
    return verts[-1]


__all__ = [
    "Polyline",
    "curve_from_path",
    "curve_length",
    "arc_length_lower_bound",
    "length_sequence",
    "parametrize",
]
