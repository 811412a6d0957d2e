"""Substitution step: place a scaled copy of the next pattern in every white cell."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pattern import Pattern, read_pattern, serialize_pattern

# full grids are built only up to this width (about 16.7M cells)
DEFAULT_CAP = 4096
HARD_CAP = 8192


class CapExceededError(OverflowError):
    def __init__(self, width: int, cap: int):
        self.width = width
        self.cap = cap
        super().__init__(f"grid width {width} exceeds materialization cap {cap}")


def _check_cap(width: int, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if cap > HARD_CAP:
        raise ValueError(f"cap {cap} above hard limit {HARD_CAP}")
    if width > cap:
        raise CapExceededError(width, cap)


def compose(outer: Pattern, inner: Pattern, cap: int | None = None) -> Pattern:
    """Cell ``(i*m_in + i', j*m_in + j')`` is white iff ``(i, j)`` is white in
    ``outer`` and ``(i', j')`` is white in ``inner``."""
    _check_cap(outer.width * inner.width, cap)
    return Pattern(np.kron(outer.grid, inner.grid).astype(bool))


@dataclass(frozen=True)
class LevelSet:
    level: int
    widths: tuple[int, ...]
    pattern: Pattern

    def __post_init__(self):
        if self.level != len(self.widths) or self.level < 1:
            raise ValueError("level must equal the number of widths")
        if self.pattern.width != math.prod(self.widths):
            raise ValueError("pattern width is not the product of the widths")

    @property
    def width(self) -> int:
        return self.pattern.width

    def sidecar(self) -> dict:
        return {"level": self.level, "widths": list(self.widths)}

    def write(self, pat_path, json_path=None) -> None:
        with open(pat_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(serialize_pattern(self.pattern) + "\n")
        if json_path is None:
            json_path = str(pat_path) + ".json"
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(self.sidecar(), fh)

    @classmethod
    def read(cls, pat_path, json_path=None) -> "LevelSet":
        pattern = read_pattern(pat_path)
        if json_path is None:
            json_path = str(pat_path) + ".json"
        with open(json_path, encoding="utf-8") as fh:
            meta = json.load(fh)
        return cls(int(meta["level"]), tuple(int(w) for w in meta["widths"]), pattern)


def compose_seq(patterns: Sequence[Pattern], n: int, cap: int | None = None) -> LevelSet:
    if not patterns:
        raise ValueError("empty pattern sequence")
    if n < 1:
        raise ValueError("level must be at least 1")
    if n > len(patterns):
        raise ValueError(f"level {n} requested but only {len(patterns)} patterns given")
    widths = tuple(p.width for p in patterns[:n])
    # check before building anything
    _check_cap(math.prod(widths), cap)
    grid = patterns[0].grid
    for p in patterns[1:n]:
        grid = np.kron(grid, p.grid).astype(bool)
    return LevelSet(n, widths, Pattern(grid))
