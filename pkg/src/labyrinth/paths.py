"""Exit-to-exit paths, square types, path matrices and recursive path expansion."""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order

from .compose import LevelSet
from .pattern import Cell, NotALabyrinthError, Pattern, find_exits, require_labyrinth


class Side(enum.IntEnum):
    T = 0
    B = 1
    L = 2
    R = 3

    @property
    def step(self) -> tuple[int, int]:
        return _STEPS[self]

    @property
    def opposite(self) -> "Side":
        return _OPPOSITE[self]


_STEPS = {Side.T: (0, 1), Side.B: (0, -1), Side.L: (-1, 0), Side.R: (1, 0)}
_OPPOSITE = {Side.T: Side.B, Side.B: Side.T, Side.L: Side.R, Side.R: Side.L}


class PathType(str, enum.Enum):
    """Pair of exits joined by a path; also the type of a square on a path.

    Declaration order is the canonical matrix row/column order.
    """

    TB = "TB"
    LR = "LR"
    TR = "TR"
    RB = "RB"
    BL = "BL"
    LT = "LT"

    @property
    def sides(self) -> tuple[Side, Side]:
        return Side[self.value[0]], Side[self.value[1]]

    @property
    def index(self) -> int:
        return _ORDER_INDEX[self]

    @classmethod
    def from_sides(cls, a: Side, b: Side) -> "PathType":
        t = _PAIR_TO_TYPE.get(frozenset((a, b)))
        if t is None:
            raise ValueError(f"no square type with sides {a.name}, {b.name}")
        return t


SquareType = PathType
ORDER: tuple[PathType, ...] = tuple(PathType)
_ORDER_INDEX = {t: k for k, t in enumerate(ORDER)}
_PAIR_TO_TYPE = {frozenset(t.sides): t for t in ORDER}

# type index for every (side_a, side_b) code pair; -1 where a == b
_PAIR_TABLE = np.full((4, 4), -1, dtype=np.int8)
for _t in ORDER:
    _a, _b = _t.sides
    _PAIR_TABLE[_a, _b] = _PAIR_TABLE[_b, _a] = _t.index

# side code for a unit step (dc, dr), indexed [(dc + 1) * 3 + (dr + 1)]; -1 if not a unit step
_STEP_TABLE = np.full(9, -1, dtype=np.int8)
for _s in Side:
    _dc, _dr = _s.step
    _STEP_TABLE[(_dc + 1) * 3 + (_dr + 1)] = int(_s)


class PathError(ValueError):
    pass


def _step_sides(dc: np.ndarray, dr: np.ndarray) -> np.ndarray:
    ok = (np.abs(dc) + np.abs(dr)) == 1
    out = np.full(dc.shape, -1, dtype=np.int8)
    out[ok] = _STEP_TABLE[((dc[ok] + 1) * 3 + (dr[ok] + 1)).astype(np.int64)]
    return out


def _entry_exit_sides(cols: np.ndarray, rows: np.ndarray, t: PathType) -> tuple[np.ndarray, np.ndarray]:
    """Side of each cell facing its predecessor and its successor on the path.

    The first and last cells face the virtual neighbour outside their exit.
    """
    k = len(cols)
    first, last = t.sides
    entry = np.empty(k, dtype=np.int8)
    exit_ = np.empty(k, dtype=np.int8)
    entry[0] = int(first)
    exit_[-1] = int(last)
    if k > 1:
        dc = np.diff(cols)
        dr = np.diff(rows)
        forward = _step_sides(dc, dr)
        if (forward < 0).any():
            bad = int(np.argmax(forward < 0))
            raise PathError(f"cells {bad} and {bad + 1} are not 4-adjacent")
        exit_[:-1] = forward
        # the predecessor lies in the opposite direction of the step taken
        entry[1:] = forward ^ 1  # T<->B, L<->R under the Side encoding
    return entry, exit_


def _on_side(col: int, row: int, side: Side, m: int) -> bool:
    return {Side.T: row == m - 1, Side.B: row == 0, Side.L: col == 0, Side.R: col == m - 1}[side]


def _type_indices(cols: np.ndarray, rows: np.ndarray, t: PathType, m: int) -> np.ndarray:
    if len(cols) == 0:
        raise PathError("empty path")
    first, last = t.sides
    if not _on_side(int(cols[0]), int(rows[0]), first, m):
        raise PathError(f"first cell is not on the {first.name} side")
    if not _on_side(int(cols[-1]), int(rows[-1]), last, m):
        raise PathError(f"last cell is not on the {last.name} side")
    entry, exit_ = _entry_exit_sides(cols, rows, t)
    types = _PAIR_TABLE[entry, exit_]
    if (types < 0).any():
        bad = int(np.argmax(types < 0))
        raise PathError(f"path reverses direction at cell {bad}")
    return types.astype(np.uint8)


def classify_squares(cells: Sequence[tuple[int, int]], t: PathType, m: int) -> list[SquareType]:
    """Type each cell of a path by its two neighbours within the path.

    Exit cells get a virtual neighbour beyond the boundary side of their exit.
    """
    t = PathType(t)
    arr = np.asarray(cells, dtype=np.int64).reshape(-1, 2)
    idx = _type_indices(arr[:, 0], arr[:, 1], t, m)
    if len({(int(c), int(r)) for c, r in arr}) != len(arr):
        raise PathError("path visits a cell twice")
    return [ORDER[i] for i in idx]


@dataclass(eq=False)
class ExitPath:
    path_type: PathType
    widths: tuple[int, ...]
    cols: np.ndarray
    rows: np.ndarray
    types: np.ndarray  # uint8 indices into ORDER

    @property
    def level(self) -> int:
        return len(self.widths)

    @property
    def width(self) -> int:
        return math.prod(self.widths)

    def __len__(self) -> int:
        return len(self.cols)

    @property
    def cells(self) -> list[Cell]:
        return [Cell(int(c), int(r)) for c, r in zip(self.cols, self.rows)]

    @property
    def square_types(self) -> list[SquareType]:
        return [ORDER[i] for i in self.types]

    def type_counts(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.bincount(self.types, minlength=6))

    def same_cells(self, other: "ExitPath") -> bool:
        return (
            self.path_type == other.path_type
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.types, other.types)
        )

    def to_json(self) -> dict:
        return {
            "type": self.path_type.value,
            "level": self.level,
            "widths": list(self.widths),
            "cells": [[str(int(c)), str(int(r))] for c, r in zip(self.cols, self.rows)],
            "square_types": [ORDER[i].value for i in self.types],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExitPath":
        t = PathType(data["type"])
        widths = tuple(int(w) for w in data["widths"])
        if int(data["level"]) != len(widths):
            raise PathError("level does not match widths")
        cells = np.array([[int(c), int(r)] for c, r in data["cells"]], dtype=np.int64).reshape(-1, 2)
        types = np.array([PathType(s).index for s in data["square_types"]], dtype=np.uint8)
        path = cls(t, widths, cells[:, 0].copy(), cells[:, 1].copy(), types)
        expected = _type_indices(path.cols, path.rows, t, path.width)
        if not np.array_equal(expected, types):
            raise PathError("square types inconsistent with cells")
        return path


def _exit_cell(exits, side: Side) -> Cell:
    return {Side.T: exits.top, Side.B: exits.bottom, Side.L: exits.left, Side.R: exits.right}[side][0]


def _tree_path(grid: np.ndarray, start: Cell, end: Cell) -> tuple[np.ndarray, np.ndarray]:
    m = grid.shape[0]
    rows, cols = np.nonzero(grid)
    node = np.full(grid.shape, -1, dtype=np.int64)
    node[rows, cols] = np.arange(len(rows))
    h = grid[:, :-1] & grid[:, 1:]
    v = grid[:-1, :] & grid[1:, :]
    hr, hc = np.nonzero(h)
    vr, vc = np.nonzero(v)
    src = np.concatenate([node[hr, hc], node[vr, vc]])
    dst = np.concatenate([node[hr, hc + 1], node[vr + 1, vc]])
    n = len(rows)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n)).tocsr()
    s = int(node[start.row, start.col])
    e = int(node[end.row, end.col])
    _, pred = breadth_first_order(graph, s, directed=False, return_predecessors=True)
    chain = [e]
    while chain[-1] != s:
        nxt = int(pred[chain[-1]])
        if nxt < 0:
            raise PathError("exits are not connected")
        chain.append(nxt)
    chain.reverse()
    chain = np.asarray(chain, dtype=np.int64)
    assert m == grid.shape[1]
    return cols[chain].astype(np.int64), rows[chain].astype(np.int64)


def exit_path(p: Pattern | LevelSet, t: PathType | str) -> ExitPath:
    """The unique path in the white-cell tree between the two exits named by ``t``.

    Stored from the first-named exit; a LevelSet argument keeps its widths.
    """
    t = PathType(t)
    if isinstance(p, LevelSet):
        widths, pattern = p.widths, p.pattern
    else:
        widths, pattern = (p.width,), p
    exits = require_labyrinth(pattern)
    first, last = t.sides
    cols, rows = _tree_path(pattern.grid, _exit_cell(exits, first), _exit_cell(exits, last))
    types = _type_indices(cols, rows, t, pattern.width)
    return ExitPath(t, tuple(widths), cols, rows, types)


# -- path matrices -----------------------------------------------------------


@dataclass(frozen=True)
class PathMatrix:
    """6x6 non-negative integer matrix; entry ``[x][y]`` counts ``y``-squares on the ``x``-path."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if len(rows) != 6 or any(len(r) != 6 for r in rows):
            raise ValueError("path matrix must be 6x6")
        if any(v < 0 for r in rows for v in r):
            raise ValueError("path matrix entries must be non-negative")
        object.__setattr__(self, "rows", rows)

    def __getitem__(self, key):
        x, y = key
        return self.rows[PathType(x).index if isinstance(x, str) else x][
            PathType(y).index if isinstance(y, str) else y
        ]

    def __matmul__(self, other: "PathMatrix") -> "PathMatrix":
        cols = list(zip(*other.rows))
        return PathMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    def to_json(self) -> dict:
        return {"order": [t.value for t in ORDER], "rows": [[str(v) for v in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "PathMatrix":
        if list(data["order"]) != [t.value for t in ORDER]:
            raise ValueError("unexpected row/column order")
        return cls(tuple(tuple(int(v) for v in r) for r in data["rows"]))

    @classmethod
    def zero(cls) -> "PathMatrix":
        return cls(tuple((0,) * 6 for _ in range(6)))


def path_matrix(p: Pattern | LevelSet) -> PathMatrix:
    return PathMatrix(tuple(exit_path(p, t).type_counts() for t in ORDER))


def matrix_product(matrices: Iterable[PathMatrix], n: int | None = None) -> PathMatrix:
    matrices = list(matrices)
    if n is not None:
        if n < 1:
            raise ValueError("n must be at least 1")
        if n > len(matrices):
            raise ValueError(f"n={n} but only {len(matrices)} matrices given")
        matrices = matrices[:n]
    if not matrices:
        raise ValueError("empty matrix sequence")
    return functools.reduce(lambda a, b: a @ b, matrices)


def row_lengths(M: PathMatrix) -> dict[PathType, int]:
    return dict(zip(ORDER, M.row_sums()))


# -- expansion ---------------------------------------------------------------

# coordinates are int64; widths beyond this cannot be expanded
_MAX_WIDTH = 1 << 62


@dataclass(frozen=True)
class _SubPathTable:
    """All six exit paths of one pattern, in both directions, flattened."""

    width: int
    starts: np.ndarray
    lengths: np.ndarray
    dcols: np.ndarray
    drows: np.ndarray
    types: np.ndarray


@functools.lru_cache(maxsize=64)
def _subpath_table(p: Pattern) -> _SubPathTable:
    dcols, drows, types, lengths = [], [], [], []
    for t in ORDER:
        path = exit_path(p, t)
        for reverse in (False, True):
            sl = slice(None, None, -1) if reverse else slice(None)
            dcols.append(path.cols[sl])
            drows.append(path.rows[sl])
            types.append(path.types[sl])
            lengths.append(len(path))
    lengths = np.asarray(lengths, dtype=np.int64)
    starts = np.concatenate([[0], np.cumsum(lengths)[:-1]])
    return _SubPathTable(
        p.width, starts, lengths, np.concatenate(dcols), np.concatenate(drows), np.concatenate(types)
    )


def expanded_length(parent: ExitPath, nxt: Pattern) -> int:
    table = _subpath_table(nxt)
    counts = np.bincount(parent.types, minlength=6).astype(object)
    return int(sum(int(c) * int(table.lengths[2 * k]) for k, c in enumerate(counts)))


def expand_path(parent: ExitPath, nxt: Pattern) -> ExitPath:
    """Refine a level ``n-1`` path by one level without building the level-n grid.

    A parent cell of type ``y`` becomes the ``y``-path of ``nxt``, placed in
    that cell and run in the direction the parent path travels.
    """
    table = _subpath_table(nxt)  # validates nxt (raises NotALabyrinthError)
    m = nxt.width
    new_widths = parent.widths + (m,)
    if math.prod(new_widths) >= _MAX_WIDTH:
        raise OverflowError(f"level-{len(new_widths)} width exceeds int64 coordinates")

    entry, _ = _entry_exit_sides(parent.cols, parent.rows, parent.path_type)
    canonical_first = np.array([int(t.sides[0]) for t in ORDER], dtype=np.int8)
    canonical_second = np.array([int(t.sides[1]) for t in ORDER], dtype=np.int8)
    y = parent.types.astype(np.int64)
    reverse = entry != canonical_first[y]
    if (reverse & (entry != canonical_second[y])).any():
        raise PathError("parent square type does not match its entry side")
    key = 2 * y + reverse

    lens = table.lengths[key]
    total = int(lens.sum())
    seg_start = np.cumsum(lens) - lens
    gather = np.repeat(table.starts[key] - seg_start, lens) + np.arange(total, dtype=np.int64)
    cols = np.repeat(parent.cols * m, lens) + table.dcols[gather]
    rows = np.repeat(parent.rows * m, lens) + table.drows[gather]
    types = table.types[gather]

    # sub-paths must join up: matching exits share a row/column
    if total > 1:
        steps = np.abs(np.diff(cols)) + np.abs(np.diff(rows))
        if not (steps == 1).all():
            raise PathError("expanded sub-paths do not join (internal inconsistency)")
    return ExitPath(parent.path_type, new_widths, cols, rows, types)


def expand_sequence(patterns: Sequence[Pattern], t: PathType | str, n: int) -> ExitPath:
    """Level-``n`` exit path of type ``t``, built by repeated expansion."""
    if n < 1 or n > len(patterns):
        raise ValueError(f"level {n} not available from {len(patterns)} patterns")
    path = exit_path(patterns[0], t)
    for p in patterns[1:n]:
        path = expand_path(path, p)
    return path


__all__ = [
    "Side",
    "PathType",
    "SquareType",
    "ORDER",
    "PathError",
    "ExitPath",
    "PathMatrix",
    "NotALabyrinthError",
    "classify_squares",
    "exit_path",
    "path_matrix",
    "matrix_product",
    "row_lengths",
    "expand_path",
    "expand_sequence",
    "expanded_length",
    "find_exits",
]
