"""Square patterns of white/black cells and the labyrinth property checks.

Coordinates follow the geometric convention: a cell is ``(col, row)`` with
row 0 at the bottom of the unit square.  The ``.pat`` text format lists rows
top-down, so the parser and serializer flip the row order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np
from scipy import ndimage


class Cell(NamedTuple):
    col: int
    row: int


class PatternFormatError(ValueError):
    """Raised for malformed ``.pat`` text; carries the 1-based line/column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class Pattern:
    """An immutable ``m x m`` grid of cells, some of them white.

    The grid is held as a read-only boolean array indexed ``[row, col]``.
    """

    __slots__ = ("_grid", "_white_count")

    def __init__(self, grid: np.ndarray):
        grid = np.array(grid, dtype=bool, copy=True)
        if grid.ndim != 2 or grid.shape[0] != grid.shape[1] or grid.shape[0] < 1:
            raise ValueError(f"pattern grid must be square and non-empty, got shape {grid.shape}")
        count = int(grid.sum())
        if count == 0:
            raise ValueError("pattern has no white cells")
        grid.flags.writeable = False
        self._grid = grid
        self._white_count = count

    @classmethod
    def from_cells(cls, width: int, cells: Iterable[tuple[int, int]]) -> "Pattern":
        grid = np.zeros((width, width), dtype=bool)
        for col, row in cells:
            if not (0 <= col < width and 0 <= row < width):
                raise ValueError(f"cell {(col, row)} outside a {width}-pattern")
            grid[row, col] = True
        return cls(grid)

    @property
    def width(self) -> int:
        return self._grid.shape[0]

    @property
    def grid(self) -> np.ndarray:
        return self._grid

    @property
    def white(self) -> frozenset[Cell]:
        rows, cols = np.nonzero(self._grid)
        return frozenset(Cell(int(c), int(r)) for r, c in zip(rows, cols))

    def __len__(self) -> int:
        return self._white_count

    def is_white(self, col: int, row: int) -> bool:
        return bool(self._grid[row, col])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.width == other.width and bool(np.array_equal(self._grid, other._grid))

    def __hash__(self) -> int:
        return hash((self.width, self._grid.tobytes()))

    def __repr__(self) -> str:
        return f"Pattern(width={self.width}, white={self._white_count})"

    def rotate(self, quarter_turns: int = 1) -> "Pattern":
        """Rotate counter-clockwise by ``quarter_turns * 90`` degrees."""
        # np.rot90 on [row, col] with row 0 at the bottom turns clockwise in
        # geometric terms, hence the negation.
        return Pattern(np.rot90(self._grid, -quarter_turns))

    def mirror(self) -> "Pattern":
        """Reflect in the vertical axis (left <-> right)."""
        return Pattern(self._grid[:, ::-1])


# -- text format ------------------------------------------------------------


def parse_pattern(text: str) -> Pattern:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise PatternFormatError("empty input", line=1)
    header = lines[0].strip()
    if not header.isdigit():
        raise PatternFormatError(f"expected a decimal width, found {lines[0]!r}", line=1)
    m = int(header)
    if m < 1:
        raise PatternFormatError("width must be at least 1", line=1)
    body = lines[1:]
    if len(body) != m:
        raise PatternFormatError(f"expected {m} rows, found {len(body)}", line=len(lines) + 1)

    grid = np.zeros((m, m), dtype=bool)
    for k, line in enumerate(body):
        lineno = k + 2
        if line.endswith("\r"):
            raise PatternFormatError("CR line endings are not accepted", line=lineno)
        if len(line) != m:
            raise PatternFormatError(f"expected {m} characters, found {len(line)}", line=lineno)
        row = m - 1 - k
        for col, ch in enumerate(line):
            if ch == ".":
                grid[row, col] = True
            elif ch != "#":
                raise PatternFormatError(f"illegal character {ch!r}", line=lineno, column=col + 1)
    if not grid.any():
        raise PatternFormatError("pattern has no white cells", line=2)
    return Pattern(grid)


def serialize_pattern(p: Pattern) -> str:
    chars = np.where(p.grid[::-1], ".", "#")
    return "\n".join([str(p.width)] + ["".join(r) for r in chars])


def read_pattern(path) -> Pattern:
    with open(path, encoding="utf-8") as fh:
        return parse_pattern(fh.read())


def write_pattern(p: Pattern, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_pattern(p) + "\n")


# -- exits and validation ---------------------------------------------------


@dataclass(frozen=True)
class ExitSet:
    top: tuple[Cell, ...]
    bottom: tuple[Cell, ...]
    left: tuple[Cell, ...]
    right: tuple[Cell, ...]

    @property
    def unique(self) -> bool:
        return all(len(side) == 1 for side in (self.top, self.bottom, self.left, self.right))

    def to_json(self) -> dict:
        return {side: [list(c) for c in getattr(self, side)] for side in ("top", "bottom", "left", "right")}


def find_exits(p: Pattern) -> ExitSet:
    g = p.grid
    m = p.width
    vertical = np.nonzero(g[m - 1, :] & g[0, :])[0]
    horizontal = np.nonzero(g[:, 0] & g[:, m - 1])[0]
    return ExitSet(
        top=tuple(Cell(int(c), m - 1) for c in vertical),
        bottom=tuple(Cell(int(c), 0) for c in vertical),
        left=tuple(Cell(0, int(r)) for r in horizontal),
        right=tuple(Cell(m - 1, int(r)) for r in horizontal),
    )


def adjacency_edge_count(grid: np.ndarray) -> int:
    return int(np.count_nonzero(grid[:, 1:] & grid[:, :-1]) + np.count_nonzero(grid[1:, :] & grid[:-1, :]))


def is_connected(grid: np.ndarray) -> bool:
    # default structuring element in 2-D is 4-connectivity
    _, ncomp = ndimage.label(grid)
    return ncomp == 1


def is_tree(p: Pattern) -> bool:
    return adjacency_edge_count(p.grid) == len(p) - 1 and is_connected(p.grid)


def corner_ok(p: Pattern) -> bool:
    g = p.grid
    return not ((g[0, 0] and g[-1, -1]) or (g[0, -1] and g[-1, 0]))


class NotALabyrinthError(ValueError):
    pass


def blockedness(p: Pattern, exits: ExitSet | None = None) -> tuple[bool, bool]:
    """Return ``(horizontally_blocked, vertically_blocked)``.

    Horizontal blocking means the row joining the left and right exits
    contains a black cell; vertical blocking is the same for the column
    joining the top and bottom exits.
    """
    if exits is None:
        exits = find_exits(p)
    if not exits.unique:
        raise NotALabyrinthError("blockedness needs exactly one exit per side")
    row = exits.left[0].row
    col = exits.top[0].col
    assert exits.right[0].row == row and exits.bottom[0].col == col
    return (not bool(p.grid[row, :].all()), not bool(p.grid[:, col].all()))


@dataclass(frozen=True)
class ValidationReport:
    width: int
    is_tree: bool
    exit_set: ExitSet
    exits_unique: bool
    corner_ok: bool
    is_labyrinth: bool
    horizontally_blocked: bool | None = None
    vertically_blocked: bool | None = None
    problems: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "width": self.width,
            "is_labyrinth": self.is_labyrinth,
            "is_tree": self.is_tree,
            "exits_unique": self.exits_unique,
            "corner_ok": self.corner_ok,
            "horizontally_blocked": self.horizontally_blocked,
            "vertically_blocked": self.vertically_blocked,
            "exits": self.exit_set.to_json(),
            "problems": list(self.problems),
        }


def validate(p: Pattern) -> ValidationReport:
    """Check the three labyrinth properties (plus ``m >= 3``) and blockedness.

    Never raises for a well-formed Pattern; every violation found is listed in
    ``problems``.  Blockedness flags are ``None`` unless the pattern is a
    labyrinth pattern.
    """
    problems = []
    tree = is_tree(p)
    if not tree:
        problems.append(
            f"white-cell graph is not a tree ({len(p)} cells, {adjacency_edge_count(p.grid)} edges, "
            f"{'connected' if is_connected(p.grid) else 'disconnected'})"
        )
    exits = find_exits(p)
    for side in ("top", "bottom", "left", "right"):
        n = len(getattr(exits, side))
        if n != 1:
            problems.append(f"{n} {side} exits (need exactly 1)")
    corners = corner_ok(p)
    if not corners:
        problems.append("white cells at two diagonally opposite corners")
    if p.width < 3:
        problems.append(f"width {p.width} < 3")
    labyrinth = tree and exits.unique and corners and p.width >= 3
    hb = vb = None
    if labyrinth:
        hb, vb = blockedness(p, exits)
    return ValidationReport(
        width=p.width,
        is_tree=tree,
        exit_set=exits,
        exits_unique=exits.unique,
        corner_ok=corners,
        is_labyrinth=labyrinth,
        horizontally_blocked=hb,
        vertically_blocked=vb,
        problems=tuple(problems),
    )


def require_labyrinth(p: Pattern) -> ExitSet:
    report = validate(p)
    if not report.is_labyrinth:
        raise NotALabyrinthError("not a labyrinth pattern: " + "; ".join(report.problems))
    return report.exit_set
