"""Independent brute-force reference implementations.

These work on plain Python sets of (col, row) tuples and share no code with
the package beyond the input values, so agreement is a real cross-check.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

ORDER = ("TB", "LR", "TR", "RB", "BL", "LT")
STEP = {"T": (0, 1), "B": (0, -1), "L": (-1, 0), "R": (1, 0)}


def white_set(p) -> set[tuple[int, int]]:
    return {(c.col, c.row) for c in p.white}


def neighbours(cell):
    c, r = cell
    return [(c + dc, r + dr) for dc, dr in STEP.values()]


def union_find_is_tree(cells: set[tuple[int, int]]) -> bool:
    parent = {c: c for c in cells}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in cells:
        for d in ((c[0] + 1, c[1]), (c[0], c[1] + 1)):
            if d in cells:
                a, b = find(c), find(d)
                if a == b:
                    return False  # a cycle
                parent[a] = b
    return len({find(c) for c in cells}) == 1


def exits(cells, m) -> dict[str, list[tuple[int, int]]]:
    return {
        "T": sorted((c, r) for c, r in cells if r == m - 1 and (c, 0) in cells),
        "B": sorted((c, r) for c, r in cells if r == 0 and (c, m - 1) in cells),
        "L": sorted((c, r) for c, r in cells if c == 0 and (m - 1, r) in cells),
        "R": sorted((c, r) for c, r in cells if c == m - 1 and (0, r) in cells),
    }


def is_labyrinth(cells, m) -> bool:
    if m < 3 or not union_find_is_tree(cells):
        return False
    if any(len(v) != 1 for v in exits(cells, m).values()):
        return False
    corners = [(0, 0), (m - 1, m - 1), (0, m - 1), (m - 1, 0)]
    c = [x in cells for x in corners]
    return not (c[0] and c[1]) and not (c[2] and c[3])


def bfs_path(cells, start, goal) -> list[tuple[int, int]]:
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            break
        for nb in neighbours(cur):
            if nb in cells and nb not in prev:
                prev[nb] = cur
                queue.append(nb)
    out = [goal]
    while out[-1] != start:
        out.append(prev[out[-1]])
    return out[::-1]


def _direction(a, b) -> str:
    d = (b[0] - a[0], b[1] - a[1])
    for k, v in STEP.items():
        if v == d:
            return k
    raise AssertionError(f"{a} and {b} are not adjacent")


def square_types(path, t: str) -> list[str]:
    """Type each cell from the two sides its path neighbours sit on."""
    out = []
    for k, cell in enumerate(path):
        s1 = t[0] if k == 0 else _direction(cell, path[k - 1])
        s2 = t[1] if k == len(path) - 1 else _direction(cell, path[k + 1])
        pair = {s1, s2}
        out.append(next(q for q in ORDER if set(q) == pair))
    return out


def oracle_path(cells, m, t: str):
    ex = exits(cells, m)
    path = bfs_path(cells, ex[t[0]][0], ex[t[1]][0])
    return path, square_types(path, t)


def oracle_matrix(cells, m) -> list[list[int]]:
    rows = []
    for t in ORDER:
        _, types = oracle_path(cells, m, t)
        rows.append([types.count(q) for q in ORDER])
    return rows


def oracle_compose(outer, m_out, inner, m_in) -> set[tuple[int, int]]:
    return {(i * m_in + a, j * m_in + b) for i, j in outer for a, b in inner}


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(6)) for j in range(6)] for i in range(6)]


def polyline_length(points) -> Fraction:
    return sum(
        (abs(x1 - x0) + abs(y1 - y0) for (x0, y0), (x1, y1) in zip(points, points[1:])),
        Fraction(0),
    )


def blocked_cross_rows(a: int) -> list[list[int]]:
    """Closed-form path matrix of the blocked special cross."""
    d, o = 2 * a - 3, a - 2
    return [
        [d, 0, 2, 2, 2, 2],
        [0, d, 2, 2, 2, 2],
        [o, o, 3, 2, 2, 2],
        [o, o, 2, 3, 2, 2],
        [o, o, 2, 2, 3, 2],
        [o, o, 2, 2, 2, 3],
    ]


def half_cross_rows(a: int) -> list[list[int]]:
    """Closed-form path matrix of the horizontally blocked half cross."""
    return [
        [2 * a + 1, 0, 0, 0, 0, 0],
        [0, 2 * a - 3, 2, 2, 2, 2],
        [a, a - 2, 2, 1, 1, 1],
        [a, a - 2, 1, 2, 1, 1],
        [a, a - 2, 1, 1, 2, 1],
        [a, a - 2, 1, 1, 1, 2],
    ]


def sampled_directed_sq(a_pts, b_pts, step: Fraction):
    """Sampled lower bound of the squared directed Hausdorff distance from A to B.

    Points of A are taken every ``step`` along each segment; exact distance to
    the segments of B.  The true directed distance d satisfies
    sqrt(result) <= d <= sqrt(result) + step / 2.
    """

    def seg_dist_sq(px, py, s):
        (x0, y0), (x1, y1) = s
        lx, hx = min(x0, x1), max(x0, x1)
        ly, hy = min(y0, y1), max(y0, y1)
        dx = lx - px if px < lx else (px - hx if px > hx else 0)
        dy = ly - py if py < ly else (py - hy if py > hy else 0)
        return dx * dx + dy * dy

    b_segs = list(zip(b_pts, b_pts[1:]))
    best = Fraction(0)
    for (x0, y0), (x1, y1) in zip(a_pts, a_pts[1:]):
        length = abs(x1 - x0) + abs(y1 - y0)
        n = max(1, int(length / step) + 1)
        for k in range(n + 1):
            f = Fraction(k, n)
            px, py = x0 + (x1 - x0) * f, y0 + (y1 - y0) * f
            best = max(best, min(seg_dist_sq(px, py, s) for s in b_segs))
    return best
