"""Pattern families, fuzz patterns, sequence specifications and the arc-length classifier."""

from __future__ import annotations

import functools
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .pattern import Pattern, corner_ok, find_exits, read_pattern, require_labyrinth, validate
from .paths import ORDER, PathMatrix, PathType, matrix_product, path_matrix

MIN_CROSS_ARM = 5


def _blocker_indices(a: int) -> tuple[int, int]:
    # Blocker rows/columns are given 1-indexed for a width 2a+1 pattern whose
    # central square sits in row/column a+1; this is the only place the -1
    # shift to 0-indexed cells happens.
    if a % 2:
        p1, p2 = (a + 1) // 2, (3 * a + 3) // 2
    else:
        p1, p2 = (a + 2) // 2, (3 * a + 2) // 2
    return p1 - 1, p2 - 1


def _cross_grid(m: int, center: int) -> np.ndarray:
    grid = np.zeros((m, m), dtype=bool)
    grid[center, :] = True
    grid[:, center] = True
    return grid


def _block_vertical_arm(grid: np.ndarray, a: int) -> None:
    for r in _blocker_indices(a):
        grid[r, a] = False
        grid[r - 1 : r + 2, a - 1] = True


def _block_horizontal_arm(grid: np.ndarray, a: int) -> None:
    for c in _blocker_indices(a):
        grid[a, c] = False
        grid[a - 1, c - 1 : c + 2] = True


def _check_arm(a: int) -> None:
    if not isinstance(a, (int, np.integer)) or a < MIN_CROSS_ARM:
        raise ValueError(f"cross patterns need a >= {MIN_CROSS_ARM}, got {a!r}")


@functools.lru_cache(maxsize=128)
def special_cross(a: int) -> Pattern:
    """Blocked cross of width ``2a+1``: each arm detours around one black cell."""
    _check_arm(a)
    grid = _cross_grid(2 * a + 1, a)
    _block_vertical_arm(grid, a)
    _block_horizontal_arm(grid, a)
    return Pattern(grid)


@functools.lru_cache(maxsize=128)
def half_blocked_cross(a: int) -> Pattern:
    """Cross of width ``2a+1`` blocked on the horizontal arms only."""
    _check_arm(a)
    grid = _cross_grid(2 * a + 1, a)
    _block_horizontal_arm(grid, a)
    return Pattern(grid)


def plus_pattern(m: int) -> Pattern:
    if m < 3 or m % 2 == 0:
        raise ValueError(f"plus patterns need an odd width >= 3, got {m}")
    return Pattern(_cross_grid(m, m // 2))


def cross_matrix(a: int) -> PathMatrix:
    """Closed-form path matrix of ``special_cross(a)``."""
    d, e = 2 * a - 3, a - 2
    return PathMatrix(
        (
            (d, 0, 2, 2, 2, 2),
            (0, d, 2, 2, 2, 2),
            (e, e, 3, 2, 2, 2),
            (e, e, 2, 3, 2, 2),
            (e, e, 2, 2, 3, 2),
            (e, e, 2, 2, 2, 3),
        )
    )


def half_cross_matrix(a: int) -> PathMatrix:
    """Closed-form path matrix of ``half_blocked_cross(a)``."""
    e = a - 2
    return PathMatrix(
        (
            (2 * a + 1, 0, 0, 0, 0, 0),
            (0, 2 * a - 3, 2, 2, 2, 2),
            (a, e, 2, 1, 1, 1),
            (a, e, 1, 2, 1, 1),
            (a, e, 1, 1, 2, 1),
            (a, e, 1, 1, 1, 2),
        )
    )


# -- fuzzing -----------------------------------------------------------------

_NEIGHBOURS = ((0, 1), (0, -1), (1, 0), (-1, 0))


def _white_neighbours(grid: np.ndarray, r: int, c: int) -> int:
    m = grid.shape[0]
    return sum(1 for dr, dc in _NEIGHBOURS if 0 <= r + dr < m and 0 <= c + dc < m and grid[r + dr, c + dc])


def _props_2_3(grid: np.ndarray) -> bool:
    p = Pattern(grid)
    return find_exits(p).unique and corner_ok(p)


def random_labyrinth(m: int, seed: int, proposals: int | None = None) -> Pattern:
    """Deterministic pseudo-random labyrinth pattern of width ``m``.

    Random walk from a cross: each proposal adds a black cell with exactly one
    white neighbour or removes a white leaf (both keep the white graph a
    tree), and is kept only if exits stay unique and no opposite corners are
    both white.
    """
    if m < 3:
        raise ValueError("labyrinth patterns need width >= 3")
    rng = np.random.default_rng([m, seed])
    grid = _cross_grid(m, m // 2)
    if proposals is None:
        proposals = 4 * m * m
    for _ in range(proposals):
        r, c = (int(v) for v in rng.integers(0, m, size=2))
        if _white_neighbours(grid, r, c) != 1:
            continue
        grid[r, c] = not grid[r, c]
        if not _props_2_3(grid):
            grid[r, c] = not grid[r, c]
    result = Pattern(grid)
    if not validate(result).is_labyrinth:  # pragma: no cover - walk keeps the invariant
        return Pattern(_cross_grid(m, m // 2))
    return result


# -- sequence specifications -------------------------------------------------


@dataclass(frozen=True)
class ARule:
    """``a_k = c1*k + c0`` (affine) or ``a_k = c * b**k`` (geometric)."""

    type: Literal["affine", "geometric"]
    c0: int = 0
    c1: int = 0
    c: int = 1
    b: int = 2

    def __post_init__(self):
        if self.type == "affine":
            if self.c1 < 0:
                raise ValueError("affine rule needs c1 >= 0")
        elif self.type == "geometric":
            if self.b < 2 or self.c < 1:
                raise ValueError("geometric rule needs b >= 2 and c >= 1")
        else:
            raise ValueError(f"unknown a-rule type {self.type!r}")
        # both rules are non-decreasing, so a_1 is the minimum
        if self(1) < MIN_CROSS_ARM:
            raise ValueError(f"a-rule gives a_1 = {self(1)} < {MIN_CROSS_ARM}")

    def __call__(self, k: int) -> int:
        if self.type == "affine":
            return self.c1 * k + self.c0
        return self.c * self.b**k

    @property
    def sum_inverse_widths_converges(self) -> bool:
        return self.type == "geometric"

    def to_json(self) -> dict:
        if self.type == "affine":
            return {"type": "affine", "c0": self.c0, "c1": self.c1}
        return {"type": "geometric", "c": self.c, "b": self.b}

    @classmethod
    def from_json(cls, data: dict) -> "ARule":
        kind = data.get("type")
        if kind == "affine":
            return cls("affine", c0=int(data["c0"]), c1=int(data["c1"]))
        if kind == "geometric":
            return cls("geometric", c=int(data["c"]), b=int(data["b"]))
        raise ValueError(f"unknown a-rule type {kind!r}")


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class SequenceSpec:
    kind: Literal["cross", "half_cross", "explicit"]
    a: ARule | None = None
    patterns: tuple[Pattern, ...] = ()
    repeat: Literal["cycle", "truncate"] = "cycle"
    pattern_paths: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind in ("cross", "half_cross"):
            if self.a is None:
                raise SpecError(f"{self.kind} sequence needs an a-rule")
        elif self.kind == "explicit":
            if not self.patterns:
                raise SpecError("explicit sequence needs at least one pattern")
            if self.repeat not in ("cycle", "truncate"):
                raise SpecError(f"unknown repeat rule {self.repeat!r}")
            for k, p in enumerate(self.patterns):
                if not validate(p).is_labyrinth:
                    raise SpecError(f"pattern {k + 1} is not a labyrinth pattern")
        else:
            raise SpecError(f"unknown sequence kind {self.kind!r}")

    @classmethod
    def cross(cls, c0: int = 4, c1: int = 1) -> "SequenceSpec":
        return cls("cross", ARule("affine", c0=c0, c1=c1))

    @classmethod
    def cross_geometric(cls, c: int = 1, b: int = 5) -> "SequenceSpec":
        return cls("cross", ARule("geometric", c=c, b=b))

    @classmethod
    def half_cross(cls, c0: int = 4, c1: int = 1) -> "SequenceSpec":
        return cls("half_cross", ARule("affine", c0=c0, c1=c1))

    @classmethod
    def explicit(cls, patterns, repeat: str = "cycle") -> "SequenceSpec":
        return cls("explicit", patterns=tuple(patterns), repeat=repeat)

    @property
    def available(self) -> int | None:
        """Number of patterns defined, or None for an infinite sequence."""
        if self.kind == "explicit" and self.repeat == "truncate":
            return len(self.patterns)
        return None

    def _check_index(self, k: int) -> None:
        if k < 1:
            raise SpecError("pattern index starts at 1")
        if self.available is not None and k > self.available:
            raise SpecError(f"sequence only defines {self.available} patterns")

    def a_value(self, k: int) -> int:
        if self.a is None:
            raise SpecError("explicit sequences have no a-rule")
        return self.a(k)

    def pattern(self, k: int) -> Pattern:
        self._check_index(k)
        if self.kind == "cross":
            return special_cross(self.a(k))
        if self.kind == "half_cross":
            return half_blocked_cross(self.a(k))
        return self.patterns[(k - 1) % len(self.patterns)]

    def width(self, k: int) -> int:
        self._check_index(k)
        if self.kind == "explicit":
            return self.pattern(k).width
        return 2 * self.a(k) + 1

    def widths(self, n: int) -> tuple[int, ...]:
        return tuple(self.width(k) for k in range(1, n + 1))

    def matrix(self, k: int) -> PathMatrix:
        """Path matrix of pattern ``k``; closed form for the cross families."""
        self._check_index(k)
        if self.kind == "cross":
            return cross_matrix(self.a(k))
        if self.kind == "half_cross":
            return half_cross_matrix(self.a(k))
        return _cached_path_matrix(self.pattern(k))

    def matrices(self, n: int) -> list[PathMatrix]:
        return [self.matrix(k) for k in range(1, n + 1)]

    def to_json(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.a is not None:
            data["a"] = self.a.to_json()
        if self.kind == "explicit":
            data["patterns"] = list(self.pattern_paths)
            data["repeat"] = self.repeat
        return data

    @classmethod
    def from_json(cls, data: dict, base_dir: str | os.PathLike | None = None) -> "SequenceSpec":
        try:
            kind = data["kind"]
            if kind in ("cross", "half_cross"):
                return cls(kind, ARule.from_json(data["a"]))
            if kind == "explicit":
                paths = [str(p) for p in data["patterns"]]
                resolved = [p if base_dir is None or os.path.isabs(p) else os.path.join(base_dir, p) for p in paths]
                patterns = tuple(read_pattern(p) for p in resolved)
                return cls(kind, patterns=patterns, repeat=data.get("repeat", "cycle"), pattern_paths=tuple(paths))
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed sequence spec: {exc}") from exc
        raise SpecError(f"unknown sequence kind {data.get('kind')!r}")


def load_spec(source: str) -> SequenceSpec:
    """Load a spec from a JSON file path, or from inline JSON text."""
    if source.lstrip().startswith("{"):
        return SequenceSpec.from_json(json.loads(source))
    with open(source, encoding="utf-8") as fh:
        data = json.load(fh)
    return SequenceSpec.from_json(data, base_dir=os.path.dirname(os.path.abspath(source)))


@functools.lru_cache(maxsize=256)
def _cached_path_matrix(p: Pattern) -> PathMatrix:
    return path_matrix(p)


# -- classification ----------------------------------------------------------

FINITE, INFINITE, UNKNOWN = "Finite", "Infinite", "Unknown"
EVIDENCE_LEVELS = 8


@dataclass(frozen=True)
class Verdict:
    verdict: str
    rationale: str
    refinement: dict[PathType, str] | None = None
    evidence: dict[PathType, tuple[Fraction, ...]] = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "rationale": self.rationale}
        if self.refinement is not None:
            out["refinement"] = {t.value: v for t, v in self.refinement.items()}
        out["evidence"] = {
            t.value: [{"n": n, "exact": f"{x.numerator}/{x.denominator}", "approx": float(x)} for n, x in enumerate(xs, 1)]
            for t, xs in self.evidence.items()
        }
        return out


def length_prefix(spec: SequenceSpec, n_max: int) -> dict[PathType, tuple[Fraction, ...]]:
    """Curve lengths at levels 1..n_max for every path type, via matrix products."""
    if spec.available is not None:
        n_max = min(n_max, spec.available)
    out: dict[PathType, list[Fraction]] = {t: [] for t in ORDER}
    M = None
    width = 1
    for k in range(1, n_max + 1):
        Mk = spec.matrix(k)
        M = Mk if M is None else M @ Mk
        width *= spec.width(k)
        for t, s in zip(ORDER, M.row_sums()):
            out[t].append(Fraction(s, width))
    return {t: tuple(v) for t, v in out.items()}


def classify_arc_length(spec: SequenceSpec) -> Verdict:
    """Rule-based finite/infinite arc-length verdict.

    Only sequences covered by a proven argument get a definite verdict:
    geometric widths make the curve lengths converge, widths with a divergent
    reciprocal sum (or a repeating cycle whose paths are strictly longer than
    the cycle width) make the exit-path lower bound grow without limit.
    Everything else is Unknown.
    """
    evidence = length_prefix(spec, EVIDENCE_LEVELS)
    if spec.kind == "cross":
        if spec.a.sum_inverse_widths_converges:
            return Verdict(FINITE, "cross: geometric widths, sum of 1/m_k converges", None, evidence)
        rule = "bounded widths" if spec.a.c1 == 0 else "affine widths"
        return Verdict(INFINITE, f"cross: {rule}, sum of 1/m_k diverges", None, evidence)

    if spec.kind == "half_cross":
        others = FINITE if spec.a.sum_inverse_widths_converges else INFINITE
        refinement = {t: (FINITE if t is PathType.TB else others) for t in ORDER}
        return Verdict(
            others,
            "half_cross: top-bottom arc is a straight segment; other arcs follow sum of 1/m_k",
            refinement,
            evidence,
        )

    if spec.repeat != "cycle":
        return Verdict(UNKNOWN, "explicit: finite list does not determine the sequence", None, evidence)
    cycle = matrix_product(_cached_path_matrix(p) for p in spec.patterns)
    cycle_width = math.prod(p.width for p in spec.patterns)
    if min(cycle.row_sums()) > cycle_width:
        return Verdict(
            INFINITE,
            "explicit cycle: every exit path outgrows the cycle width, lower bound diverges",
            None,
            evidence,
        )
    return Verdict(UNKNOWN, "explicit cycle: no applicable rule", None, evidence)


def family_pattern(family: str, value: int, seed: int = 0) -> Pattern:
    if family == "cross":
        return special_cross(value)
    if family == "half_cross":
        return half_blocked_cross(value)
    if family == "plus":
        return plus_pattern(value)
    if family == "random":
        return random_labyrinth(value, seed)
    raise ValueError(f"unknown family {family!r}")


__all__ = [
    "special_cross",
    "half_blocked_cross",
    "plus_pattern",
    "random_labyrinth",
    "cross_matrix",
    "half_cross_matrix",
    "ARule",
    "SequenceSpec",
    "SpecError",
    "Verdict",
    "classify_arc_length",
    "length_prefix",
    "load_spec",
    "family_pattern",
    "require_labyrinth",
]
