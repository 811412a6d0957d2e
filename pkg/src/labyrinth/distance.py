"""Exact Hausdorff distance between axis-parallel polylines with rational vertices.

Along an axis-parallel segment ``s`` the squared distance to another
axis-parallel segment ``b`` has the form ``K + dist(u, [l, r])**2`` in the
coordinate ``u`` running along ``s``.  The lower envelope of such functions
has its maximum at a segment end, at a breakpoint ``l``/``r``, or where two
parabolic pieces cross, and all of those are rational; so is a flat piece
cut off by a parabola, whose value is its constant.  The squared distance is
therefore always rational and is computed exactly here; the distance itself
is reported through a rational enclosure of its square root.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .curves import Polyline

_EXACT_BELOW = 8  # active functions on an interval before switching to the exact envelope


def _dist1(u, lo, hi):
    if u < lo:
        return lo - u
    if u > hi:
        return u - hi
    return 0


def _interval_gap(p, q, lo, hi):
    if q < lo:
        return lo - q
    if p > hi:
        return p - hi
    return 0


def _scaled_segments(c: Polyline, scale: int) -> list[tuple[int, int, int, int]]:
    xs = [int(x) * scale for x in c.xs]
    ys = [int(y) * scale for y in c.ys]
    segs = []
    for k in range(len(xs) - 1):
        x0, x1 = sorted((xs[k], xs[k + 1]))
        y0, y1 = sorted((ys[k], ys[k + 1]))
        segs.append((x0, y0, x1, y1))
    return segs


class _SegmentIndex:
    """Uniform-grid bucket index over axis-parallel segments."""

    def __init__(self, segs: Sequence[tuple[int, int, int, int]]):
        self.segs = segs
        total = sum((x1 - x0) + (y1 - y0) for x0, y0, x1, y1 in segs)
        self.cell = max(1, 2 * total // max(1, len(segs)))
        self.buckets: dict[tuple[int, int], list[int]] = defaultdict(list)
        c = self.cell
        for k, (x0, y0, x1, y1) in enumerate(segs):
            for gx in range(x0 // c, x1 // c + 1):
                for gy in range(y0 // c, y1 // c + 1):
                    self.buckets[gx, gy].append(k)

    def query(self, x0, y0, x1, y1) -> set[int]:
        c = self.cell
        gx0, gx1 = math.floor(x0 / c), math.floor(x1 / c)
        gy0, gy1 = math.floor(y0 / c), math.floor(y1 / c)
        out: set[int] = set()
        if (gx1 - gx0 + 1) * (gy1 - gy0 + 1) > len(self.buckets):
            for (gx, gy), ids in self.buckets.items():
                if gx0 <= gx <= gx1 and gy0 <= gy <= gy1:
                    out.update(ids)
            return out
        for gx in range(gx0, gx1 + 1):
            for gy in range(gy0, gy1 + 1):
                ids = self.buckets.get((gx, gy))
                if ids:
                    out.update(ids)
        return out

    def nearest_sq(self, px, py):
        r = self.cell
        while True:
            ids = self.query(px - r, py - r, px + r, py + r)
            if ids:
                best = min(
                    _dist1(px, s[0], s[2]) ** 2 + _dist1(py, s[1], s[3]) ** 2 for s in (self.segs[k] for k in ids)
                )
                if best <= r * r:
                    return best
            r *= 2


def _functions_along(seg, others):
    """``(K, l, r)`` triples so that squared distance at ``u`` is ``K + dist(u, [l, r])**2``."""
    x0, y0, x1, y1 = seg
    if y0 == y1:  # horizontal, u = x
        w = y0
        return (x0, x1), [(_dist1(w, b[1], b[3]) ** 2, b[0], b[2]) for b in others]
    w = x0
    return (y0, y1), [(_dist1(w, b[0], b[2]) ** 2, b[1], b[3]) for b in others]


def _g(f, u):
    K, lo, hi = f
    d = _dist1(u, lo, hi)
    return K + d * d


def _envelope_sup(funcs, p, q):
    """Exact ``max_{u in [p, q]} min_f f(u)``."""
    if p == q:
        return min(_g(f, p) for f in funcs)
    cuts = {p, q}
    for _, lo, hi in funcs:
        if p < lo < q:
            cuts.add(lo)
        if p < hi < q:
            cuts.add(hi)
    cuts = sorted(cuts)
    best = None
    for a, b in zip(cuts, cuts[1:]):
        flat = None
        parabolas = []
        for K, lo, hi in funcs:
            if lo <= a and b <= hi:
                flat = K if flat is None else min(flat, K)
            else:
                parabolas.append((K, hi if hi <= a else lo))
        value = flat
        if parabolas:
            candidates = [a, b]
            for (K1, c1), (K2, c2) in combinations(parabolas, 2):
                if c1 != c2:
                    u = Fraction(K2 + c2 * c2 - K1 - c1 * c1, 2 * (c2 - c1))
                    if a < u < b:
                        candidates.append(u)
            sup_phi = max(min(K + (u - c) ** 2 for K, c in parabolas) for u in candidates)
            value = sup_phi if value is None else min(value, sup_phi)
        best = value if best is None else max(best, value)
    return best


def _segment_sup(funcs, p, q, best):
    """Raise ``best`` to ``max(best, sup over [p, q] of the envelope)``."""
    stack = [(p, q, funcs)]
    while stack:
        p, q, funcs = stack.pop()
        gp = [_g(f, p) for f in funcs]
        gq = [_g(f, q) for f in funcs]
        best = max(best, min(gp), min(gq))
        upper = min(max(a, b) for a, b in zip(gp, gq))
        if upper <= best:
            continue
        active = [f for f in funcs if f[0] + _interval_gap(p, q, f[1], f[2]) ** 2 <= upper]
        if len(active) <= _EXACT_BELOW or q - p <= 1:
            best = max(best, _envelope_sup(active, p, q))
            continue
        # endpoints are integers (common-denominator coordinates), keep them so
        mid = (p + q) // 2
        stack.append((p, mid, active))
        stack.append((mid, q, active))
    return best


def _directed_sq(a_segs, b_index: _SegmentIndex):
    """Exact squared directed Hausdorff distance from segment set A to B."""
    vertex_sq = {}
    best = 0
    for x0, y0, x1, y1 in a_segs:
        for pt in ((x0, y0), (x1, y1)):
            if pt not in vertex_sq:
                vertex_sq[pt] = b_index.nearest_sq(*pt)
                best = max(best, vertex_sq[pt])
    for seg in a_segs:
        x0, y0, x1, y1 = seg
        length = (x1 - x0) + (y1 - y0)
        if length == 0:
            continue
        d0 = math.sqrt(vertex_sq[x0, y0])
        d1 = math.sqrt(vertex_sq[x1, y1])
        # 1-Lipschitz bound on the distance along the segment, padded for float rounding
        reach = (d0 + d1 + length) / 2 * (1 + 1e-9) + 1
        if reach * reach <= best:
            continue
        r = math.ceil(reach)
        ids = b_index.query(x0 - r, y0 - r, x1 + r, y1 + r)
        (p, q), funcs = _functions_along(seg, [b_index.segs[k] for k in ids])
        best = _segment_sup(funcs, p, q, best)
    return best


@dataclass(frozen=True)
class HausdorffDistance:
    """A distance known exactly through its square."""

    squared: Fraction

    def enclosure(self, tol: Fraction = Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        """Rationals ``lo <= d <= hi`` with ``hi - lo <= tol`` (``lo == hi`` when d is rational)."""
        tol = Fraction(tol)
        num, den = self.squared.numerator, self.squared.denominator
        root_num, root_den = math.isqrt(num), math.isqrt(den)
        if root_num * root_num == num and root_den * root_den == den:
            exact = Fraction(root_num, root_den)
            return exact, exact
        # sqrt(num/den) = sqrt(num*den)/den, then refine by a power of two
        scale = 1
        while Fraction(1, den * scale) > tol:
            scale *= 2
        s = math.isqrt(num * den * scale * scale)
        return Fraction(s, den * scale), Fraction(s + 1, den * scale)

    @property
    def lo(self) -> Fraction:
        return self.enclosure()[0]

    @property
    def hi(self) -> Fraction:
        return self.enclosure()[1]

    def __float__(self) -> float:
        return math.sqrt(self.squared)

    def at_most_sqrt(self, value: Fraction) -> bool:
        """Exact test ``d <= sqrt(value)``."""
        return self.squared <= Fraction(value)


def hausdorff_distance(a: Polyline, b: Polyline) -> HausdorffDistance:
    """Symmetric Hausdorff distance between the point sets of two polylines."""
    den = math.lcm(int(a.den), int(b.den))
    a_segs = _scaled_segments(a, den // int(a.den))
    b_segs = _scaled_segments(b, den // int(b.den))
    forward = _directed_sq(a_segs, _SegmentIndex(b_segs))
    backward = _directed_sq(b_segs, _SegmentIndex(a_segs))
    return HausdorffDistance(Fraction(max(forward, backward)) / (den * den))


def directed_hausdorff_sq(a: Polyline, b: Polyline) -> Fraction:
    den = math.lcm(int(a.den), int(b.den))
    a_segs = _scaled_segments(a, den // int(a.den))
    b_segs = _scaled_segments(b, den // int(b.den))
    return Fraction(_directed_sq(a_segs, _SegmentIndex(b_segs))) / (den * den)
