"""Exact rational machinery: perturbed-integer point families and open
interval families, with a Minkowski-sum engine for unions of open intervals.

Point families live on a common denominator D = lcm(1..r_max), so every
set operation and distance bound is integer arithmetic.  Every summand of
an h-fold sum splits into a base point plus a perturbation chosen
independently, so layer folds are computed as (sums of h base points)
plus (sums of h perturbations) instead of tuples over the full point set.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import ConstructionError, InputError

Interval = tuple[Fraction, Fraction]


def _validate_base_points(points) -> tuple:
    pts = tuple(points)
    if not pts:
        raise ConstructionError("at least one base point is required")
    if pts[0] <= 1:
        raise ConstructionError(f"the first base point must exceed 1, got {pts[0]}")
    for a, b in zip(pts, pts[1:]):
        if b - a <= 2:
            raise ConstructionError(
                f"base points must rise by more than 2, got gap {b - a} "
                f"between {a} and {b}"
            )
    return pts


# ---------------------------------------------------------------------------
# rational perturbation families


@dataclass(frozen=True)
class RationalPerturbFamily:
    """Layers {b_n + 1/r : q <= |r| <= r_max}, optionally keeping b_n itself.

    Base points are strictly increasing integers with b_1 > 1 and gaps
    above 2, which keeps the per-point perturbation clusters disjoint.
    """

    base_points: tuple[int, ...]
    include_base: bool = False
    n_max: int | None = None
    r_max: int = 16

    def __post_init__(self):
        pts = _validate_base_points(self.base_points)
        if any(not isinstance(b, int) for b in pts):
            raise ConstructionError("base points must be integers")
        object.__setattr__(self, "base_points", pts)
        n = len(pts) if self.n_max is None else self.n_max
        if not 1 <= n <= len(pts):
            raise ConstructionError(
                f"n_max must be between 1 and {len(pts)}, got {self.n_max}"
            )
        object.__setattr__(self, "n_max", n)
        if self.r_max < 1:
            raise ConstructionError(f"r_max must be >= 1, got {self.r_max}")

    @property
    def points(self) -> tuple[int, ...]:
        return self.base_points[: self.n_max]


def rational_family_set(family: RationalPerturbFamily, q: int) -> list[Fraction]:
    """All layer-q points under the family's materialization bounds."""
    if q < 1:
        raise InputError(f"layer index must be >= 1, got {q}")
    if q > family.r_max:
        raise InputError(
            f"layer {q} has no perturbations within r_max={family.r_max}"
        )
    out = []
    for b in family.points:
        if family.include_base:
            out.append(Fraction(b))
        for r in range(q, family.r_max + 1):
            out.append(b + Fraction(1, r))
            out.append(b - Fraction(1, r))
    return sorted(out)


def _perturbation_offsets(q: int, r_max: int, denom: int, with_zero: bool) -> list[int]:
    offs = {denom // r for r in range(q, r_max + 1)}
    offs |= {-o for o in offs}
    if with_zero:
        offs.add(0)
    return sorted(offs)


def _fold_values(values, h: int) -> set:
    """Distinct sums of h values drawn with repetition."""
    return {sum(c) for c in combinations_with_replacement(sorted(values), h)}


def _base_sums(points, h: int, lo, hi) -> list:
    """Sums of h base points (with repetition) inside [lo, hi], sorted."""
    pts = sorted(points)
    found = set()

    def rec(start: int, left: int, acc):
        if left == 0:
            if lo <= acc <= hi:
                found.add(acc)
            return
        for i in range(start, len(pts)):
            nxt = acc + pts[i]
            if nxt + (left - 1) * pts[i] > hi:
                break
            if nxt + (left - 1) * pts[-1] < lo:
                continue
            rec(i, left - 1, nxt)

    rec(0, h, 0)
    return sorted(found)


@dataclass(frozen=True)
class RationalTheoremReport:
    """Exact truncation data for one (h, Q) rational-perturbation run."""

    h: int
    Q: int
    r_max: int
    window: tuple[Fraction, Fraction]
    base_sums: tuple[Fraction, ...]
    intersection_size: int
    base_in_intersection: bool
    missing_base: tuple[Fraction, ...]
    bound: Fraction
    max_distance: Fraction | None
    bound_ok: bool
    violations: tuple[Fraction, ...]
    monotone: bool

    @property
    def ok(self) -> bool:
        return self.base_in_intersection and self.bound_ok and self.monotone


def verify_rational_theorem(
    family: RationalPerturbFamily,
    h: int,
    Q: int,
    value_window: tuple,
    r_max: int | None = None,
) -> RationalTheoremReport:
    """Truncated layer-fold intersection against sums of base points.

    Checks that every window sum of h base points survives all Q layer
    folds (each layer admits zero-sum perturbations such as 1/q - 1/q and
    1/q - 1/(2q) - 1/(2q), which needs r_max >= 2Q), and that everything
    surviving lies within h/Q of a base sum.  All arithmetic is integer
    on the common denominator lcm(1..r_max).
    """
    if h < 2:
        raise InputError(f"h must be >= 2, got {h}")
    if not 2 * h < Q:
        raise InputError(f"the truncation depth must satisfy 2h < Q, got Q={Q}")
    r_max = family.r_max if r_max is None else r_max
    if r_max < 2 * Q:
        raise InputError(
            f"r_max={r_max} cannot express the zero-sum perturbations; "
            f"need r_max >= 2Q = {2 * Q}"
        )
    lo, hi = Fraction(value_window[0]), Fraction(value_window[1])
    if lo >= hi:
        raise InputError(f"empty value window [{lo}, {hi}]")

    denom = math.lcm(*range(1, r_max + 1))
    lo_s, hi_s = lo * denom, hi * denom
    base = _base_sums(family.points, h, lo - h, hi + h)
    base_scaled = [int(s) * denom for s in base]

    intersection: set[int] | None = None
    monotone = True
    prev: set[int] | None = None
    for q in range(1, Q + 1):
        offsets = _perturbation_offsets(q, r_max, denom, family.include_base)
        folds = _fold_values(offsets, h)
        layer = {
            sv + f
            for sv in base_scaled
            for f in folds
            if lo_s <= sv + f <= hi_s
        }
        if prev is not None and not layer <= prev:
            monotone = False
        prev = layer
        intersection = layer if intersection is None else intersection & layer
    assert intersection is not None

    in_window = [s for s in base_scaled if lo_s <= s <= hi_s]
    missing = [s for s in in_window if s not in intersection]

    bound = Fraction(h, Q)
    bound_scaled = bound * denom
    max_dist: Fraction | None = None
    violations = []
    for x in sorted(intersection):
        i = bisect_left(base_scaled, x)
        best = min(
            abs(x - base_scaled[j])
            for j in (i - 1, i)
            if 0 <= j < len(base_scaled)
        )
        if max_dist is None or best > max_dist * denom:
            max_dist = Fraction(best, denom)
        if best > bound_scaled:
            violations.append(Fraction(x, denom))

    return RationalTheoremReport(
        h=h,
        Q=Q,
        r_max=r_max,
        window=(lo, hi),
        base_sums=tuple(Fraction(s, denom) for s in in_window),
        intersection_size=len(intersection),
        base_in_intersection=not missing,
        missing_base=tuple(Fraction(s, denom) for s in missing),
        bound=bound,
        max_distance=max_dist,
        bound_ok=not violations,
        violations=tuple(violations),
        monotone=monotone,
    )


# ---------------------------------------------------------------------------
# open interval unions


@dataclass(frozen=True)
class IntervalUnion:
    """Disjoint open intervals with rational endpoints, sorted.

    Overlapping intervals merge; intervals that merely touch stay apart,
    since (a,b) | (b,c) misses b.
    """

    intervals: tuple[Interval, ...] = ()

    @staticmethod
    def build(pairs) -> "IntervalUnion":
        items = sorted(
            (Fraction(a), Fraction(b)) for a, b in pairs if Fraction(a) < Fraction(b)
        )
        merged: list[list[Fraction]] = []
        for a, b in items:
            if merged and a < merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return IntervalUnion(tuple((a, b) for a, b in merged))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, x) -> bool:
        x = Fraction(x)
        i = bisect_left(self.intervals, (x, x)) - 1
        for j in (i, i + 1):
            if 0 <= j < len(self.intervals):
                a, b = self.intervals[j]
                if a < x < b:
                    return True
        return False

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion.build(self.intervals + other.intervals)

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] <= b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalUnion(tuple(out))

    def restrict(self, lo, hi) -> "IntervalUnion":
        return self.intersect(IntervalUnion.build([(lo, hi)]))

    def minkowski(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion.build(
            (a + c, b + d)
            for a, b in self.intervals
            for c, d in other.intervals
        )


def minkowski_hfold(u: IntervalUnion, h: int) -> IntervalUnion:
    """Exact h-fold Minkowski sum; (a,b)+(c,d) = (a+c, b+d) throughout."""
    if h < 1:
        raise InputError(f"h must be >= 1, got {h}")
    acc = u
    for _ in range(h - 1):
        acc = acc.minkowski(u)
    return acc


def interval_layer(points, q: int, punctured: bool = True) -> IntervalUnion:
    """Layer q of an open-interval family around the base points.

    Punctured: (b - 1/q, b) | (b, b + 1/q) per point; otherwise the full
    interval (b - 1/q, b + 1/q).
    """
    if q < 1:
        raise InputError(f"layer index must be >= 1, got {q}")
    r = Fraction(1, q)
    pairs = []
    for b in points:
        b = Fraction(b)
        if punctured:
            pairs.append((b - r, b))
            pairs.append((b, b + r))
        else:
            pairs.append((b - r, b + r))
    return IntervalUnion.build(pairs)


@dataclass(frozen=True)
class OpenTheoremReport:
    """Truncated interval-fold intersection around base-point sums."""

    h: int
    Q: int
    window: tuple[Fraction, Fraction]
    components: tuple[Interval, ...]
    radius_bound: Fraction
    empty: bool
    all_centered: bool
    all_punctured: bool
    all_within_radius: bool
    primed_contains_base: bool

    @property
    def ok(self) -> bool:
        expected_shape = self.all_punctured if self.h == 1 else self.all_centered
        return expected_shape and self.all_within_radius and self.primed_contains_base


def verify_open_theorem(
    points, h: int, Q: int, value_window: tuple
) -> OpenTheoremReport:
    """Exact interval engine check of the punctured and full variants.

    For h >= 2 the depth-Q intersection of layer folds must be a union of
    intervals each containing one sum of h base points and staying within
    h/Q of it; at h = 1 the same data shows the punctured layers closing
    in on the (absent) base points.  The full-interval variant must keep
    every base sum at every h.
    """
    pts = _validate_base_points(points)
    if h < 1:
        raise InputError(f"h must be >= 1, got {h}")
    if Q < 1:
        raise InputError(f"Q must be >= 1, got {Q}")
    lo, hi = Fraction(value_window[0]), Fraction(value_window[1])
    if lo >= hi:
        raise InputError(f"empty value window ({lo}, {hi})")

    trunc: IntervalUnion | None = None
    primed: IntervalUnion | None = None
    for q in range(1, Q + 1):
        fold = minkowski_hfold(interval_layer(pts, q, punctured=True), h)
        pfold = minkowski_hfold(interval_layer(pts, q, punctured=False), h)
        trunc = fold if trunc is None else trunc.intersect(fold)
        primed = pfold if primed is None else primed.intersect(pfold)
    assert trunc is not None and primed is not None

    # the window selects components; a component straddling the edge is
    # analyzed whole so a center on the boundary still counts
    visible = tuple(
        (a, b) for a, b in trunc.intervals if b > lo and a < hi
    )

    bound = Fraction(h, Q)
    centers = _base_sums(pts, h, lo - h, hi + h)

    all_centered = bool(visible)
    all_punctured = True
    all_within = True
    for a, b in visible:
        inside = [s for s in centers if a < s < b]
        if len(inside) != 1:
            all_centered = False
        if inside:
            all_punctured = False
        if not any(s - bound <= a and b <= s + bound for s in centers):
            all_within = False

    primed_ok = all(
        primed.contains(s) for s in centers if lo <= s <= hi
    )

    return OpenTheoremReport(
        h=h,
        Q=Q,
        window=(lo, hi),
        components=visible,
        radius_bound=bound,
        empty=not visible,
        all_centered=all_centered,
        all_punctured=all_punctured,
        all_within_radius=all_within,
        primed_contains_base=primed_ok,
    )
