"""Brute-force references the tests compare library output against.

Everything here is deliberately naive: plain Python set arithmetic over
materialized elements, no bitsets, no closed forms.
"""

from itertools import product

from intersets import Window, materialize


def fold_values(values, h: int) -> set[int]:
    """All sums of h elements drawn from values with repetition."""
    vals = set(values)
    if not vals:
        return set()
    acc = set(vals)
    for _ in range(h - 1):
        acc = {a + b for a in acc for b in vals}
    return acc


def windowed_fold(s, h: int, window: Window, radius: int) -> set[int]:
    """Window slice of the h-fold sums of the set materialized to radius."""
    values = materialize(s, Window(-radius, radius))
    return {x for x in fold_values(values, h) if window.lo <= x <= window.hi}


def rep_count(values, h: int, x: int) -> int:
    """Ordered h-tuple representations of x, by exhaustion."""
    return sum(1 for combo in product(sorted(set(values)), repeat=h) if sum(combo) == x)


def lattice_fold(points, h: int) -> set[tuple[int, ...]]:
    pts = {tuple(p) for p in points}
    acc = set(pts)
    for _ in range(h - 1):
        acc = {tuple(a + b for a, b in zip(p, q)) for p in acc for q in pts}
    return acc


def spiral(window: Window) -> list[int]:
    return sorted(range(window.lo, window.hi + 1), key=lambda x: (abs(x), x >= 0))
