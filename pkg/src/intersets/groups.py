"""Finite abelian groups as explicit operation tables.

Elements are indices 0..n-1; subsets are frozensets of indices.  Layered
subset chains here are finite lists read as eventually constant, so their
h-fold intersections are computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import ConstructionError, DomainError

_FULL_CHECK_CAP = 64


@dataclass(frozen=True)
class FiniteGroupTable:
    table: tuple[tuple[int, ...], ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.table)

    def add(self, a: int, b: int) -> int:
        return self.table[a][b]

    @staticmethod
    def cyclic(n: int) -> "FiniteGroupTable":
        if n < 1:
            raise ConstructionError(f"order must be >= 1, got {n}")
        rows = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        return FiniteGroupTable(rows, 0)

    @staticmethod
    def direct_product(
        g1: "FiniteGroupTable", g2: "FiniteGroupTable"
    ) -> "FiniteGroupTable":
        n1, n2 = g1.order, g2.order
        rows = tuple(
            tuple(
                g1.add(i1, j1) * n2 + g2.add(i2, j2)
                for j1 in range(n1)
                for j2 in range(n2)
            )
            for i1 in range(n1)
            for i2 in range(n2)
        )
        return FiniteGroupTable(rows, g1.identity * n2 + g2.identity)

    @staticmethod
    def from_rows(rows, identity: int = 0) -> "FiniteGroupTable":
        table = tuple(tuple(r) for r in rows)
        g = FiniteGroupTable(table, identity)
        g.validate()
        return g

    def validate(self) -> None:
        n = self.order
        rng = range(n)
        for i in rng:
            if len(self.table[i]) != n:
                raise ConstructionError("operation table must be square")
            if self.add(self.identity, i) != i or self.add(i, self.identity) != i:
                raise ConstructionError(f"{self.identity} is not an identity")
        for i in rng:
            if set(self.table[i]) != set(rng):
                raise ConstructionError(f"row {i} is not a permutation")
            if any(self.add(i, j) != self.add(j, i) for j in rng):
                raise ConstructionError("table is not commutative")
        if n <= _FULL_CHECK_CAP:
            for i in rng:
                for j in rng:
                    for k in rng:
                        if self.add(self.add(i, j), k) != self.add(i, self.add(j, k)):
                            raise ConstructionError(
                                f"associativity fails at ({i}, {j}, {k})"
                            )


def group_hfold(g: FiniteGroupTable, subset, h: int) -> frozenset[int]:
    """All sums of h elements of the subset."""
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    base = frozenset(subset)
    if any(not 0 <= a < g.order for a in base):
        raise DomainError("subset indices must lie inside the group")
    acc = base
    for _ in range(h - 1):
        acc = frozenset(g.add(a, b) for a in acc for b in base)
    return acc


@dataclass(frozen=True)
class GroupHVerdict:
    h: int
    in_H: bool
    fold: frozenset[int]
    layer_fold: frozenset[int]


def group_H_explicit(
    g: FiniteGroupTable, layers, h_max: int
) -> tuple[GroupHVerdict, ...]:
    """H for a finite decreasing chain of subsets, read eventually constant.

    Exact: the chain has finitely many distinct layers, so every
    intersection is a finite intersection.
    """
    chain = [frozenset(layer) for layer in layers]
    if not chain:
        raise ConstructionError("at least one layer is required")
    for a, b in zip(chain, chain[1:]):
        if not b <= a:
            raise ConstructionError("layers must be decreasing")
    core = reduce(frozenset.__and__, chain)
    if not core:
        raise ConstructionError("the chain intersection must be nonempty")
    out = []
    for h in range(1, h_max + 1):
        fold = group_hfold(g, core, h)
        layer_fold = reduce(
            frozenset.__and__, (group_hfold(g, layer, h) for layer in chain)
        )
        out.append(GroupHVerdict(h, fold == layer_fold, fold, layer_fold))
    return tuple(out)


def covering_orders(g: FiniteGroupTable, subset, h_max: int) -> list[int]:
    """All h up to h_max whose h-fold sums exhaust the group."""
    full = frozenset(range(g.order))
    return [h for h in range(1, h_max + 1) if group_hfold(g, subset, h) == full]
