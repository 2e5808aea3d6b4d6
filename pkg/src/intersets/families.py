"""Decreasing set families A_1 >= A_2 >= ... with a common intersection.

Each family exposes its q-th layer, the exact intersection of all layers,
and (where one is known) a closed-form certificate for the intersection of
the layerwise h-fold sumsets.  Certificates are what lets the analyzer
decide membership questions symbolically instead of empirically; they are
data, not trust, and the test suite cross-validates each against truncated
brute force.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

from .errors import CapError, ConstructionError, InputError
from .symbolic import (
    ALL,
    Cofinite,
    Empty,
    Finite,
    IntSet,
    Window,
    affine,
    bounds,
    cofinite,
    congruence,
    contains,
    half_tail,
    intersect,
    intersect_truncated,
    is_subset,
    materialize,
    normalize,
    scale_set,
    tail,
    union,
)
from .sumsets import Closed, symbolic_hfold_sum


@dataclass(frozen=True)
class TailCertificate:
    """Closed form for the intersection over all q of the h-fold layer sums."""

    h: int
    closed_form: IntSet
    provenance: str


class Family(ABC):
    """A decreasing chain of integer sets indexed by q = 1, 2, ..."""

    kind: str = "family"
    depth: int | None = None  # None: the chain is infinite

    @abstractmethod
    def set_at(self, q: int) -> IntSet:
        """The q-th layer."""

    @abstractmethod
    def intersection(self) -> IntSet:
        """The exact intersection of all layers."""

    def certificate(self, h: int) -> TailCertificate | None:
        if h == 1:
            return TailCertificate(1, self.intersection(), "layer intersection")
        return None

    def params(self) -> dict:
        return {}

    def layer_reach(self, q: int) -> int:
        """Magnitude scale of the q-th layer's parameters.

        A radius hint for windowed enumeration: sums that land in a small
        window may need summands of this size (tail thresholds, moduli).
        """
        return q

    def _check_q(self, q: int) -> None:
        if q < 1:
            raise InputError(f"layer index must be >= 1, got {q}")
        if self.depth is not None and q > self.depth:
            raise InputError(
                f"layer index {q} exceeds the family depth {self.depth}"
            )


class TailFamily(Family):
    """Layers core | {|x| >= q}: two-sided tails that shrink away."""

    kind = "tail"

    def __init__(self, core: IntSet):
        self.core = normalize(core)

    def set_at(self, q: int) -> IntSet:
        self._check_q(q)
        return union(self.core, tail(0, q))

    def intersection(self) -> IntSet:
        return self.core

    def certificate(self, h: int) -> TailCertificate | None:
        if h == 1:
            return TailCertificate(1, self.core, "layer intersection")
        # n = (n + q) + (h-2) copies of q + (-(h-1)q) uses only q-th tail
        # elements and covers every n >= 0; mirror the signs for n < 0
        return TailCertificate(h, ALL, "integers-tail")

    def params(self) -> dict:
        return {"core": self.core}


class HalfTailFamily(Family):
    """Layers core | {x >= q}: one-sided tails."""

    kind = "half-tail"

    def __init__(self, core: IntSet):
        self.core = normalize(core)

    def set_at(self, q: int) -> IntSet:
        self._check_q(q)
        return union(self.core, half_tail(q))

    def intersection(self) -> IntSet:
        return self.core

    def certificate(self, h: int) -> TailCertificate | None:
        if h == 1:
            return TailCertificate(1, self.core, "layer intersection")
        lo, _ = bounds(self.core)
        if lo is None and not isinstance(self.core, Empty):
            return None
        # below-bounded summands give each target finitely many
        # representations, so layers deep enough add nothing
        res = symbolic_hfold_sum(self.core, h)
        if isinstance(res, Closed):
            return TailCertificate(h, res.set, "finiteness")
        return None

    def params(self) -> dict:
        return {"core": self.core}


class CongruenceChainFamily(Family):
    """Layers spread a finite core along a divisibility chain of moduli."""

    kind = "congruence-chain"

    def __init__(self, core, m1: int | None = None, ratio: int = 2, moduli=None):
        elements = tuple(sorted(set(int(a) for a in core)))
        if not elements:
            raise ConstructionError("core must be a nonempty finite set")
        self.core = elements
        self.m_star = max(abs(a) for a in elements)
        if moduli is not None:
            chain = tuple(int(m) for m in moduli)
            if not chain:
                raise ConstructionError("modulus chain must be nonempty")
            for a, b in zip(chain, chain[1:]):
                if b <= a or b % a != 0:
                    raise ConstructionError(
                        f"moduli must strictly increase along divisibility, "
                        f"got {a} then {b}"
                    )
            self.moduli = chain
            self.ratio = chain[-1] // chain[-2] if len(chain) > 1 else max(ratio, 2)
        else:
            if m1 is None:
                raise ConstructionError("either m1 or a modulus chain is required")
            if ratio < 2:
                raise ConstructionError(f"modulus ratio must be >= 2, got {ratio}")
            self.moduli = (int(m1),)
            self.ratio = ratio
        if self.moduli[0] <= 2 * self.m_star:
            raise ConstructionError(
                f"first modulus {self.moduli[0]} must exceed twice the core "
                f"radius {self.m_star}"
            )

    def modulus_at(self, q: int) -> int:
        self._check_q(q)
        if q <= len(self.moduli):
            return self.moduli[q - 1]
        return self.moduli[-1] * self.ratio ** (q - len(self.moduli))

    def set_at(self, q: int) -> IntSet:
        m = self.modulus_at(q)
        return congruence(m, {a % m for a in self.core})

    def intersection(self) -> IntSet:
        return normalize(Finite(self.core))

    def certificate(self, h: int) -> TailCertificate | None:
        # deep enough layers have m_q > 2h*m_star, where the core sums are
        # pairwise incongruent; only they survive the full intersection
        res = symbolic_hfold_sum(normalize(Finite(self.core)), h)
        assert isinstance(res, Closed)
        return TailCertificate(h, res.set, "congruence-chain")

    def pinning_depth(self, h: int, wmax: int) -> int:
        """Least q whose modulus pins every |x| <= wmax to a core sum."""
        q = 1
        while self.modulus_at(q) <= wmax + h * self.m_star:
            q += 1
        return q

    def layer_reach(self, q: int) -> int:
        return self.modulus_at(q)

    def params(self) -> dict:
        return {"core": list(self.core), "moduli": list(self.moduli), "ratio": self.ratio}


class CosetTailFamily(Family):
    """A subgroup dZ plus a receding tail {x + d*r : r >= q} of one coset."""

    kind = "coset-tail"

    def __init__(self, subgroup_step: int, coset_base: int):
        if subgroup_step < 2:
            raise ConstructionError(
                f"subgroup step must be >= 2, got {subgroup_step}"
            )
        if coset_base % subgroup_step == 0:
            raise ConstructionError(
                f"{coset_base} lies in {subgroup_step}Z; the tail must come "
                f"from a proper coset"
            )
        self.d = subgroup_step
        self.x = coset_base

    def set_at(self, q: int) -> IntSet:
        self._check_q(q)
        return union(
            congruence(self.d, (0,)),
            intersect(
                congruence(self.d, (self.x % self.d,)),
                half_tail(self.x + self.d * q),
            ),
        )

    def intersection(self) -> IntSet:
        return congruence(self.d, (0,))

    def certificate(self, h: int) -> TailCertificate | None:
        # sums using j coset elements fill the full class j*x + dZ for
        # j < h (the subgroup part is unbounded below, erasing the tail
        # threshold); the all-coset term j = h recedes with q
        residues = {(j * self.x) % self.d for j in range(h)}
        return TailCertificate(h, congruence(self.d, residues), "subgroup")

    def layer_reach(self, q: int) -> int:
        return abs(self.x) + self.d * q

    def params(self) -> dict:
        return {"subgroup_step": self.d, "coset_base": self.x}


class EnumerationFamily(Family):
    """Layer q restores the complement points enumerated from index q on.

    The complement of the core is listed by increasing |a|, negatives
    before positives on ties; layer q is Z minus the first q-1 entries,
    which equals core | {a_r : r >= q}.
    """

    kind = "enumeration"
    _SEARCH_CAP = 1 << 20

    def __init__(self, core):
        if isinstance(core, IntSet):
            self.core = normalize(core)
        else:
            self.core = normalize(Finite(tuple(sorted(set(map(int, core))))))
        if self.core == ALL:
            raise ConstructionError("core must have a nonempty complement")

    def _complement_prefix(self, n: int) -> list[int]:
        out: list[int] = []
        if isinstance(self.core, Cofinite):
            pool = sorted(self.core.excluded, key=lambda v: (abs(v), v >= 0))
            return pool[:n]
        x = 0
        while len(out) < n:
            for cand in ((0,) if x == 0 else (-x, x)):
                if not contains(self.core, cand):
                    out.append(cand)
                    if len(out) == n:
                        break
            x += 1
            if x > self._SEARCH_CAP:
                raise CapError(
                    f"complement enumeration exceeded |a| <= {self._SEARCH_CAP}"
                )
        return out

    def set_at(self, q: int) -> IntSet:
        self._check_q(q)
        return cofinite(self._complement_prefix(q - 1))

    def intersection(self) -> IntSet:
        return self.core

    def certificate(self, h: int) -> TailCertificate | None:
        if h == 1:
            return TailCertificate(1, self.core, "layer intersection")
        # every layer is cofinite, and two cofinite sets sum to all of Z
        return TailCertificate(h, ALL, "cofinite-basis")

    def params(self) -> dict:
        return {"core": self.core}


class AffineFamily(Family):
    """unit * F + shift, layer by layer."""

    kind = "affine"

    def __init__(self, unit: int, shift: int, inner: Family):
        if unit not in (1, -1):
            raise ConstructionError(f"unit must be +1 or -1, got {unit}")
        self.unit = unit
        self.shift = shift
        self.inner = inner
        self.depth = inner.depth

    def set_at(self, q: int) -> IntSet:
        return affine(self.unit, self.shift, self.inner.set_at(q))

    def intersection(self) -> IntSet:
        return affine(self.unit, self.shift, self.inner.intersection())

    def certificate(self, h: int) -> TailCertificate | None:
        base = self.inner.certificate(h)
        if base is None:
            return None
        # h-fold sums commute with x -> unit*x + shift up to h*shift
        return TailCertificate(
            h,
            affine(self.unit, h * self.shift, base.closed_form),
            f"affine({base.provenance})",
        )

    def layer_reach(self, q: int) -> int:
        return self.inner.layer_reach(q) + abs(self.shift)

    def params(self) -> dict:
        return {"unit": self.unit, "shift": self.shift, "inner": self.inner}


class ScaledFamily(Family):
    """k * F for |k| >= 2.

    No certificate is attached: dilation by a non-unit is outside the
    affine transport rule, and whether layerwise sum intersections carry
    across it is left to side-by-side empirical comparison.
    """

    kind = "scaled"

    def __init__(self, inner: Family, factor: int):
        if factor in (0, 1, -1):
            raise ConstructionError(
                f"scale factor must have magnitude >= 2, got {factor}"
            )
        self.inner = inner
        self.factor = factor
        self.depth = inner.depth

    def set_at(self, q: int) -> IntSet:
        return scale_set(self.inner.set_at(q), self.factor)

    def intersection(self) -> IntSet:
        return scale_set(self.inner.intersection(), self.factor)

    def layer_reach(self, q: int) -> int:
        return abs(self.factor) * self.inner.layer_reach(q)

    def params(self) -> dict:
        return {"inner": self.inner, "factor": self.factor}


class ExplicitFamily(Family):
    """A hand-given finite chain A_1, ..., A_Q (the index set is finite)."""

    kind = "explicit"

    def __init__(self, sets):
        layers = tuple(normalize(s) for s in sets)
        if not layers:
            raise ConstructionError("at least one layer is required")
        self.sets = layers
        self.depth = len(layers)

    def set_at(self, q: int) -> IntSet:
        self._check_q(q)
        return self.sets[q - 1]

    def intersection(self) -> IntSet:
        return intersect_truncated(self.sets)

    def certificate(self, h: int) -> TailCertificate | None:
        folds = []
        for s in self.sets:
            res = symbolic_hfold_sum(s, h)
            if not isinstance(res, Closed):
                return None
            folds.append(res.set)
        return TailCertificate(h, intersect(*folds), "explicit")

    def params(self) -> dict:
        return {"sets": list(self.sets)}


class ProductFamily:
    """Componentwise pairing of two families over Z x Z."""

    kind = "product"

    def __init__(self, left: Family, right: Family):
        self.left = left
        self.right = right
        depths = [f.depth for f in (left, right) if f.depth is not None]
        self.depth = min(depths) if depths else None

    def set_at(self, q: int) -> tuple[IntSet, IntSet]:
        return (self.left.set_at(q), self.right.set_at(q))

    def intersection(self) -> tuple[IntSet, IntSet]:
        return (self.left.intersection(), self.right.intersection())

    def params(self) -> dict:
        return {"left": self.left, "right": self.right}


# ---------------------------------------------------------------------------
# chain diagnostics


@dataclass(frozen=True)
class ChainCheck:
    q: int
    contained: bool
    certified: bool
    strict_witness: int | None


@dataclass(frozen=True)
class ChainReport:
    checks: tuple[ChainCheck, ...]
    decreasing: bool
    strictly_decreasing: bool
    asymptotically_strict: bool  # within the tested range: no trailing constant run

    @property
    def witnesses(self) -> tuple[int | None, ...]:
        return tuple(c.strict_witness for c in self.checks)


def classify_monotonicity(
    family: Family, depth: int = 8, window: Window | None = None
) -> ChainReport:
    """Verify each A_{q+1} <= A_q and hunt for strictness witnesses.

    Containment is certified by the symbolic subset test where it applies
    and otherwise checked on windows.  Witness search widens its window a
    few times before giving up, so a None witness is evidence of layer
    equality, not proof.
    """
    if family.depth is not None:
        depth = min(depth, family.depth - 1)
    if window is not None:
        windows = (window,)
    else:
        windows = tuple(Window(-r, r) for r in (16, 64, 256, 1024))
    checks = []
    for q in range(1, depth + 1):
        cur, nxt = family.set_at(q), family.set_at(q + 1)
        certified = is_subset(nxt, cur)
        checked = True
        witness = None
        for w in windows:
            cur_m = set(materialize(cur, w))
            nxt_m = set(materialize(nxt, w))
            if not nxt_m <= cur_m:
                checked = False
                break
            gone = cur_m - nxt_m
            if gone:
                witness = min(gone, key=lambda v: (abs(v), v >= 0))
                break
        checks.append(ChainCheck(q, certified or checked, certified, witness))
    decreasing = all(c.contained for c in checks)
    strict = decreasing and all(c.strict_witness is not None for c in checks)
    run = 0
    for c in reversed(checks):
        if c.strict_witness is not None:
            break
        run += 1
    return ChainReport(tuple(checks), decreasing, strict, decreasing and run == 0)


# ---------------------------------------------------------------------------
# construction from tagged parameters


_BUILDERS = {
    "tail": lambda p: TailFamily(p["core"]),
    "half-tail": lambda p: HalfTailFamily(p["core"]),
    "congruence-chain": lambda p: CongruenceChainFamily(
        p["core"],
        m1=p.get("m1"),
        ratio=p.get("ratio", 2),
        moduli=p.get("moduli"),
    ),
    "coset-tail": lambda p: CosetTailFamily(p["subgroup_step"], p["coset_base"]),
    "enumeration": lambda p: EnumerationFamily(p["core"]),
    "affine": lambda p: AffineFamily(p["unit"], p["shift"], p["inner"]),
    "scaled": lambda p: ScaledFamily(p["inner"], p["factor"]),
    "explicit": lambda p: ExplicitFamily(p["sets"]),
}


def build(kind: str, params: dict) -> Family:
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise ConstructionError(
            f"unknown family kind {kind!r}; expected one of {sorted(_BUILDERS)}"
        ) from None
    try:
        return builder(params)
    except KeyError as missing:
        raise ConstructionError(
            f"family kind {kind!r} is missing parameter {missing}"
        ) from None
