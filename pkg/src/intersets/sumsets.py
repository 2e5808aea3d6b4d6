"""h-fold sumsets, product sets, and representation counts.

Closed forms are produced by an exact rewrite system over the symbolic
shapes; when no rule applies the computation falls back to windowed
enumeration over offset bit arrays, which is exact within the window and
carries an explicit completeness flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapError, DomainError, NoClosedForm
from .symbolic import (
    ALL,
    EMPTY,
    Affine,
    Cofinite,
    Congruence,
    Empty,
    Finite,
    HalfTail,
    IntSet,
    Intersection,
    Membership3,
    Tail,
    Union,
    Window,
    IN,
    OUT,
    as_down_tail,
    bounds,
    congruence,
    contains,
    down_tail,
    half_tail,
    is_infinite,
    materialize,
    min_element,
    max_element,
    normalize,
    out_up_to,
    shift,
    union,
)

_FINITE_FOLD_CAP = 24
_REP_RANGE_CAP = 400_000


@dataclass(frozen=True)
class Closed:
    """Sumset with an exact symbolic closed form."""

    set: IntSet

    @property
    def is_closed(self) -> bool:
        return True


@dataclass(frozen=True)
class Windowed:
    """Sumset enumerated within a window.

    `members` lists exactly the sums of h elements drawn from the set's
    materialization on [-generation_radius, generation_radius] that land in
    the window.  `complete` is True only when a bound argument shows no
    window member of the true sumset can be missing.
    """

    window: Window
    members: tuple[int, ...]
    generation_radius: int
    complete: bool

    @property
    def is_closed(self) -> bool:
        return False


SumsetResult = Closed | Windowed


def query(result: SumsetResult, x: int) -> Membership3:
    """Three-valued membership in a sumset result."""
    if isinstance(result, Closed):
        return IN if contains(result.set, x) else OUT
    if not result.window.lo <= x <= result.window.hi:
        raise DomainError(f"{x} lies outside the evaluated window")
    if x in result.members:
        return IN
    return OUT if result.complete else out_up_to(result.generation_radius)


def members_in(result: SumsetResult, window: Window) -> set[int]:
    if isinstance(result, Closed):
        return set(materialize(result.set, window))
    if result.window.lo > window.lo or result.window.hi < window.hi:
        raise DomainError("requested window exceeds the evaluated window")
    return {x for x in result.members if window.lo <= x <= window.hi}


# ---------------------------------------------------------------------------
# symbolic rules


def sum2(x: IntSet, y: IntSet) -> IntSet | None:
    """Exact Minkowski sum of two normalized sets, or None if no rule fires."""
    if isinstance(x, Empty) or isinstance(y, Empty):
        return EMPTY
    for a, b in ((x, y), (y, x)):
        if isinstance(a, Finite) and len(a.elements) <= _FINITE_FOLD_CAP:
            if isinstance(b, Finite):
                return normalize(
                    Finite(tuple({e + f for e in a.elements for f in b.elements}))
                )
            return union(*(shift(b, e) for e in a.elements))
    for a, b in ((x, y), (y, x)):
        # a cofinite class absorbs any infinite partner
        if isinstance(a, (Cofinite, Tail)) and is_infinite(b) is True:
            return ALL
    for a, b in ((x, y), (y, x)):
        if isinstance(a, HalfTail) or as_down_tail(a) is not None:
            res = _sum_ray(a, b)
            if res is not None:
                return res
    if isinstance(x, Congruence) and isinstance(y, Congruence):
        # m1*Z + m2*Z = gcd(m1, m2)*Z
        g = math.gcd(x.modulus, y.modulus)
        sums = {(r1 + r2) % g for r1 in x.residues for r2 in y.residues}
        return congruence(g, sums)
    for a, b in ((x, y), (y, x)):
        if isinstance(a, Union) and len(a.parts) <= _FINITE_FOLD_CAP:
            terms = []
            for p in a.parts:
                t = sum2(p, b)
                if t is None:
                    break
                terms.append(t)
            else:
                return union(*terms)
    return None


def _sum_ray(ray: IntSet, b: IntSet) -> IntSet | None:
    """A half-line plus an arbitrary set."""
    if isinstance(ray, HalfTail):
        if isinstance(b, (Cofinite, Tail, Congruence)) or as_down_tail(b) is not None:
            return ALL  # partner unbounded below
        if isinstance(b, HalfTail):
            return half_tail(ray.threshold + b.threshold)
        m = min_element(b)
        if m is not None:
            # every sum is >= t + min(b), and every such value occurs
            return half_tail(ray.threshold + m)
        return None
    bd = as_down_tail(ray)
    if bd is None:
        return None
    if isinstance(b, (Cofinite, Tail, Congruence, HalfTail)):
        return ALL  # partner unbounded above
    if (bd2 := as_down_tail(b)) is not None:
        return down_tail(bd + bd2)
    m = max_element(b)
    if m is not None:
        return down_tail(bd + m)
    return None


def symbolic_hfold_sum(
    s: IntSet,
    h: int,
    window: Window | None = None,
    gen_radius: int | None = None,
) -> SumsetResult:
    """h-fold sumset; closed form when the rewrite rules compose, otherwise a
    windowed enumeration (requires a window)."""
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    s = normalize(s)
    if h == 1:
        return Closed(s)
    acc: IntSet | None = s
    for _ in range(h - 1):
        acc = sum2(acc, s)
        if acc is None:
            break
    if acc is not None:
        return Closed(acc)
    if window is None:
        raise NoClosedForm(
            "no closed-form rule applies; supply a window for enumeration"
        )
    return windowed_hfold_sum(s, h, window, gen_radius or default_radius(window, h))


def default_radius(window: Window, h: int, q: int = 0) -> int:
    return window.radius + (h - 1) * (q + window.radius) + 16


# ---------------------------------------------------------------------------
# windowed enumeration over offset bit arrays


def _conv(bits_a: int, bits_b: int) -> int:
    if bits_a.bit_count() > bits_b.bit_count():
        bits_a, bits_b = bits_b, bits_a
    out = 0
    x = bits_a
    while x:
        low = x & -x
        out |= bits_b << (low.bit_length() - 1)
        x ^= low
    return out


def windowed_hfold_sum(
    s: IntSet, h: int, window: Window, gen_radius: int
) -> Windowed:
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    if gen_radius < window.radius:
        raise DomainError(
            f"generation radius {gen_radius} is below the window radius "
            f"{window.radius}"
        )
    s = normalize(s)
    r = gen_radius
    values = materialize(s, Window(-r, r))
    if not values:
        return Windowed(window, (), r, isinstance(s, Empty))
    bits = 0
    for v in values:
        bits |= 1 << (v + r)
    acc_bits, acc_off = None, 0
    base_bits, base_off = bits, r
    e = h
    while True:
        if e & 1:
            if acc_bits is None:
                acc_bits, acc_off = base_bits, base_off
            else:
                acc_bits = _conv(acc_bits, base_bits)
                acc_off += base_off
        e >>= 1
        if not e:
            break
        base_bits = _conv(base_bits, base_bits)
        base_off *= 2
    members = tuple(
        x
        for x in range(window.lo, window.hi + 1)
        if 0 <= x + acc_off and (acc_bits >> (x + acc_off)) & 1
    )
    return Windowed(window, members, r, _complete(s, h, window, r))


def _complete(s: IntSet, h: int, window: Window, r: int) -> bool:
    lo, hi = bounds(s)
    if lo is not None and hi is not None and -r <= lo and hi <= r:
        return True  # whole set materialized
    # with a one-sided bound, every summand of an in-window sum is pinned
    if lo is not None and -r <= lo and window.hi - (h - 1) * lo <= r:
        return True
    if hi is not None and hi <= r and (h - 1) * hi - window.lo <= r:
        return True
    return False


# ---------------------------------------------------------------------------
# representation counts


@dataclass(frozen=True)
class RepCount:
    """Number of ordered h-tuples representing x.

    count is None for a proved-infinite answer; exact=False marks a bounded
    search that only established a lower bound.
    """

    count: int | None
    exact: bool = True

    @property
    def is_infinite(self) -> bool:
        return self.count is None


def representation_count(
    s: IntSet,
    h: int,
    x: int,
    mode: str = "add",
    gen_radius: int = 256,
) -> RepCount:
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    if mode not in ("add", "mult"):
        raise DomainError(f"mode must be 'add' or 'mult', got {mode!r}")
    s = normalize(s)
    if h == 1:
        return RepCount(1 if contains(s, x) else 0)
    if mode == "mult":
        return _rep_mult(s, h, x)
    return _rep_add(s, h, x, gen_radius)


def _signed_divisors(v: int) -> tuple[int, ...]:
    n = abs(v)
    ds = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            ds.extend((i, -i))
            if i != n // i:
                ds.extend((n // i, -(n // i)))
        i += 1
    return tuple(ds)


def _rep_mult(s: IntSet, h: int, x: int) -> RepCount:
    if contains(s, 0):
        raise DomainError("multiplicative counts require a set avoiding 0")
    if x == 0:
        raise DomainError("multiplicative counts are defined for nonzero targets")

    @lru_cache(maxsize=None)
    def count(k: int, v: int) -> int:
        if k == 1:
            return 1 if contains(s, v) else 0
        return sum(
            count(k - 1, v // d) for d in _signed_divisors(v) if contains(s, d)
        )

    return RepCount(count(h, x))


def _rep_add(s: IntSet, h: int, x: int, gen_radius: int) -> RepCount:
    if isinstance(s, Empty):
        return RepCount(0)
    if _rep_infinite(s, h, x):
        return RepCount(None)
    lo, hi = bounds(s)
    if lo is not None:
        top = x - (h - 1) * lo
        if top < lo:
            return RepCount(0)
        if top - lo + 1 > _REP_RANGE_CAP:
            raise CapError("representation range exceeds the enumeration cap")
        vals = materialize(s, Window(lo, top))
        return RepCount(_rep_dp(vals, h, x, lo_bound=lo))
    if hi is not None:
        return _rep_add(normalize(Affine(-1, 0, s)), h, -x, gen_radius)
    vals = materialize(s, Window(-gen_radius, gen_radius))
    return RepCount(_rep_dp(vals, h, x), exact=False)


def _rep_dp(vals: list[int], h: int, x: int, lo_bound: int | None = None) -> int:
    ways: dict[int, int] = {0: 1}
    for step in range(h):
        rem = h - step - 1
        nxt: dict[int, int] = {}
        for partial, c in ways.items():
            for v in vals:
                t = partial + v
                if lo_bound is not None and t + rem * lo_bound > x:
                    break  # vals sorted ascending
                nxt[t] = nxt.get(t, 0) + c
        ways = nxt
    return ways.get(x, 0)


def _rep_infinite(s: IntSet, h: int, x: int) -> bool:
    """Exhibit infinitely many ordered h-tuples via y + (x' - y) + pads."""
    if h == 2:
        pads = [0]  # the pad term vanishes for h = 2
    elif contains(s, 0):
        pads = [0]
    else:
        pads = materialize(s, Window(-8, 8))[:3]
        if not pads:
            m = min_element(s)
            pads = [m] if m is not None else []
    for a in pads:
        target = x - (h - 2) * a
        mirrored = normalize(Affine(-1, target, s))
        pair_set = normalize(Intersection((s, mirrored)))
        if is_infinite(pair_set) is True:
            return True
    return False


# ---------------------------------------------------------------------------
# h-fold product sets


def hfold_product(s: IntSet, h: int, window: Window) -> Windowed:
    """Exact h-fold product set within the window (ordered factorizations)."""
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    s = normalize(s)
    if contains(s, 0):
        raise DomainError("product sets require a set avoiding 0")

    memo: dict[tuple[int, int], bool] = {}

    def exists(k: int, v: int) -> bool:
        if k == 1:
            return contains(s, v)
        key = (k, v)
        if key in memo:
            return memo[key]
        out = any(
            contains(s, d) and exists(k - 1, v // d)
            for d in _signed_divisors(v)
        )
        memo[key] = out
        return out

    members = tuple(
        x for x in range(window.lo, window.hi + 1) if x != 0 and exists(h, x)
    )
    return Windowed(window, members, window.radius, True)


# ---------------------------------------------------------------------------
# basis order


@dataclass(frozen=True)
class BasisVerdict:
    h: int
    covers: bool
    certified: bool
    witness: int | None
    evidence: str


@dataclass(frozen=True)
class BasisReport:
    verdicts: tuple[BasisVerdict, ...]
    exact_order: int | None
    exact_order_certified: bool
    window: Window

    def verdict(self, h: int) -> BasisVerdict:
        return self.verdicts[h - 1]


def basis_order(
    s: IntSet, h_max: int, window: Window, gen_radius: int | None = None
) -> BasisReport:
    """Per-h window coverage of the h-fold sumset, certified where sound.

    Coverage only needs membership, which the enumeration establishes even
    when incomplete; non-coverage needs a closed form or a complete window.
    """
    s = normalize(s)
    verdicts: list[BasisVerdict] = []
    for h in range(1, h_max + 1):
        r = gen_radius or default_radius(window, h)
        res = symbolic_hfold_sum(s, h, window, r)
        if isinstance(res, Closed):
            missing = _first_missing(res.set, window)
            if missing is None:
                verdicts.append(BasisVerdict(h, True, True, None, "closed form"))
            else:
                verdicts.append(BasisVerdict(h, False, True, missing, "closed form"))
            continue
        present = set(res.members)
        missing = next((x for x in _spiral(window) if x not in present), None)
        if missing is None:
            verdicts.append(BasisVerdict(h, True, True, None, f"all present (R={r})"))
        elif res.complete:
            verdicts.append(BasisVerdict(h, False, True, missing, f"complete (R={r})"))
        else:
            verdicts.append(
                BasisVerdict(h, False, False, missing, f"absent up to R={r}")
            )
    order: int | None = None
    certified = False
    for v in verdicts:
        if v.covers:
            order = v.h
            certified = v.certified and all(u.certified for u in verdicts[: v.h - 1])
            break
    return BasisReport(tuple(verdicts), order, certified, window)


def _first_missing(s: IntSet, window: Window) -> int | None:
    for x in _spiral(window):
        if not contains(s, x):
            return x
    return None


def _spiral(window: Window) -> list[int]:
    """Window points ordered by absolute value, negatives first on ties."""
    return sorted(range(window.lo, window.hi + 1), key=lambda x: (abs(x), x >= 0))
