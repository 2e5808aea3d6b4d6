"""Per-h verdicts on whether h-fold sums of a family's intersection match
the intersection of its layers' h-fold sums.

For a decreasing chain A_1 >= A_2 >= ... with intersection A, every sum of
h elements of A is a sum of h elements of each A_q, so hA is contained in
the layer-fold intersection for free.  The open direction is whether the
intersection has extra elements, and the decision procedure reflects that
asymmetry: with a closed form C for the full layer-fold intersection
(a certificate), h is in H exactly when C is contained in hA, and any
element of C missing from hA is a one-point disproof.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .families import ExplicitFamily, Family, ProductFamily, ScaledFamily
from .groups import FiniteGroupTable, group_H_explicit, group_hfold
from .symbolic import (
    Empty,
    IntSet,
    Window,
    congruence,
    contains,
    is_subset,
    materialize,
    max_element,
    min_element,
    normalize,
)
from .sumsets import (
    Closed,
    SumsetResult,
    default_radius,
    members_in,
    symbolic_hfold_sum,
)

CERTIFIED_IN = "CertifiedIn"
CERTIFIED_OUT = "CertifiedOut"
EMPIRICAL_EQUAL = "EmpiricalEqual"
UNDETERMINED = "Undetermined"

_IN_STATUSES = frozenset({CERTIFIED_IN, EMPIRICAL_EQUAL})
_STRENGTH = {CERTIFIED_IN: 0, EMPIRICAL_EQUAL: 1, UNDETERMINED: 2}


@dataclass(frozen=True)
class HConfig:
    """Truncation depth, reporting window, and enumeration radius.

    gen_radius None picks a per-layer radius from the window, h, and the
    family's layer_reach; an explicit value is used as given (scaled along
    with the window on the deep confirmation pass).
    """

    Q: int = 8
    window: Window = Window(-24, 24)
    gen_radius: int | None = None
    deep_scale: int = 2


@dataclass(frozen=True)
class HVerdict:
    h: int
    status: str
    witness: object | None  # int, or a component pair for product families
    evidence: str
    Q: int
    window: Window
    # a certified member of the layer-fold intersection, when one is known;
    # products embed component witnesses next to these
    sample: object | None = None
    # True/False only when certified by a closed form; None means unknown
    intersection_empty: bool | None = None

    @property
    def in_H(self) -> bool:
        return self.status in _IN_STATUSES


@dataclass(frozen=True)
class HReport:
    kind: str
    config: HConfig
    verdicts: tuple[HVerdict, ...]

    @property
    def h_max(self) -> int:
        return len(self.verdicts)

    def verdict(self, h: int) -> HVerdict:
        if not 1 <= h <= len(self.verdicts):
            raise InputError(f"no verdict for h={h}")
        return self.verdicts[h - 1]

    @property
    def statuses(self) -> tuple[str, ...]:
        return tuple(v.status for v in self.verdicts)

    @property
    def in_H(self) -> tuple[int, ...]:
        return tuple(v.h for v in self.verdicts if v.in_H)

    @property
    def all_certified(self) -> bool:
        return all(
            v.status in (CERTIFIED_IN, CERTIFIED_OUT) for v in self.verdicts
        )


# ---------------------------------------------------------------------------
# ordering and sampling helpers


def _spiral_key(x: int) -> tuple[int, bool]:
    return (abs(x), x >= 0)


def _sample_member(s: IntSet, window: Window) -> int | None:
    """Smallest-|x| member (negatives first), scanning growing windows."""
    s = normalize(s)
    if isinstance(s, Empty):
        return None
    r = max(window.radius, 64)
    for _ in range(4):
        vals = materialize(s, Window(-r, r))
        if vals:
            return min(vals, key=_spiral_key)
        r *= 4
    lo = min_element(s)
    if lo is not None:
        return lo
    return max_element(s)


def _closed_witness(cert_set: IntSet, fold_set: IntSet, window: Window) -> int | None:
    r = max(window.radius, 32)
    for _ in range(3):
        for a in range(r + 1):
            for x in ((0,) if a == 0 else (-a, a)):
                if contains(cert_set, x) and not contains(fold_set, x):
                    return x
        r *= 4
    return None


# ---------------------------------------------------------------------------
# single-family verdicts


def compute_H(
    family: Family | ProductFamily, h_max: int, config: HConfig | None = None
) -> HReport:
    """Statuses for h = 1..h_max, certified where a closed form allows."""
    if h_max < 1:
        raise InputError(f"h_max must be >= 1, got {h_max}")
    if isinstance(family, ProductFamily):
        return compute_H_product(family, h_max, config)
    cfg = config or HConfig()
    verdicts = tuple(_verdict_h(family, h, cfg) for h in range(1, h_max + 1))
    return HReport(kind=family.kind, config=cfg, verdicts=verdicts)


def _verdict_h(family: Family, h: int, cfg: HConfig) -> HVerdict:
    core = normalize(family.intersection())
    cert = family.certificate(h)
    cset: IntSet | None = None
    sample: int | None = None
    empty: bool | None = None
    if cert is not None:
        cset = normalize(cert.closed_form)
        if isinstance(cset, Empty):
            empty = True
        else:
            sample = _sample_member(cset, cfg.window)
            if sample is not None:
                empty = False

    if h == 1:
        return HVerdict(
            1,
            CERTIFIED_IN,
            None,
            "1-fold sums are the sets themselves; the chain intersection "
            "matches by construction",
            cfg.Q,
            cfg.window,
            sample if sample is not None else _sample_member(core, cfg.window),
            isinstance(core, Empty) if empty is None else empty,
        )

    radius = cfg.gen_radius
    if radius is not None:
        radius = max(radius, cfg.window.radius)
    lhs = symbolic_hfold_sum(core, h, cfg.window, radius)
    if cert is not None and cset is not None:
        return _with_certificate(lhs, cset, cert.provenance, h, cfg, sample, empty)
    return _empirical(family, h, cfg, sample, empty)


def _with_certificate(
    lhs: SumsetResult,
    cset: IntSet,
    provenance: str,
    h: int,
    cfg: HConfig,
    sample: int | None,
    empty: bool | None,
) -> HVerdict:
    tag = f"[{provenance}]"
    if isinstance(lhs, Closed):
        fold = lhs.set
        if fold == cset or is_subset(cset, fold):
            return HVerdict(
                h,
                CERTIFIED_IN,
                None,
                f"closed {h}-fold sumset absorbs the intersection "
                f"certificate {tag}",
                cfg.Q,
                cfg.window,
                sample,
                empty,
            )
        w = _closed_witness(cset, fold, cfg.window)
        if w is not None:
            return HVerdict(
                h,
                CERTIFIED_OUT,
                w,
                f"{w} lies in the intersection certificate {tag} but not in "
                f"the closed {h}-fold sumset",
                cfg.Q,
                cfg.window,
                sample,
                empty,
            )
        return HVerdict(
            h,
            UNDETERMINED,
            None,
            f"certificate {tag} is not provably inside the closed sumset and "
            f"no witness was found in the search range",
            cfg.Q,
            cfg.window,
            sample,
            empty,
        )

    members = set(lhs.members)
    cmem = set(materialize(cset, lhs.window))
    stray = members - cmem
    if stray:
        raise RuntimeError(
            f"sumset members escape the intersection certificate {tag}: "
            f"{sorted(stray)[:5]}"
        )
    extra = sorted(cmem - members, key=_spiral_key)
    win = lhs.window
    if extra:
        x = extra[0]
        if lhs.complete:
            return HVerdict(
                h,
                CERTIFIED_OUT,
                x,
                f"{x} lies in the intersection certificate {tag}; the "
                f"{h}-fold enumeration on [{win.lo},{win.hi}] is complete "
                f"(generation radius {lhs.generation_radius}) and omits it",
                cfg.Q,
                cfg.window,
                sample,
                empty,
            )
        return HVerdict(
            h,
            UNDETERMINED,
            x,
            f"candidate witness {x} from the certificate {tag} is absent up "
            f"to generation radius {lhs.generation_radius}, but the "
            f"enumeration is not complete",
            cfg.Q,
            cfg.window,
            sample,
            empty,
        )
    return HVerdict(
        h,
        EMPIRICAL_EQUAL,
        None,
        f"windowed {h}-fold sums match the certificate {tag} on "
        f"[{win.lo},{win.hi}]",
        cfg.Q,
        cfg.window,
        sample,
        empty,
    )


def truncated_layer_fold(
    family: Family,
    h: int,
    window: Window,
    Q: int,
    gen_radius: int | None = None,
) -> set[int]:
    """Window members of the depth-Q intersection of layer h-fold sums.

    Windowed layers contribute sums of elements within the generation
    radius only, so the result can undercount; closed layers are exact.
    """
    if Q < 1:
        raise InputError(f"Q must be >= 1, got {Q}")
    if family.depth is not None:
        Q = min(Q, family.depth)
    acc: set[int] | None = None
    for q in range(1, Q + 1):
        r = gen_radius
        if r is None:
            r = default_radius(window, h, family.layer_reach(q))
        res = symbolic_hfold_sum(family.set_at(q), h, window, max(r, window.radius))
        m = members_in(res, window)
        acc = m if acc is None else acc & m
    assert acc is not None
    return acc


def _empirical(
    family: Family,
    h: int,
    cfg: HConfig,
    sample: int | None,
    empty: bool | None,
) -> HVerdict:
    """Two-scale truncation comparison when no certificate exists."""
    core = normalize(family.intersection())
    passes = []
    for scale in (1, cfg.deep_scale):
        win = cfg.window.scaled(scale) if scale != 1 else cfg.window
        Q = cfg.Q * scale
        if family.depth is not None:
            Q = min(Q, family.depth)
        radius = cfg.gen_radius * scale if cfg.gen_radius is not None else None
        lhs = symbolic_hfold_sum(
            core,
            h,
            win,
            max(radius, win.radius) if radius is not None else None,
        )
        left = members_in(lhs, win)
        trunc = truncated_layer_fold(family, h, win, Q, radius)
        missing = left - trunc
        if missing and not isinstance(lhs, Closed):
            # windowed folds use per-layer radii at least as large as the
            # core's, so core sums can never outrun the layers
            raise RuntimeError(
                f"core {h}-fold members escape a layer fold: "
                f"{sorted(missing)[:5]}"
            )
        passes.append((win, Q, sorted(trunc - left, key=_spiral_key), missing))

    (w1, q1, d1, m1), (w2, q2, d2, m2) = passes
    if m1 or m2:
        return HVerdict(
            h,
            UNDETERMINED,
            None,
            "closed core sums exceed the windowed layer folds; the "
            "generation radius is too small for this family",
            cfg.Q,
            cfg.window,
            sample,
            empty,
        )
    if not d1 and not d2:
        return HVerdict(
            h,
            EMPIRICAL_EQUAL,
            None,
            f"truncated layer intersections match the {h}-fold sumset at "
            f"(Q={q1}, [{w1.lo},{w1.hi}]) and (Q={q2}, [{w2.lo},{w2.hi}])",
            cfg.Q,
            cfg.window,
            sample,
            empty,
        )
    cand = (d2 or d1)[0]
    return HVerdict(
        h,
        UNDETERMINED,
        cand,
        f"{cand} persists in the depth-{q2} truncated intersection without "
        f"appearing in the {h}-fold sumset; no certificate to decide",
        cfg.Q,
        cfg.window,
        sample,
        empty,
    )


def verify_out_witness(family: Family, h: int, x: int) -> bool:
    """Independent re-check of a CertifiedOut witness.

    Confirms x is in the certificate's closed form and certifiably absent
    from the h-fold sums of the intersection.
    """
    cert = family.certificate(h)
    if cert is None or not contains(cert.closed_form, x):
        return False
    core = normalize(family.intersection())
    res = symbolic_hfold_sum(core, h, Window(-abs(x) - 8, abs(x) + 8))
    if isinstance(res, Closed):
        return not contains(res.set, x)
    return res.complete and x not in res.members


# ---------------------------------------------------------------------------
# affine transport


def transfer_affine(report: HReport, unit: int, shift: int) -> HReport:
    """The same statuses for the family x -> unit*x + shift, layer by layer.

    Sums of h transformed elements are the transformed sums shifted by
    h*shift, so verdicts carry over with witnesses mapped pointwise.
    """
    if unit not in (1, -1):
        raise InputError(f"unit must be +1 or -1, got {unit}")

    def move(v: object | None, h: int) -> object | None:
        if isinstance(v, bool) or not isinstance(v, int):
            return v
        return unit * v + h * shift

    verdicts = tuple(
        HVerdict(
            v.h,
            v.status,
            move(v.witness, v.h),
            f"{v.evidence} (transported through x -> {unit:+d}*x + {shift})",
            v.Q,
            v.window,
            move(v.sample, v.h),
            v.intersection_empty,
        )
        for v in report.verdicts
    )
    return HReport(
        kind=f"affine({report.kind})", config=report.config, verdicts=verdicts
    )


# ---------------------------------------------------------------------------
# products


def _pair_verdict(va: HVerdict, vb: HVerdict) -> HVerdict:
    """Conjunction of component verdicts for a componentwise pair family.

    Pair sums decompose per component, so h works for the pair exactly
    when it works for both components -- unless one component's layer-fold
    intersection is empty, which collapses both pair sets to nothing.
    """
    h, Q, window = va.h, va.Q, va.window
    if va.intersection_empty or vb.intersection_empty:
        empty_side = "left" if va.intersection_empty else "right"
        return HVerdict(
            h,
            CERTIFIED_IN,
            None,
            f"the {empty_side} component's layer-fold intersection is empty, "
            f"so the pair sumset and pair intersection both vanish",
            Q,
            window,
            None,
            True,
        )

    sample = None
    if va.sample is not None and vb.sample is not None:
        sample = (va.sample, vb.sample)
    empty: bool | None = None
    if va.intersection_empty is False and vb.intersection_empty is False:
        empty = False

    a_out = va.status == CERTIFIED_OUT
    b_out = vb.status == CERTIFIED_OUT
    if a_out and b_out:
        return HVerdict(
            h,
            CERTIFIED_OUT,
            (va.witness, vb.witness),
            "both components certified out; their witnesses pair up",
            Q,
            window,
            sample,
            empty,
        )
    if a_out or b_out:
        out_v, other = (va, vb) if a_out else (vb, va)
        if other.sample is not None:
            witness = (
                (out_v.witness, other.sample)
                if a_out
                else (other.sample, out_v.witness)
            )
            return HVerdict(
                h,
                CERTIFIED_OUT,
                witness,
                f"component witness {out_v.witness} embedded beside the "
                f"certified partner member {other.sample}",
                Q,
                window,
                sample,
                empty,
            )
        return HVerdict(
            h,
            UNDETERMINED,
            None,
            "one component is certified out but the partner side has no "
            "certified member to embed the witness with",
            Q,
            window,
            sample,
            empty,
        )

    status = max(va.status, vb.status, key=_STRENGTH.__getitem__)
    return HVerdict(
        h,
        status,
        None,
        f"componentwise conjunction (left {va.status}, right {vb.status})",
        Q,
        window,
        sample,
        empty,
    )


def transfer_product(report_a: HReport, report_b: HReport) -> HReport:
    """Verdicts for the componentwise pair family from component reports."""
    if report_a.h_max != report_b.h_max:
        raise InputError(
            f"mismatched h ranges: {report_a.h_max} vs {report_b.h_max}"
        )
    verdicts = tuple(
        _pair_verdict(va, vb)
        for va, vb in zip(report_a.verdicts, report_b.verdicts)
    )
    return HReport(
        kind=f"product({report_a.kind},{report_b.kind})",
        config=report_a.config,
        verdicts=verdicts,
    )


def _planar_fold(grid: np.ndarray, h: int) -> np.ndarray:
    """h-fold Minkowski sum of a boolean coordinate grid, exact counts."""
    size = [h * (n - 1) + 1 for n in grid.shape]
    f = np.fft.rfft2(grid.astype(np.float64), s=size)
    counts = np.fft.irfft2(f**h, s=size)
    return counts > 0.5


def _pair_identity_check(pf: ProductFamily, h_max: int, cfg: HConfig) -> None:
    """Brute planar folds of sampled layer pairs against per-axis folds."""
    r = min(12, cfg.window.radius)
    win = Window(-r, r)
    q_top = cfg.Q if pf.depth is None else min(cfg.Q, pf.depth)
    qs = {q for q in (1, 2, q_top) if q <= q_top}
    for q in sorted(qs):
        av = materialize(normalize(pf.left.set_at(q)), win)
        bv = materialize(normalize(pf.right.set_at(q)), win)
        if not av or not bv:
            continue
        ga = np.zeros(2 * r + 1, dtype=bool)
        gb = np.zeros(2 * r + 1, dtype=bool)
        ga[[v + r for v in av]] = True
        gb[[v + r for v in bv]] = True
        grid = np.outer(ga, gb)
        for h in range(2, h_max + 1):
            planar = _planar_fold(grid, h)
            rows = _planar_fold(ga[None, :], h)[0]
            cols = _planar_fold(gb[None, :], h)[0]
            if not np.array_equal(planar, np.outer(rows, cols)):
                raise RuntimeError(
                    f"planar {h}-fold of layer {q} is not the rectangle of "
                    f"its component folds"
                )


def compute_H_product(
    pf: ProductFamily, h_max: int, config: HConfig | None = None
) -> HReport:
    """Direct pair-family verdicts.

    Component data is generated per axis and combined as rectangles; a
    brute planar fold of sampled layers cross-checks that rectangle
    structure before any verdict is issued.
    """
    if h_max < 1:
        raise InputError(f"h_max must be >= 1, got {h_max}")
    cfg = config or HConfig()
    _pair_identity_check(pf, min(h_max, 3), cfg)
    verdicts = tuple(
        _pair_verdict(_verdict_h(pf.left, h, cfg), _verdict_h(pf.right, h, cfg))
        for h in range(1, h_max + 1)
    )
    return HReport(
        kind=f"product({pf.left.kind},{pf.right.kind})",
        config=cfg,
        verdicts=verdicts,
    )


# ---------------------------------------------------------------------------
# pullback through reduction mod m


@dataclass(frozen=True)
class FoldCheck:
    h: int
    residues: tuple[int, ...]
    group_fold: tuple[int, ...]
    symbolic_equal: bool
    window_equal: bool

    @property
    def ok(self) -> bool:
        return self.symbolic_equal and self.window_equal


@dataclass(frozen=True)
class PullbackReport:
    modulus: int
    window: Window
    fold_checks: tuple[FoldCheck, ...]
    h_in_group: tuple[bool, ...]
    h_in_integers: tuple[bool, ...]

    @property
    def fold_identity(self) -> bool:
        return all(c.ok for c in self.fold_checks)

    @property
    def h_agrees(self) -> bool:
        return self.h_in_group == self.h_in_integers

    @property
    def ok(self) -> bool:
        return self.fold_identity and self.h_agrees


def pullback_check(
    m: int,
    layers,
    h_max: int,
    window: Window | None = None,
) -> PullbackReport:
    """Residue arithmetic against its preimage under reduction mod m.

    For each layer B and h: the h-fold sums of {x : x mod m in B} must be
    exactly {x : x mod m in hB}, checked structurally and on the window.
    H of the residue chain, computed exhaustively in Z/mZ, must agree
    with H of the preimage chain over the integers.
    """
    if m < 2:
        raise InputError(f"modulus must be >= 2, got {m}")
    if hasattr(layers, "__iter__") and all(
        isinstance(x, int) for x in layers
    ):
        layers = [layers]
    chain = [frozenset(x % m for x in layer) for layer in layers]
    if not chain or any(not layer for layer in chain):
        raise InputError("residue layers must be nonempty")
    win = window or Window(-10 * m, 10 * m)
    g = FiniteGroupTable.cyclic(m)

    checks = []
    seen: set[frozenset[int]] = set()
    for layer in chain:
        if layer in seen:
            continue
        seen.add(layer)
        pull = congruence(m, layer)
        for h in range(1, h_max + 1):
            gf = group_hfold(g, layer, h)
            res = symbolic_hfold_sum(pull, h, win)
            expected = congruence(m, gf)
            sym_eq = isinstance(res, Closed) and res.set == expected
            win_eq = members_in(res, win) == set(materialize(expected, win))
            checks.append(
                FoldCheck(h, tuple(sorted(layer)), tuple(sorted(gf)), sym_eq, win_eq)
            )

    group_verdicts = group_H_explicit(g, chain, h_max)
    fam = ExplicitFamily([congruence(m, layer) for layer in chain])
    report = compute_H(fam, h_max, HConfig(Q=len(chain), window=win))
    return PullbackReport(
        modulus=m,
        window=win,
        fold_checks=tuple(checks),
        h_in_group=tuple(v.in_H for v in group_verdicts),
        h_in_integers=tuple(v.in_H for v in report.verdicts),
    )


# ---------------------------------------------------------------------------
# scaling comparison


@dataclass(frozen=True)
class ScaledComparison:
    """Side-by-side reports under dilation; no relation is asserted."""

    factor: int
    base: HReport
    scaled: HReport

    @property
    def status_agreement(self) -> tuple[bool, ...]:
        return tuple(
            a == b for a, b in zip(self.base.statuses, self.scaled.statuses)
        )


def compare_scaled(
    family: Family, factor: int, h_max: int, config: HConfig | None = None
) -> ScaledComparison:
    cfg = config or HConfig()
    base = compute_H(family, h_max, cfg)
    k = abs(factor)
    scaled_cfg = HConfig(
        Q=cfg.Q,
        window=cfg.window.scaled(k),
        gen_radius=None if cfg.gen_radius is None else cfg.gen_radius * k,
        deep_scale=cfg.deep_scale,
    )
    scaled = compute_H(ScaledFamily(family, factor), h_max, scaled_cfg)
    return ScaledComparison(factor=factor, base=base, scaled=scaled)
