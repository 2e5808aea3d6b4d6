"""H-set reports: certificates, witnesses, transport, pullback, scaling."""

import pytest

from intersets import (
    CERTIFIED_IN,
    CERTIFIED_OUT,
    EMPIRICAL_EQUAL,
    UNDETERMINED,
    CongruenceChainFamily,
    CosetTailFamily,
    EMPTY,
    EnumerationFamily,
    HConfig,
    InputError,
    ProductFamily,
    TailFamily,
    HalfTailFamily,
    Window,
    compare_scaled,
    compute_H,
    compute_H_product,
    congruence,
    finite,
    materialize,
    pullback_check,
    symbolic_hfold_sum,
    transfer_affine,
    transfer_product,
    truncated_layer_fold,
    union,
    verify_out_witness,
)

FOURZ1 = union(congruence(4, (0,)), finite([1]))
THREEZ1 = union(congruence(3, (0,)), finite([1]))


def _rows(report):
    return [
        (v.status, v.witness, v.sample, v.intersection_empty)
        for v in report.verdicts
    ]


# -- single families, frozen ------------------------------------------------


def test_tail_of_empty_core():
    rep = compute_H(TailFamily(EMPTY), 4)
    assert rep.statuses == (
        CERTIFIED_IN,
        CERTIFIED_OUT,
        CERTIFIED_OUT,
        CERTIFIED_OUT,
    )
    assert rep.in_H == (1,)
    assert rep.all_certified
    assert _rows(rep) == [
        (CERTIFIED_IN, None, None, True),
        (CERTIFIED_OUT, 0, 0, False),
        (CERTIFIED_OUT, 0, 0, False),
        (CERTIFIED_OUT, 0, 0, False),
    ]


def test_half_tail_of_empty_core():
    rep = compute_H(HalfTailFamily(EMPTY), 4)
    assert rep.statuses == (CERTIFIED_IN,) * 4
    assert rep.in_H == (1, 2, 3, 4)
    assert _rows(rep) == [(CERTIFIED_IN, None, None, True)] * 4


def test_congruence_chain():
    rep = compute_H(CongruenceChainFamily((0, 1, 3), m1=7), 4)
    assert rep.statuses == (CERTIFIED_IN,) * 4
    assert all(v.sample == 0 for v in rep.verdicts)
    assert all(v.intersection_empty is False for v in rep.verdicts)


def test_coset_tail():
    rep = compute_H(CosetTailFamily(2, 1), 4)
    assert rep.statuses == (
        CERTIFIED_IN,
        CERTIFIED_OUT,
        CERTIFIED_OUT,
        CERTIFIED_OUT,
    )
    assert [v.witness for v in rep.verdicts] == [None, -1, -1, -1]
    assert all(v.sample == 0 for v in rep.verdicts)
    # the witnesses are odd: they live in the coset the sums fill in
    assert all(w % 2 == 1 for w in [v.witness for v in rep.verdicts][1:])


def test_tail_with_congruence_cores():
    rep4 = compute_H(TailFamily(FOURZ1), 4)
    assert rep4.statuses == (
        CERTIFIED_IN,
        CERTIFIED_OUT,
        CERTIFIED_OUT,
        CERTIFIED_IN,
    )
    assert rep4.in_H == (1, 4)
    assert [v.witness for v in rep4.verdicts] == [None, -1, -1, None]

    rep3 = compute_H(TailFamily(THREEZ1), 4)
    assert rep3.statuses == (
        CERTIFIED_IN,
        CERTIFIED_OUT,
        CERTIFIED_IN,
        CERTIFIED_IN,
    )
    assert rep3.in_H == (1, 3, 4)
    assert [v.witness for v in rep3.verdicts] == [None, -1, None, None]


def test_enumeration():
    rep = compute_H(EnumerationFamily(finite([0, 1])), 4)
    assert rep.statuses == (
        CERTIFIED_IN,
        CERTIFIED_OUT,
        CERTIFIED_OUT,
        CERTIFIED_OUT,
    )
    assert [v.witness for v in rep.verdicts] == [None, -1, -1, -1]


def test_compute_H_gates():
    with pytest.raises(InputError):
        compute_H(TailFamily(EMPTY), 0)
    rep = compute_H(TailFamily(EMPTY), 2)
    with pytest.raises(InputError):
        rep.verdict(3)
    assert rep.verdict(2).h == 2


def test_hconfig_defaults():
    cfg = HConfig()
    assert cfg.Q == 8
    assert cfg.window == Window(-24, 24)
    assert cfg.gen_radius is None


# -- witness verification ---------------------------------------------------


def test_verify_out_witness():
    fam = TailFamily(FOURZ1)
    assert verify_out_witness(fam, 2, -1)
    assert verify_out_witness(fam, 3, -1)
    assert not verify_out_witness(fam, 2, 0)  # 0 is a core sum
    # for this core the 3-fold already covers Z, so nothing can witness
    assert not verify_out_witness(TailFamily(THREEZ1), 3, -1)


# -- affine transport -------------------------------------------------------


def test_transfer_affine_frozen():
    base = compute_H(EnumerationFamily(finite([0, 1])), 3)
    moved = transfer_affine(base, -1, 2)
    assert moved.kind == "affine(enumeration)"
    assert moved.statuses == (CERTIFIED_IN, CERTIFIED_OUT, CERTIFIED_OUT)
    # witness w maps to unit*w + h*shift
    assert [v.witness for v in moved.verdicts] == [None, 5, 7]
    with pytest.raises(InputError):
        transfer_affine(base, 2, 0)


# -- products ---------------------------------------------------------------


def test_product_direct_frozen():
    pf = ProductFamily(TailFamily(finite([0, 1])), TailFamily(EMPTY))
    rep = compute_H(pf, 3)
    assert rep.kind == "product(tail,tail)"
    assert rep.statuses == (CERTIFIED_IN, CERTIFIED_OUT, CERTIFIED_OUT)
    assert [v.witness for v in rep.verdicts] == [None, (-1, 0), (-1, 0)]
    assert [v.intersection_empty for v in rep.verdicts] == [True, False, False]


def test_transfer_product_matches_direct():
    left = TailFamily(finite([0, 1]))
    right = TailFamily(EMPTY)
    direct = compute_H(ProductFamily(left, right), 3)
    stitched = transfer_product(compute_H(left, 3), compute_H(right, 3))
    assert stitched.statuses == direct.statuses
    assert [v.witness for v in stitched.verdicts] == [
        v.witness for v in direct.verdicts
    ]
    with pytest.raises(InputError):
        transfer_product(compute_H(left, 3), compute_H(right, 2))


def test_product_empty_side_collapses():
    pf = ProductFamily(HalfTailFamily(EMPTY), TailFamily(finite([0, 1])))
    rep = compute_H_product(pf, 3)
    assert rep.statuses == (CERTIFIED_IN,) * 3
    assert all(v.intersection_empty for v in rep.verdicts)


# -- truncated layer folds --------------------------------------------------


def test_truncated_layer_fold_pins():
    fam = CongruenceChainFamily((0, 1, 3), m1=7)
    win = Window(-30, 30)
    assert fam.pinning_depth(4, 30) == 4
    core_sums = symbolic_hfold_sum(finite([0, 1, 3]), 4)
    expected = set(materialize(core_sums.set, win))
    at_pin = truncated_layer_fold(fam, 4, win, 4)
    assert at_pin == expected
    shallow = truncated_layer_fold(fam, 4, win, 3)
    assert shallow > expected
    assert len(shallow - expected) == 15
    with pytest.raises(InputError):
        truncated_layer_fold(fam, 4, win, 0)


# -- pullback ---------------------------------------------------------------


def test_pullback_frozen():
    rep = pullback_check(6, [(1, 3)], 3)
    assert rep.ok and rep.fold_identity and rep.h_agrees
    assert rep.modulus == 6
    folds = {c.h: c.group_fold for c in rep.fold_checks}
    assert folds == {1: (1, 3), 2: (0, 2, 4), 3: (1, 3, 5)}
    assert rep.h_in_group == (True, True, True)
    assert rep.h_in_integers == (True, True, True)
    assert all(c.symbolic_equal and c.window_equal for c in rep.fold_checks)


def test_pullback_gates():
    with pytest.raises(InputError):
        pullback_check(1, [(0,)], 2)
    with pytest.raises(InputError):
        pullback_check(6, [()], 2)


# -- scaling comparison -----------------------------------------------------


def test_compare_scaled_frozen():
    cmp = compare_scaled(TailFamily(FOURZ1), 3, 4)
    assert cmp.base.statuses == (
        CERTIFIED_IN,
        CERTIFIED_OUT,
        CERTIFIED_OUT,
        CERTIFIED_IN,
    )
    assert cmp.scaled.statuses == (
        CERTIFIED_IN,
        UNDETERMINED,
        UNDETERMINED,
        EMPIRICAL_EQUAL,
    )
    assert [v.witness for v in cmp.scaled.verdicts] == [None, -3, -3, None]
    assert cmp.status_agreement == (True, False, False, False)
    # the scaled candidates really are the scaled base witnesses
    assert [3 * w if w is not None else None for w in
            [v.witness for v in cmp.base.verdicts]] == [
        v.witness for v in cmp.scaled.verdicts
    ]
