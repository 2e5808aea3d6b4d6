"""Rational perturbation layers and exact open-interval arithmetic."""

from fractions import Fraction

import pytest

from intersets import (
    ConstructionError,
    InputError,
    IntervalUnion,
    RationalPerturbFamily,
    interval_layer,
    minkowski_hfold,
    rational_family_set,
    verify_open_theorem,
    verify_rational_theorem,
)


# -- family construction ----------------------------------------------------


def test_base_point_gates():
    with pytest.raises(ConstructionError):
        RationalPerturbFamily(())
    with pytest.raises(ConstructionError):
        RationalPerturbFamily((1, 5))  # first point must exceed 1
    with pytest.raises(ConstructionError):
        RationalPerturbFamily((4, 6))  # gap must exceed 2
    with pytest.raises(ConstructionError):
        RationalPerturbFamily((4, 8), n_max=3)
    with pytest.raises(ConstructionError):
        RationalPerturbFamily((4, 8), r_max=0)
    RationalPerturbFamily((4, 8, 12))


def test_rational_family_set():
    fam = RationalPerturbFamily((4,), r_max=3)
    got = rational_family_set(fam, 2)
    expect = sorted(
        [4 + Fraction(1, r) for r in (2, 3)] + [4 - Fraction(1, r) for r in (2, 3)]
    )
    assert got == expect
    assert Fraction(4) not in got
    with_base = rational_family_set(
        RationalPerturbFamily((4,), include_base=True, r_max=3), 3
    )
    assert Fraction(4) in with_base
    with pytest.raises(InputError):
        rational_family_set(fam, 0)
    with pytest.raises(InputError):
        rational_family_set(fam, 4)  # beyond r_max, the layer has no points


# -- rational truncation runs -----------------------------------------------


def test_rational_theorem_frozen():
    fam = RationalPerturbFamily((4, 8, 12), r_max=12)
    rep = verify_rational_theorem(fam, 2, 6, (0, 18))
    assert rep.ok
    assert rep.bound == Fraction(1, 3)
    assert rep.base_sums == (Fraction(8), Fraction(12), Fraction(16))
    assert rep.base_in_intersection and rep.missing_base == ()
    assert rep.monotone
    assert rep.intersection_size == 285
    # the bound is sharp here: some survivor sits exactly h/Q away
    assert rep.max_distance == Fraction(1, 3)
    assert rep.bound_ok and rep.violations == ()


def test_rational_theorem_with_base_points():
    fam = RationalPerturbFamily((4, 8, 12), include_base=True, r_max=12)
    rep = verify_rational_theorem(fam, 2, 6, (0, 18))
    assert rep.ok and rep.missing_base == ()
    # keeping the base points enlarges every layer, never shrinks it
    assert rep.intersection_size == 315


def test_rational_theorem_gates():
    fam = RationalPerturbFamily((4, 8, 12), r_max=12)
    with pytest.raises(InputError):
        verify_rational_theorem(fam, 1, 6, (0, 18))
    with pytest.raises(InputError):
        verify_rational_theorem(fam, 2, 4, (0, 18))  # needs 2h < Q
    with pytest.raises(InputError):
        verify_rational_theorem(fam, 2, 6, (0, 18), r_max=8)  # needs >= 2Q
    with pytest.raises(InputError):
        verify_rational_theorem(fam, 2, 6, (18, 0))


# -- interval unions --------------------------------------------------------


def test_interval_union_merging():
    u = IntervalUnion.build([(0, 2), (1, 3)])
    assert u.intervals == ((Fraction(0), Fraction(3)),)
    # touching intervals stay apart: their shared endpoint is missing
    v = IntervalUnion.build([(0, 1), (1, 2)])
    assert len(v.intervals) == 2
    assert v.contains(Fraction(1, 2)) and v.contains(Fraction(3, 2))
    assert not v.contains(1)
    assert not v.contains(0) and not v.contains(2)
    assert IntervalUnion.build([(1, 1)]).is_empty


def test_interval_union_operations():
    a = IntervalUnion.build([(0, 2), (5, 7)])
    b = IntervalUnion.build([(1, 6)])
    assert a.intersect(b).intervals == (
        (Fraction(1), Fraction(2)),
        (Fraction(5), Fraction(6)),
    )
    assert a.union(b).intervals == ((Fraction(0), Fraction(7)),)
    assert a.restrict(1, 6) == a.intersect(b)
    m = IntervalUnion.build([(0, 1)]).minkowski(IntervalUnion.build([(0, 1)]))
    assert m.intervals == ((Fraction(0), Fraction(2)),)


def test_minkowski_hfold_merges_punctures():
    layer = interval_layer([4], 2)
    assert layer.intervals == (
        (Fraction(7, 2), Fraction(4)),
        (Fraction(4), Fraction(9, 2)),
    )
    assert not layer.contains(4)
    # the three pairwise sums overlap and close the gap over 8
    fold = minkowski_hfold(layer, 2)
    assert fold.intervals == ((Fraction(7), Fraction(9)),)
    assert fold.contains(8)
    with pytest.raises(InputError):
        minkowski_hfold(layer, 0)


# -- open-interval truncation runs ------------------------------------------


def test_open_theorem_frozen():
    rep = verify_open_theorem((4, 8, 12), 2, 10, (0, 18))
    assert rep.ok
    assert rep.radius_bound == Fraction(1, 5)
    assert rep.all_centered and not rep.all_punctured
    assert rep.primed_contains_base
    assert rep.components == (
        (Fraction(39, 5), Fraction(41, 5)),
        (Fraction(59, 5), Fraction(61, 5)),
        (Fraction(79, 5), Fraction(81, 5)),
    )


def test_open_theorem_h1_punctured():
    rep = verify_open_theorem((4, 8, 12), 1, 10, (0, 18))
    assert rep.ok
    assert rep.all_punctured
    assert len(rep.components) == 6  # two slivers per base point
    assert not rep.empty


def test_open_theorem_empty_window():
    rep = verify_open_theorem((4, 8, 12), 2, 10, (17, 18))
    assert rep.empty and rep.components == ()


def test_open_theorem_gates():
    with pytest.raises(InputError):
        verify_open_theorem((4, 8, 12), 0, 10, (0, 18))
    with pytest.raises(InputError):
        verify_open_theorem((4, 8, 12), 2, 0, (0, 18))
    with pytest.raises(InputError):
        verify_open_theorem((4, 8, 12), 2, 10, (18, 0))
    with pytest.raises(ConstructionError):
        verify_open_theorem((4, 6), 2, 10, (0, 18))
