"""Layer family constructions, gates, chain diagnostics, builder round trips."""

import pytest

from intersets import (
    ALL,
    AffineFamily,
    CongruenceChainFamily,
    ConstructionError,
    CosetTailFamily,
    EnumerationFamily,
    ExplicitFamily,
    HalfTailFamily,
    InputError,
    ProductFamily,
    ScaledFamily,
    TailFamily,
    Window,
    classify_monotonicity,
    cofinite,
    congruence,
    finite,
    half_tail,
    materialize,
    tail,
    union,
)
from intersets.families import build


# -- construction gates -----------------------------------------------------


def test_chain_gates():
    with pytest.raises(ConstructionError):
        CongruenceChainFamily((0, 1, 3), m1=6)  # needs m1 > 2*3
    with pytest.raises(ConstructionError):
        CongruenceChainFamily((0, 1, 3), m1=7, ratio=1)
    with pytest.raises(ConstructionError):
        CongruenceChainFamily((0, 1), moduli=(5, 12))  # 12 not a multiple of 5
    with pytest.raises(ConstructionError):
        CongruenceChainFamily((0, 1), moduli=(10, 5))
    with pytest.raises(ConstructionError):
        CongruenceChainFamily((), m1=7)
    CongruenceChainFamily((0, 1, 3), m1=7)  # boundary 7 > 6 is fine


def test_coset_gates():
    with pytest.raises(ConstructionError):
        CosetTailFamily(1, 1)
    with pytest.raises(ConstructionError):
        CosetTailFamily(4, 8)  # base inside the subgroup
    CosetTailFamily(4, 3)


def test_enumeration_gate():
    with pytest.raises(ConstructionError):
        EnumerationFamily(ALL)
    with pytest.raises(ConstructionError):
        ExplicitFamily([])


def test_affine_scaled_gates():
    inner = TailFamily(finite([0, 1]))
    with pytest.raises(ConstructionError):
        AffineFamily(2, 0, inner)
    with pytest.raises(ConstructionError):
        ScaledFamily(inner, 1)
    with pytest.raises(ConstructionError):
        ScaledFamily(inner, 0)


def test_builder_gates():
    with pytest.raises(ConstructionError):
        build("mystery", {})
    with pytest.raises(ConstructionError):
        build("coset-tail", {"subgroup_step": 3})


# -- layer shapes -----------------------------------------------------------


def test_chain_layers_frozen():
    fam = CongruenceChainFamily((0, 1, 3), m1=7)
    assert fam.modulus_at(1) == 7
    assert fam.modulus_at(2) == 14
    assert fam.modulus_at(4) == 56
    assert fam.set_at(2) == congruence(14, (0, 1, 3))
    assert fam.intersection() == finite([0, 1, 3])
    assert fam.pinning_depth(4, 30) == 4
    assert fam.pinning_depth(4, 100) == 6


def test_chain_explicit_moduli():
    fam = CongruenceChainFamily((0, 1), moduli=(5, 15, 45))
    assert [fam.modulus_at(q) for q in range(1, 6)] == [5, 15, 45, 135, 405]


def test_tail_layers():
    fam = TailFamily(finite([0, 1]))
    assert fam.set_at(3) == union(finite([0, 1]), tail(0, 3))
    assert fam.intersection() == finite([0, 1])
    assert materialize(fam.set_at(3), Window(-5, 5)) == [-5, -4, -3, 0, 1, 3, 4, 5]


def test_half_tail_layers():
    fam = HalfTailFamily(finite([-2]))
    assert fam.set_at(4) == union(finite([-2]), half_tail(4))
    assert fam.intersection() == finite([-2])


def test_enumeration_layers_frozen():
    fam = EnumerationFamily(finite([0, 1]))
    # complement spiral: -1, -2, 2, -3, ...; layer q drops the first q-1
    assert fam.set_at(1) == ALL
    assert fam.set_at(2) == cofinite([-1])
    assert fam.set_at(3) == cofinite([-1, -2])
    assert fam.intersection() == finite([0, 1])

    cf = EnumerationFamily(cofinite([5, -3, 7]))
    assert cf.set_at(2) == cofinite([-3])  # smallest-|a| complement point first
    assert cf.set_at(3) == cofinite([-3, 5])
    assert cf.set_at(4) == cofinite([-3, 5, 7])


def test_coset_layers():
    fam = CosetTailFamily(2, 1)
    got = materialize(fam.set_at(3), Window(-10, 12))
    evens = [x for x in range(-10, 13) if x % 2 == 0]
    odds = [x for x in range(-10, 13) if x % 2 == 1 and x >= 1 + 2 * 3]
    assert got == sorted(evens + odds)
    assert fam.intersection() == congruence(2, (0,))


def test_product_family():
    fam = ProductFamily(TailFamily(finite([0])), HalfTailFamily(finite([1])))
    l, r = fam.set_at(2)
    assert l == union(finite([0]), tail(0, 2))
    assert r == union(finite([1]), half_tail(2))
    assert fam.intersection() == (finite([0]), finite([1]))


def test_layer_index_gates():
    fam = ExplicitFamily([half_tail(0), half_tail(1)])
    assert fam.depth == 2
    fam.set_at(2)
    with pytest.raises(InputError):
        fam.set_at(3)
    with pytest.raises(InputError):
        fam.set_at(0)


# -- chain diagnostics ------------------------------------------------------


def test_classify_monotonicity_strict():
    rep = classify_monotonicity(TailFamily(finite([0, 1])), depth=5)
    assert rep.decreasing and rep.strictly_decreasing and rep.asymptotically_strict
    # layer q keeps |x| >= q, layer q+1 drops exactly -q and q
    assert rep.witnesses == (-1, -2, -3, -4, -5)
    assert all(c.certified for c in rep.checks)


def test_classify_monotonicity_stalls():
    # identical layers: decreasing but never strict
    fam = ExplicitFamily([half_tail(0), half_tail(0), half_tail(0)])
    rep = classify_monotonicity(fam, depth=5)
    assert rep.decreasing
    assert not rep.strictly_decreasing
    assert not rep.asymptotically_strict
    assert len(rep.checks) == 2  # clamped to depth - 1


def test_classify_monotonicity_not_decreasing():
    fam = ExplicitFamily([half_tail(2), half_tail(0)])
    rep = classify_monotonicity(fam, depth=3)
    assert not rep.decreasing


# -- params round trips -----------------------------------------------------

ROUND_TRIP = [
    TailFamily(finite([0, 2])),
    HalfTailFamily(congruence(3, (1,))),
    CongruenceChainFamily((0, 1, 3), m1=7),
    CosetTailFamily(4, 3),
    EnumerationFamily(finite([0, 1])),
    AffineFamily(-1, 2, TailFamily(finite([0]))),
    ScaledFamily(HalfTailFamily(finite([0])), 3),
    ExplicitFamily([half_tail(0), half_tail(2)]),
]


@pytest.mark.parametrize("fam", ROUND_TRIP, ids=lambda f: f.kind)
def test_params_rebuild_same_layers(fam):
    twin = build(fam.kind, fam.params())
    for q in (1, 2, 3)[: fam.depth or 3]:
        assert twin.set_at(q) == fam.set_at(q)
    assert twin.intersection() == fam.intersection()
