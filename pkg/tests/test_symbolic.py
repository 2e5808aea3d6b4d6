"""Term language invariants: normalization, membership, subset soundness."""

from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from intersets import (
    ALL,
    EMPTY,
    DomainError,
    Window,
    affine,
    bounds,
    cofinite,
    congruence,
    contains,
    down_tail,
    finite,
    half_tail,
    intersect,
    is_subset,
    materialize,
    negate,
    normalize,
    scale_set,
    shift,
    tail,
    union,
)
from intersets.symbolic import (
    Affine,
    Cofinite,
    Congruence,
    Finite,
    HalfTail,
    Intersection,
    Tail,
    Union,
)

ints = st.integers(-30, 30)


def _srt(xs):
    # raw nodes keep their element tuples sorted and deduplicated
    return tuple(sorted(set(xs)))


finites = st.lists(ints, max_size=5).map(lambda xs: Finite(_srt(xs)))
cofinites = st.lists(ints, max_size=4).map(lambda xs: Cofinite(_srt(xs)))
congruences = st.tuples(
    st.integers(1, 10), st.lists(st.integers(0, 29), min_size=1, max_size=4)
).map(lambda t: Congruence(t[0], _srt(r % t[0] for r in t[1])))
tails = st.tuples(st.integers(-10, 10), st.integers(1, 8)).map(lambda t: Tail(*t))
halves = st.integers(-10, 10).map(HalfTail)

base_sets = st.one_of(finites, cofinites, congruences, tails, halves)

raw_sets = st.recursive(
    base_sets,
    lambda kids: st.one_of(
        st.tuples(kids, kids).map(Union),
        st.tuples(kids, kids).map(Intersection),
        st.tuples(st.sampled_from((1, -1)), st.integers(-8, 8), kids).map(
            lambda t: Affine(t[0], t[1], t[2])
        ),
    ),
    max_leaves=4,
)

PROBE = list(range(-60, 61))


@given(raw_sets)
@settings(max_examples=150)
def test_normalize_is_idempotent(s):
    n = normalize(s)
    assert normalize(n) == n


@given(raw_sets)
@settings(max_examples=150)
def test_normalize_preserves_membership(s):
    n = normalize(s)
    assert all(contains(s, x) == contains(n, x) for x in PROBE)


@given(raw_sets, raw_sets)
@settings(max_examples=100)
def test_union_and_intersection_membership(a, b):
    u = union(a, b)
    i = intersect(a, b)
    for x in range(-40, 41):
        assert contains(u, x) == (contains(a, x) or contains(b, x))
        assert contains(i, x) == (contains(a, x) and contains(b, x))


@given(raw_sets, st.sampled_from((1, -1)), st.integers(-10, 10))
@settings(max_examples=100)
def test_affine_membership(s, unit, t):
    img = affine(unit, t, s)
    assert all(contains(img, unit * x + t) == contains(s, x) for x in PROBE)


@given(raw_sets, st.integers(-5, 5).filter(lambda k: k != 0))
@settings(max_examples=100)
def test_scale_membership(s, k):
    scaled = scale_set(s, k)
    for x in range(-30, 31):
        assert contains(scaled, k * x) == contains(s, x)
    for y in range(-30, 31):
        if y % k != 0:
            assert not contains(scaled, y)


@given(raw_sets, raw_sets)
@settings(max_examples=150)
def test_is_subset_never_lies(a, b):
    na, nb = normalize(a), normalize(b)
    if is_subset(na, nb):
        assert all(contains(nb, x) for x in PROBE if contains(na, x))


@given(raw_sets)
@settings(max_examples=80)
def test_materialize_agrees_with_contains(s):
    got = materialize(normalize(s), Window(-25, 25))
    assert got == [x for x in range(-25, 26) if contains(s, x)]
    assert got == sorted(got)


@given(raw_sets)
@settings(max_examples=80)
def test_absorbing_elements(s):
    assert union(s, ALL) == ALL
    assert intersect(s, EMPTY) == EMPTY
    assert union(s, EMPTY) == normalize(s)
    assert intersect(s, ALL) == normalize(s)


@given(raw_sets)
@settings(max_examples=80)
def test_bounds_bracket_every_member(s):
    n = normalize(s)
    lo, hi = bounds(n)
    for x in PROBE:
        if contains(n, x):
            assert lo is None or lo <= x
            assert hi is None or x <= hi


def test_canonical_forms():
    """Distinct spellings of the same set normalize to one representative."""
    assert congruence(6, (1, 3, 5)) == congruence(2, (1,))
    assert union(
        congruence(6, (1,)), congruence(6, (3,)), congruence(6, (5,))
    ) == congruence(2, (1,))
    assert tail(0, 3) == cofinite((-2, -1, 0, 1, 2))
    assert union(half_tail(5), down_tail(4)) == ALL
    assert union(half_tail(6), down_tail(2)) == tail(4, 2)
    assert affine(-1, 0, half_tail(3)) == down_tail(-3)
    assert intersect(congruence(2, (0,)), congruence(3, (0,))) == congruence(6, (0,))
    assert finite([]) == EMPTY
    assert cofinite([]) == ALL
    assert shift(finite([1, 2]), 3) == finite([4, 5])
    assert negate(half_tail(2)) == down_tail(-2)


def test_is_subset_known_relations():
    assert is_subset(congruence(4, (0,)), congruence(2, (0,)))
    assert not is_subset(congruence(2, (0,)), congruence(4, (0,)))
    assert is_subset(finite([2, 4]), congruence(2, (0,)))
    assert is_subset(half_tail(5), half_tail(3))
    assert not is_subset(half_tail(3), half_tail(5))
    assert is_subset(EMPTY, finite([1]))


def test_domain_gates():
    with pytest.raises(DomainError):
        normalize(Congruence(0, (0,)))
    with pytest.raises(DomainError):
        normalize(Tail(0, 0))
    with pytest.raises(DomainError):
        normalize(Affine(2, 0, HalfTail(0)))
    with pytest.raises(DomainError):
        scale_set(half_tail(0), 0)
