import itertools

import pytest
from hypothesis import given, settings, strategies as st

from groupoidlp.semilattice import SemilatticeError, validate_semilattice

from oracles import brute_characters, brute_tight


def chain():
    # 0 < e < f as indices 0, 1, 2
    return validate_semilattice([[min(a, b) for b in range(3)] for a in range(3)])


def diamond():
    # 0, a, b, 1 with a meet b = 0
    t = [[0, 0, 0, 0],
         [0, 1, 0, 1],
         [0, 0, 2, 2],
         [0, 1, 2, 3]]
    return validate_semilattice(t, ["0", "a", "b", "1"])


def subset_semilattice(sets):
    """Meet table of a family of sets closed under intersection."""
    fam = set(frozenset(s) for s in sets)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(fam), 2):
            if a & b not in fam:
                fam.add(a & b)
                changed = True
    els = sorted(fam, key=lambda s: (len(s), sorted(s)))
    idx = {s: i for i, s in enumerate(els)}
    table = [[idx[a & b] for b in els] for a in els]
    zero = idx[frozenset()] if frozenset() in idx and len(els) > 1 else None
    return validate_semilattice(table, els, zero)


semilattices = st.lists(st.frozensets(st.integers(0, 3), min_size=0, max_size=4),
                        min_size=1, max_size=6).map(subset_semilattice)


def test_one_element():
    E = validate_semilattice([[0]])
    assert len(E) == 1 and E.zero is None
    assert E.atoms() == [0]
    assert len(E.tight_characters()) == 1


def test_chain_examples():
    E = chain()
    assert E.zero == 0
    assert E.atoms() == [1]
    assert set(E.filters()) == {frozenset({2}), frozenset({1, 2})}
    assert E.ultrafilters() == [frozenset({1, 2})]
    assert E.tight_characters() == [frozenset({1, 2})]
    assert not E.is_cover(1, [])


def test_diamond_examples():
    E = diamond()
    a, b, one = E.index("a"), E.index("b"), E.index("1")
    assert set(E.filters()) == {frozenset({one}), frozenset({a, one}), frozenset({b, one})}
    assert set(E.ultrafilters()) == {frozenset({a, one}), frozenset({b, one})}
    assert len(E.tight_characters()) == 2
    assert E.is_cover(one, [a, b])
    assert not E.is_cover(one, [a])
    for e in E.nonzero():
        assert E.is_cover(e, [e])


def test_not_commutative():
    t = [[0, 0], [1, 1]]
    with pytest.raises(SemilatticeError, match="commutative"):
        validate_semilattice(t)


def test_cover_candidate_must_lie_below():
    E = diamond()
    with pytest.raises(SemilatticeError):
        E.is_cover(E.index("a"), [E.index("b")])


def test_characters_match_brute_force():
    E = diamond()
    assert set(E.characters()) == set(brute_characters(len(E), E.table, E.zero))


@settings(max_examples=60, deadline=None)
@given(semilattices)
def test_filters_are_principal_characters(E):
    chars = set(brute_characters(len(E), E.table, E.zero))
    assert set(E.characters()) == chars
    for phi in E.filters():
        vals = E.character_values(phi)
        for a in range(len(E)):
            for b in range(len(E)):
                assert vals[E.meet(a, b)] == vals[a] * vals[b]


@settings(max_examples=60, deadline=None)
@given(semilattices)
def test_atom_cover_test_matches_definition(E):
    if len(E) > 12:
        return
    for e in E.nonzero():
        below = E.below(e)
        for k in range(len(below) + 1):
            for F in itertools.combinations(below, k):
                assert E.is_cover(e, F) == E.is_cover_literal(e, F)


@settings(max_examples=40, deadline=None)
@given(semilattices)
def test_tight_characters_match_definition(E):
    if len(E) > 10:
        return
    assert set(E.tight_characters()) == set(brute_tight(len(E), E.table, E.zero))


@settings(max_examples=40, deadline=None)
@given(semilattices)
def test_covers_reach_tight_characters(E):
    if len(E) > 10:
        return
    tight = E.tight_characters()
    for e in E.nonzero():
        for F in E.covers(e):
            for phi in tight:
                if e in phi:
                    assert any(f in phi for f in F)
