import pytest
from hypothesis import given, settings, strategies as st

from groupoidlp.invsemi import (PartialBijection, SemigroupError, exel_normal_form, exel_semigroup,
                                generate_from_partial_bijections, group_by_name, spectral_action,
                                validate_inverse_semigroup)
from groupoidlp.semilattice import validate_semilattice

from oracles import compare_exel, exel_oracle

POINTS = [0, 1, 2]


def partial_bijections():
    def build(pairs):
        m, used = {}, set()
        for x, y in pairs:
            if x not in m and y not in used:
                m[x] = y
                used.add(y)
        return PartialBijection(m)
    pair = st.tuples(st.sampled_from(POINTS), st.sampled_from(POINTS))
    return st.lists(pair, max_size=3).map(build)


generated = st.lists(partial_bijections(), min_size=1, max_size=2).map(generate_from_partial_bijections)


def brandt():
    return generate_from_partial_bijections([PartialBijection({"x": "y"})])


# ---------------------------------------------------------------- generation

def test_identity_generates_one_element():
    S = generate_from_partial_bijections([PartialBijection({0: 0, 1: 1})])
    assert len(S) == 1


def test_swap_generates_group_of_order_two():
    swap = PartialBijection({0: 1, 1: 0})
    S = generate_from_partial_bijections([swap])
    assert set(S.elements) == {swap, PartialBijection({0: 0, 1: 1})}
    assert S.zero is None


def test_partial_map_generates_five_elements():
    S = brandt()
    t = PartialBijection({"x": "y"})
    expected = {t, t.inverse(), PartialBijection({"y": "y"}), PartialBijection({"x": "x"}),
                PartialBijection({})}
    assert set(S.elements) == expected
    assert S.label(S.zero) == PartialBijection({})


def test_partial_bijection_must_be_injective():
    with pytest.raises(SemigroupError):
        PartialBijection({0: 1, 1: 1})


def test_generation_bound():
    cycle = PartialBijection({k: (k + 1) % 7 for k in range(7)})
    with pytest.raises(SemigroupError):
        generate_from_partial_bijections([cycle], bound=3)


# ---------------------------------------------------------------- validation

def test_validate_group_table():
    S = validate_inverse_semigroup([[0, 1], [1, 0]], [0, 1])
    E = S.idempotent_semilattice()
    assert list(E.elements) == [0]


def test_validate_brandt_table():
    B = brandt()
    S = validate_inverse_semigroup(B.table, B.star_table)
    assert len(S) == 5
    assert len(S.idempotents()) == 3


def test_two_generalised_inverses_rejected():
    # left-zero band: a b = a, so both a and b are generalised inverses of a
    with pytest.raises(SemigroupError, match="not unique"):
        validate_inverse_semigroup([[0, 0], [1, 1]], [0, 1])


def test_non_associative_rejected():
    with pytest.raises(SemigroupError):
        validate_inverse_semigroup([[0, 1, 2], [1, 0, 0], [2, 0, 0]], [0, 1, 2])


# ---------------------------------------------------------------- order

def test_natural_order_examples():
    S = brandt()
    for s in range(len(S)):
        assert S.leq(s, s)
        assert S.leq(S.zero, s)
    one = generate_from_partial_bijections([PartialBijection({0: 0, 1: 1}), PartialBijection({0: 0})])
    e = one.index(PartialBijection({0: 0}))
    unit = one.index(PartialBijection({0: 0, 1: 1}))
    assert one.leq(e, unit) and not one.leq(unit, e)


@settings(max_examples=40, deadline=None)
@given(generated)
def test_order_agrees_with_idempotent_multiples(S):
    E = S.idempotents()
    for s in range(len(S)):
        for t in range(len(S)):
            assert S.leq(s, t) == any(S.mul(t, e) == s for e in E)


# ---------------------------------------------------------------- invariants

@settings(max_examples=40, deadline=None)
@given(generated)
def test_star_is_an_anti_involution(S):
    for s in range(len(S)):
        assert S.star(S.star(s)) == s
        assert S.mul(S.mul(s, S.star(s)), s) == s
        for t in range(len(S)):
            assert S.star(S.mul(s, t)) == S.mul(S.star(t), S.star(s))


@settings(max_examples=40, deadline=None)
@given(generated)
def test_idempotents_form_semilattice(S):
    E = S.idempotent_semilattice()
    assert set(E.elements) == {t for t in range(len(S)) if S.mul(t, t) == t}
    validate_semilattice(E.table, zero=E.zero)


# ---------------------------------------------------------------- spectral action

def test_spectral_action_idempotent_is_identity():
    S = brandt()
    E, chars, maps = spectral_action(S)
    for e in S.idempotents():
        assert all(maps[e][i] == i for i in maps[e])
        assert set(maps[e]) == {i for i, phi in enumerate(chars) if e in phi}


def test_spectral_action_group():
    S = validate_inverse_semigroup([[0, 1], [1, 0]], [0, 1])
    E, chars, maps = spectral_action(S)
    assert len(chars) == 1
    assert maps[1] == {0: 0}


def test_spectral_action_brandt():
    S = brandt()
    E, chars, maps = spectral_action(S)
    t = S.index(PartialBijection({"x": "y"}))
    src = S.source(t)
    rng = S.range_(t)
    i_src = next(i for i, phi in enumerate(chars) if src in phi)
    i_rng = next(i for i, phi in enumerate(chars) if rng in phi)
    assert maps[t] == {i_src: i_rng}


@settings(max_examples=40, deadline=None)
@given(generated)
def test_spectral_action_is_an_action(S):
    E, chars, maps = spectral_action(S)
    for t in range(len(S)):
        ts = S.star(t)
        assert maps[ts] == {y: x for x, y in maps[t].items()}
        assert set(maps[t]) == {i for i, phi in enumerate(chars) if S.source(t) in phi}
        for s in range(len(S)):
            comp = {x: maps[s][y] for x, y in maps[t].items() if y in maps[s]}
            assert comp == maps[S.mul(s, t)]


# ---------------------------------------------------------------- Exel semigroup

@pytest.mark.parametrize("name,size", [("trivial", 1), ("Z2", 3), ("Z3", 8), ("Z2xZ2", 20)])
def test_exel_sizes(name, size):
    S, _ = exel_semigroup(group_by_name(name))
    assert len(S) == size


def test_exel_z2_structure():
    G = group_by_name("Z2")
    S, br = exel_semigroup(G)
    g = 1
    eg = S.mul(br[g], br[g])
    assert S.label(eg) == (frozenset({0, 1}), 0)
    assert S.is_idempotent(eg)
    assert {S.label(x) for x in range(3)} == {(frozenset({0}), 0), (frozenset({0, 1}), 0),
                                               (frozenset({0, 1}), 1)}


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "Z2xZ2", "S3"])
def test_exel_relations(name):
    G = group_by_name(name)
    S, br = exel_semigroup(G)
    n = len(G)
    e = G.identity
    for s in range(n):
        si = G.inverse[s]
        assert S.mul(br[e], br[s]) == br[s] == S.mul(br[s], br[e])
        for t in range(n):
            ti = G.inverse[t]
            st_ = G.mul(s, t)
            assert S.mul(S.mul(br[s], br[t]), br[ti]) == S.mul(br[st_], br[ti])
            assert S.mul(S.mul(br[si], br[s]), br[t]) == S.mul(br[si], br[st_])


@pytest.mark.parametrize("name", ["Z2", "Z3"])
def test_exel_matches_relation_closure(name):
    G = group_by_name(name)
    S, br = exel_semigroup(G)
    elements, right = exel_oracle(G)
    compare_exel(S.mul, br, len(S), elements, right, br[G.identity])


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z2xZ2", "S3"])
def test_exel_normal_form_evaluates_back(name):
    G = group_by_name(name)
    S, br = exel_semigroup(G)
    for x in range(len(S)):
        acc = br[G.identity]
        for g in exel_normal_form(G, S.label(x)):
            acc = S.mul(acc, br[g])
        assert acc == x


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z2xZ2"])
def test_exel_is_inverse_semigroup(name):
    S, _ = exel_semigroup(group_by_name(name))
    validate_inverse_semigroup(S.table, S.star_table)
