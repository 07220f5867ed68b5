from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from groupoidlp.exactnum import QComplex
from groupoidlp.galg import (AlgElement, Cocycle, CocycleError, convolve, involute, norm_dstar, norm_I,
                             norm_projective, norm_rstar, norm_sup, opposite_cocycle, opposite_element,
                             validate_cocycle)
from groupoidlp.groupoid import bisection_semigroup, bisection_semigroup_all, group_groupoid, pair_groupoid
from groupoidlp.invsemi import group_by_name

from helpers import random_element, random_groupoid, seeded
from oracles import projective_norm_oracle

seeds = st.integers(0, 10 ** 6)


def z2_twisted():
    G = group_groupoid(group_by_name("Z2"))
    return G, Cocycle(G, {(1, 1): Fraction(-1)})


def ones(G, sigma=None):
    return AlgElement(G, sigma, [Fraction(1)] * len(G))


# ---------------------------------------------------------------- cocycles

def test_trivial_cocycle_valid():
    G = pair_groupoid(3)
    assert validate_cocycle(G, Cocycle(G))


def test_sign_cocycle_on_z2_valid():
    G, sigma = z2_twisted()
    assert validate_cocycle(G, sigma)


def test_non_unimodular_cocycle_rejected():
    G = group_groupoid(group_by_name("Z2"))
    with pytest.raises(CocycleError, match="unimodular"):
        validate_cocycle(G, Cocycle(G, {(1, 1): Fraction(2)}))


def test_non_normalised_cocycle_rejected():
    G = group_groupoid(group_by_name("Z2"))
    with pytest.raises(CocycleError):
        validate_cocycle(G, Cocycle(G, {(0, 1): Fraction(-1)}))


def test_cocycle_identity_failure_rejected():
    G = group_groupoid(group_by_name("Z3"))
    with pytest.raises(CocycleError, match="identity"):
        validate_cocycle(G, Cocycle(G, {(1, 1): Fraction(-1)}))


# ---------------------------------------------------------------- convolution and involution

def test_matrix_units_multiply():
    G = pair_groupoid(2)
    e12 = AlgElement.delta(G, None, G.index((0, 1)))
    e21 = AlgElement.delta(G, None, G.index((1, 0)))
    assert convolve(e12, e21) == AlgElement.delta(G, None, G.index((0, 0)))


def test_unit_is_neutral():
    rng = seeded(3)
    for _ in range(10):
        G, sigma = random_groupoid(rng, max_arrows=20)
        one = AlgElement.from_dict(G, sigma, {x: Fraction(1) for x in G.units})
        f = random_element(G, sigma, rng)
        assert convolve(one, f) == f == convolve(f, one)


def test_twisted_square():
    G, sigma = z2_twisted()
    g = AlgElement.delta(G, sigma, 1)
    assert convolve(g, g) == AlgElement.delta(G, sigma, 0, Fraction(-1))
    assert involute(g) == g.scale(Fraction(-1))


def test_untwisted_involution_is_transpose_pattern():
    G = pair_groupoid(3)
    f = AlgElement.from_dict(G, None, {(0, 1): Fraction(2), (2, 0): QComplex(1, 1)}, by_label=True)
    fs = involute(f)
    assert fs[G.index((1, 0))] == 2
    assert fs[G.index((0, 2))] == QComplex(1, -1)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_involution_laws(seed):
    rng = seeded(seed)
    G, sigma = random_groupoid(rng, max_arrows=20)
    f, g, h = (random_element(G, sigma, rng) for _ in range(3))
    assert involute(involute(f)) == f
    assert involute(convolve(f, g)) == convolve(involute(g), involute(f))
    assert convolve(convolve(f, g), h) == convolve(f, convolve(g, h))


# ---------------------------------------------------------------- closed-form norms

def test_all_ones_on_pair_two():
    f = ones(pair_groupoid(2))
    assert (norm_sup(f), norm_dstar(f), norm_rstar(f), norm_I(f)) == (1, 2, 2, 2)


def test_point_mass_norms_are_one():
    G = pair_groupoid(3)
    for a in range(len(G)):
        f = AlgElement.delta(G, None, a)
        assert (norm_sup(f), norm_dstar(f), norm_rstar(f), norm_I(f)) == (1, 1, 1, 1)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_norm_relations(seed):
    rng = seeded(seed)
    G, sigma = random_groupoid(rng, max_arrows=24)
    f, g = random_element(G, sigma, rng), random_element(G, sigma, rng)
    assert norm_dstar(involute(f)) == norm_rstar(f)
    assert norm_sup(f) <= min(norm_dstar(f), norm_rstar(f))
    assert norm_I(f) == max(norm_dstar(f), norm_rstar(f))
    fg = convolve(f, g)
    for nm in (norm_dstar, norm_rstar, norm_I):
        assert nm(fg) <= nm(f) * nm(g)


# ---------------------------------------------------------------- projective norm

def test_projective_singletons_all_ones():
    G = pair_groupoid(2)
    val, pieces = norm_projective(ones(G), [{a} for a in range(4)])
    assert val == 4


def test_projective_diagonals_all_ones():
    G = pair_groupoid(2)
    diag = {G.index((0, 0)), G.index((1, 1))}
    anti = {G.index((0, 1)), G.index((1, 0))}
    val, pieces = norm_projective(ones(G), [diag, anti])
    assert val == 2
    recon = [Fraction(0)] * 4
    for piece in pieces:
        for a, v in piece.items():
            recon[a] += v
    assert recon == [1, 1, 1, 1]


def test_projective_point_mass():
    G = pair_groupoid(3)
    S = bisection_semigroup_all(G)
    for a in range(len(G)):
        val, _ = norm_projective(AlgElement.delta(G, None, a, Fraction(-3, 2)), S.elements)
        assert val == Fraction(3, 2)


def test_projective_uncovered_support():
    G = pair_groupoid(2)
    with pytest.raises(ValueError, match="cover"):
        norm_projective(ones(G), [{0}])


def test_projective_complex_unsupported():
    G = pair_groupoid(2)
    f = AlgElement.delta(G, None, 0, QComplex(0, 1))
    with pytest.raises(ValueError):
        norm_projective(f, [{0}])


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_projective_dominates_and_is_monotone(seed):
    rng = seeded(seed)
    G, _ = random_groupoid(rng, max_arrows=9, twisted=False)
    f = random_element(G, None, rng)
    small = bisection_semigroup(G, [{a} for a in range(len(G))]).elements
    big = bisection_semigroup_all(G).elements
    p_small, _ = norm_projective(f, small)
    p_big, _ = norm_projective(f, big)
    assert norm_I(f) <= p_big <= p_small
    assert p_small == sum(abs(v) for v in f.coeffs)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_projective_equals_sup_on_one_bisection(seed):
    rng = seeded(seed)
    G, _ = random_groupoid(rng, max_arrows=9, twisted=False)
    S = bisection_semigroup_all(G)
    U = S.elements[int(rng.integers(len(S)))]
    f = AlgElement(G, None, [Fraction(int(rng.integers(-5, 6))) if a in U else Fraction(0)
                             for a in range(len(G))])
    assert norm_projective(f, S.elements)[0] == norm_sup(f)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_projective_matches_vertex_enumeration(seed):
    rng = seeded(seed)
    G, _ = random_groupoid(rng, max_arrows=12, twisted=False)
    S = list(bisection_semigroup_all(G).elements)
    k = int(rng.integers(1, min(4, len(S)) + 1))
    chosen = [S[i] for i in rng.choice(len(S), size=k, replace=False)]
    covered = sorted(set().union(*chosen))
    if not covered:
        return
    supp = [covered[i] for i in rng.choice(len(covered), size=min(4, len(covered)), replace=False)]
    c = [Fraction(0)] * len(G)
    for a in supp:
        c[a] = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 3)))
    f = AlgElement(G, None, c)
    assert norm_projective(f, chosen)[0] == projective_norm_oracle(c, chosen)


# ---------------------------------------------------------------- opposite algebra

def test_opposite_is_transpose_on_matrices():
    G = pair_groupoid(3)
    rng = seeded(0)
    f = random_element(G, None, rng)
    fo = opposite_element(f)
    for (i, j) in G.labels:
        assert fo[G.index((i, j))] == f[G.index((j, i))]


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_opposite_laws(seed):
    rng = seeded(seed)
    G, sigma = random_groupoid(rng, max_arrows=20)
    f, g = random_element(G, sigma, rng), random_element(G, sigma, rng)
    assert validate_cocycle(G, opposite_cocycle(sigma))
    fo, go = opposite_element(f), opposite_element(g)
    assert opposite_element(fo) == f
    assert norm_dstar(fo) == norm_rstar(f) and norm_rstar(fo) == norm_dstar(f)
    assert opposite_element(convolve(f, g)) == convolve(go, fo)


def test_projective_brute_oracle_self_check():
    # the oracle on the diagonal example
    G = pair_groupoid(2)
    diag = frozenset({G.index((0, 0)), G.index((1, 1))})
    anti = frozenset({G.index((0, 1)), G.index((1, 0))})
    assert projective_norm_oracle([1, 1, 1, 1], [diag, anti]) == 2
    assert projective_norm_oracle([1, 1, 1, 1], [frozenset({a}) for a in range(4)]) == 4
