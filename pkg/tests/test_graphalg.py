from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from groupoidlp.exactnum import INF, mat_equal, zeros
from groupoidlp.galg import Cocycle, convolve, involute
from groupoidlp.graphalg import (ZERO_PAIR, Graph, GraphError, LPAElement, QFamily, boundary_paths, classify,
                                 cylinder_bisection, evaluate_q_family, graph_groupoid, idempotent_semilattice,
                                 lpa_equal, lpa_is_zero, lpa_normalize, lpa_to_groupoid, q_family_semilattice_rep,
                                 q_family_validate, shift, spatial_q_family, sq_mul, sq_semigroup, sq_star,
                                 tight_character_pairing, verify_webster, webster_family)
from groupoidlp.groupoid import pair_groupoid
from groupoidlp.invsemi import validate_inverse_semigroup
from groupoidlp.reps import is_tight_rep
from groupoidlp.twist import groupoid_iso_check

from helpers import random_acyclic_graph, seeded
from oracles import brute_boundary, brute_tight


def two_edges(convention="standard"):
    return Graph(["u", "w"], {"e": ("u", "w"), "f": ("u", "w")}, convention)


def chain():
    return Graph(["a", "b", "c", "d"],
                 {"e1": ("a", "b"), "e2": ("a", "c"), "e3": ("b", "d"), "e4": ("b", "d")})


def monomial(Q, mu, nu, c=1):
    return LPAElement.monomial(Q, mu, nu, Fraction(c))


def random_lpa(Q, rng, terms=3):
    pairs = [(mu, nu) for mu in Q.paths() for nu in Q.paths() if Q.path_s(mu) == Q.path_s(nu)]
    x = LPAElement(Q)
    for _ in range(terms):
        mu, nu = pairs[int(rng.integers(len(pairs)))]
        x = x + monomial(Q, mu, nu, int(rng.integers(-3, 4)))
    return x


# ---------------------------------------------------------------- graphs

def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(["u"], {"e": ("u", "x")})
    with pytest.raises(GraphError):
        Graph(["u", "e"], {"e": ("u", "u")})
    with pytest.raises(GraphError):
        Graph(["u"], {}, convention="loose")


def test_classification_two_edges():
    assert classify(two_edges()) == {"u": "regular", "w": "source"}
    assert classify(two_edges("strict")) == {"u": "regular", "w": "source"}


def test_single_edge_conventions_differ():
    Q = Graph(["a", "b"], {"e": ("a", "b")})
    assert classify(Q)["a"] == "regular"
    strict = Graph(["a", "b"], {"e": ("a", "b")}, "strict")
    assert classify(strict)["a"] == "singular"


def test_paths_and_cycles():
    Q = chain()
    assert Q.is_acyclic()
    assert len(Q.paths()) == 4 + 4 + 2
    loop = Graph(["v"], {"l": ("v", "v")})
    assert not loop.is_acyclic()
    with pytest.raises(GraphError):
        loop.paths()
    assert loop.paths(max_length=2) == [("v",), ("l",), ("l", "l")]


def test_path_operations():
    Q = chain()
    assert Q.concat(("e1",), ("e3",)) == ("e1", "e3")
    assert Q.concat(("a",), ("e1",)) == ("e1",)
    assert Q.strip(("e1", "e3"), ("e1",)) == ("e3",)
    assert Q.strip(("e1",), ("e1",)) == ("b",)
    assert Q.strip(("e2",), ("e1",)) is None
    with pytest.raises(GraphError):
        Q.concat(("e2",), ("e3",))


# ---------------------------------------------------------------- S_Q

def test_sq_products():
    Q = two_edges()
    te, tf, pw = ((("e",), ("w",))), ((("f",), ("w",))), ((("w",), ("w",)))
    assert sq_mul(Q, sq_star(te), te) == pw
    assert sq_mul(Q, sq_star(te), tf) is ZERO_PAIR
    assert sq_mul(Q, te, sq_star(te)) == (("e",), ("e",))


@pytest.mark.parametrize("Q", [two_edges(), chain()])
def test_sq_is_inverse_semigroup(Q):
    S = sq_semigroup(Q)
    validate_inverse_semigroup(S.table, S.star_table)


# ---------------------------------------------------------------- boundary and groupoid

def test_two_edges_boundary_and_groupoid():
    Q = two_edges()
    assert set(boundary_paths(Q)) == {("w",), ("e",), ("f",)}
    assert shift(Q, ("e",)) == ("w",) and shift(Q, ("w",)) is None
    G, X = graph_groupoid(Q)
    assert len(G) == 9
    P = pair_groupoid(3)
    assert groupoid_iso_check(G, Cocycle(G), P, Cocycle(P))["iso"]


def test_cylinder_bisection():
    Q = two_edges()
    G, X = graph_groupoid(Q)
    Z = cylinder_bisection(Q, G, ("e",), ("w",))
    assert {G.labels[a] for a in Z} == {(("e",), 1, ("w",))}
    Zu = cylinder_bisection(Q, G, ("u",), ("u",))
    assert {G.labels[a] for a in Zu} == {(("e",), 0, ("e",)), (("f",), 0, ("f",))}


@pytest.mark.parametrize("Q", [two_edges(), chain()])
def test_tight_pairing_on_examples(Q):
    E, pairs, ok = tight_character_pairing(Q)
    assert ok
    tight = brute_tight(len(E), E.table, E.zero)
    assert set(tight) == set(pairs.values())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_boundary_and_tight_spectrum_random(seed):
    Q = random_acyclic_graph(seeded(seed))
    X = boundary_paths(Q)
    assert sorted(X) == sorted(brute_boundary(Q.vertices, Q.edges))
    E, pairs, ok = tight_character_pairing(Q)
    assert ok and len(E.tight_characters()) == len(X)
    if len(E) <= 12:
        assert set(brute_tight(len(E), E.table, E.zero)) == set(pairs.values())


# ---------------------------------------------------------------- Leavitt path algebra

def test_ck_relations_in_normal_form():
    Q = two_edges()
    pu = monomial(Q, ("u",), ("u",))
    assert lpa_equal(pu, monomial(Q, ("e",), ("e",)) + monomial(Q, ("f",), ("f",)))
    te = monomial(Q, ("e",), ("w",))
    tf = monomial(Q, ("f",), ("w",))
    assert lpa_equal(te.star() * te, monomial(Q, ("w",), ("w",)))
    assert lpa_is_zero(te.star() * tf)
    assert not lpa_is_zero(te)


def test_normal_form_is_canonical():
    Q = two_edges()
    x = monomial(Q, ("u",), ("u",), 2) - monomial(Q, ("e",), ("e",))
    y = monomial(Q, ("e",), ("e",)) + monomial(Q, ("f",), ("f",), 2)
    assert lpa_normalize(x) == lpa_normalize(y)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lpa_to_groupoid_is_a_homomorphism(seed):
    rng = seeded(seed)
    Q = random_acyclic_graph(rng, max_vertices=5, max_edges=6)
    G, X = graph_groupoid(Q)
    x, y = random_lpa(Q, rng), random_lpa(Q, rng)
    fx, fy = lpa_to_groupoid(x, G), lpa_to_groupoid(y, G)
    assert lpa_to_groupoid(x * y, G) == convolve(fx, fy)
    assert lpa_to_groupoid(x.star(), G) == involute(fx)
    # the map is injective, so zero in normal form is zero in the groupoid
    assert lpa_is_zero(x - y) == (fx == fy)


# ---------------------------------------------------------------- Q-families

@pytest.mark.parametrize("p", [1, 2, 3, INF])
def test_spatial_family_two_edges(p):
    fam = spatial_q_family(two_edges(), p)
    rep = q_family_validate(fam, "real" if p != 2 else "complex")
    assert all(ok for ok, _ in rep.values()), rep


def test_spatial_family_chain():
    fam = spatial_q_family(chain(), 3)
    rep = q_family_validate(fam)
    assert all(ok for ok, _ in rep.values()), rep


def test_webster_family_u_e():
    Q = two_edges()
    fam = spatial_q_family(Q, 2)
    F = [("u",), ("e",)]
    W = webster_family(fam, F)
    assert mat_equal(W[("u",)], fam.range_projection(("f",)))
    assert mat_equal(W[("e",)], fam.range_projection(("e",)))
    assert verify_webster(fam, F, W)[0]


def test_broken_family_detected():
    Q = two_edges()
    fam = spatial_q_family(Q, 1)
    T = dict(fam.T)
    T["f"] = zeros(fam.space.dim)
    broken = QFamily(Q, fam.space, fam.P, T, fam.Tstar)
    rep = q_family_validate(broken)
    assert not rep["CK1"][0] and not rep["CK2"][0]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2, INF]))
def test_spatial_families_random(seed, p):
    rng = seeded(seed)
    Q = random_acyclic_graph(rng, max_vertices=5, max_edges=6)
    fam = spatial_q_family(Q, p)
    rep = q_family_validate(fam, max_family_paths=8)
    assert all(ok for ok, _ in rep.values()), rep
    E, v = q_family_semilattice_rep(fam)
    assert is_tight_rep(E, v)[0]
    x, y = random_lpa(Q, rng), random_lpa(Q, rng)
    assert mat_equal(evaluate_q_family(x * y, fam),
                     evaluate_q_family(x, fam).dot(evaluate_q_family(y, fam)))
    if lpa_equal(x, y):
        assert mat_equal(evaluate_q_family(x, fam), evaluate_q_family(y, fam))


def test_idempotent_semilattice_shape():
    E = idempotent_semilattice(two_edges())
    assert len(E) == 1 + len(two_edges().paths())
