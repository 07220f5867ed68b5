"""Random test data: twisted groupoids, algebra elements, graphs."""

import itertools
from fractions import Fraction

import numpy as np

from groupoidlp.galg import AlgElement, Cocycle, coboundary
from groupoidlp.graphalg import Graph
from groupoidlp.groupoid import validate_groupoid
from groupoidlp.invsemi import group_by_name

GROUPS = ["trivial", "Z2", "Z3", "Z2xZ2"]


def transitive_piece(tag, n, H):
    """Arrows (tag, i, j, h): from j to i with isotropy label h."""
    arrows = [(tag, i, j, h) for i in range(n) for j in range(n) for h in range(len(H))]
    return arrows


def random_groupoid(rng, max_arrows=30, twisted=True):
    """Disjoint union of pieces pair(n) x H, optionally twisted by the sign
    cocycle of Z2 pieces and a random sign coboundary.  Returns (G, sigma)."""
    pieces = []
    total = 0
    for tag in range(int(rng.integers(1, 4))):
        H = group_by_name(GROUPS[int(rng.integers(len(GROUPS)))])
        n = int(rng.integers(1, 4))
        size = n * n * len(H)
        if total + size > max_arrows:
            continue
        pieces.append((tag, n, H))
        total += size
    if not pieces:
        pieces = [(0, 1, group_by_name("trivial"))]
    labels, units, r, d, inv, comp = [], [], {}, {}, {}, {}
    groups = {}
    for tag, n, H in pieces:
        groups[tag] = H
        e = H.identity
        for (t, i, j, h) in transitive_piece(tag, n, H):
            a = (t, i, j, h)
            labels.append(a)
            r[a] = (t, i, i, e)
            d[a] = (t, j, j, e)
            inv[a] = (t, j, i, H.inverse[h])
            if i == j and h == e:
                units.append(a)
        for i, j, k in itertools.product(range(n), repeat=3):
            for h1 in range(len(H)):
                for h2 in range(len(H)):
                    comp[((tag, i, j, h1), (tag, j, k, h2))] = (tag, i, k, H.mul(h1, h2))
    G = validate_groupoid(labels, units, r, d, inv, comp)
    if not twisted:
        return G, Cocycle(G)
    vals = {}
    for (a, b) in G.comp:
        ta, tb = G.labels[a], G.labels[b]
        H = groups[ta[0]]
        if len(H) == 2 and ta[3] != H.identity and tb[3] != H.identity:
            vals[(a, b)] = Fraction(-1)
    sign = Cocycle(G, vals) if rng.random() < 0.5 else Cocycle(G)
    b = {a: Fraction(-1) for a in range(len(G)) if not G.is_unit(a) and rng.random() < 0.3}
    cob = coboundary(G, b)
    return G, Cocycle(G, {k: sign(*k) * cob(*k) for k in G.comp})


def random_element(G, sigma, rng, density=0.6, lo=-4, hi=4, den=3, nonneg=False):
    c = []
    for _ in range(len(G)):
        if rng.random() < density:
            v = Fraction(int(rng.integers(0 if nonneg else lo, hi + 1)), int(rng.integers(1, den + 1)))
        else:
            v = Fraction(0)
        c.append(v)
    return AlgElement(G, sigma, c)


def random_acyclic_graph(rng, max_vertices=8, max_edges=12):
    """Edges only go from higher to lower vertex numbers, so no cycles."""
    n = int(rng.integers(1, max_vertices + 1))
    verts = ["v%d" % i for i in range(n)]
    edges = {}
    m = int(rng.integers(0, max_edges + 1)) if n > 1 else 0
    for k in range(m):
        a, b = sorted(rng.choice(n, size=2, replace=False).tolist())
        # range a, source b with a < b
        edges["e%d" % k] = (verts[a], verts[b])
    return Graph(verts, edges)


def seeded(seed):
    return np.random.default_rng(seed)


def exact_inverse(A):
    """Gauss-Jordan inverse of a square matrix of Fractions (list of lists)."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def random_commuting_idempotents(rng, k, n):
    """k commuting idempotent n x n exact matrices: 0/1 diagonals conjugated
    by a random unitriangular change of basis.  Returns (labels -> matrix,
    diagonal supports)."""
    from groupoidlp.exactnum import exact_matmul, exact_matrix
    L = [[Fraction(int(rng.integers(-2, 3))) if j < i else Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    U = [[Fraction(int(rng.integers(-2, 3))) if j > i else Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    B = exact_matmul(exact_matrix(L), exact_matrix(U))
    Bi = exact_matrix(exact_inverse(B.tolist()))
    out, supports = {}, {}
    for e in range(k):
        s = frozenset(i for i in range(n) if rng.random() < 0.5)
        D = exact_matrix([[int(i == j and i in s) for j in range(n)] for i in range(n)])
        out["e%d" % e] = exact_matmul(exact_matmul(B, D), Bi)
        supports["e%d" % e] = s
    return out, supports
