"""Directed graphs, their inverse semigroups and Leavitt path algebras.

Edges e have a range r(e) and a source s(e).  A path mu = e1 e2 ... en has
s(e_i) = r(e_(i+1)); it is stored as a tuple of edge names, and a vertex v
is the length-zero path (v,).  Vertex and edge names must be distinct.

A vertex is regular when 0 < |r^-1(v)| < infinity ("standard" convention);
the "strict" convention requires |r^-1(v)| > 1 instead, and is kept only
for comparison.
"""

import itertools
from fractions import Fraction

import numpy as np

from .exactnum import INF, WeightedSpace, exact_matmul, eye, is_exact_matrix, is_zero_matrix, mat_equal, to_numeric, zeros
from .galg import ONE, ZERO, AlgElement
from .groupoid import deaconu_renault
from .reps import jointly_contractive_check, make_spi, multiplication_operator, spi_matrix, spi_star
from .semilattice import FiniteSemilattice


class GraphError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else "%s (witness %r)" % (msg, witness))
        self.witness = witness


class Graph:
    def __init__(self, vertices, edges, convention="standard"):
        """edges: dict name -> (range vertex, source vertex)."""
        self.vertices = tuple(vertices)
        self.edges = dict(edges)
        vs = set(self.vertices)
        if vs & set(self.edges):
            raise GraphError("vertex and edge names overlap", sorted(vs & set(self.edges))[0])
        for e, (r, s) in self.edges.items():
            if r not in vs or s not in vs:
                raise GraphError("edge endpoint is not a vertex", e)
        if convention not in ("standard", "strict"):
            raise GraphError("unknown regularity convention", convention)
        self.convention = convention
        self.edge_list = tuple(sorted(self.edges))

    def r(self, e):
        return self.edges[e][0]

    def s(self, e):
        return self.edges[e][1]

    def receives(self, v):
        """r^-1(v): edges with range v."""
        return [e for e in self.edge_list if self.edges[e][0] == v]

    def is_regular(self, v):
        k = len(self.receives(v))
        return k > 1 if self.convention == "strict" else k > 0

    def regular_vertices(self):
        return [v for v in self.vertices if self.is_regular(v)]

    def singular_vertices(self):
        return [v for v in self.vertices if not self.is_regular(v)]

    def is_vertex(self, name):
        return name in self.vertices

    # ---- paths

    def path_r(self, mu):
        return mu[0] if self.is_vertex(mu[0]) else self.r(mu[0])

    def path_s(self, mu):
        return mu[-1] if self.is_vertex(mu[-1]) else self.s(mu[-1])

    def length(self, mu):
        return 0 if self.is_vertex(mu[0]) else len(mu)

    def concat(self, mu, nu):
        if self.path_s(mu) != self.path_r(nu):
            raise GraphError("paths do not compose", (mu, nu))
        if self.is_vertex(mu[0]):
            return nu
        if self.is_vertex(nu[0]):
            return mu
        return mu + nu

    def strip(self, mu, prefix):
        """The path nu with mu = prefix nu, or None."""
        if self.is_vertex(prefix[0]):
            return mu if self.path_r(mu) == prefix[0] else None
        if self.is_vertex(mu[0]) or len(mu) < len(prefix) or mu[:len(prefix)] != prefix:
            return None
        rest = mu[len(prefix):]
        return rest if rest else (self.path_s(prefix),)

    def extends(self, mu, prefix):
        return self.strip(mu, prefix) is not None

    def is_acyclic(self):
        state = {}

        def visit(v):
            state[v] = 1
            for e in self.receives(v):
                w = self.s(e)
                if state.get(w) == 1:
                    return False
                if w not in state and not visit(w):
                    return False
            state[v] = 2
            return True

        return all(visit(v) for v in self.vertices if v not in state)

    def paths(self, max_length=None):
        """All finite paths (vertices first), up to ``max_length`` when the
        graph has cycles."""
        if max_length is None and not self.is_acyclic():
            raise GraphError("graph has a cycle; give max_length")
        out = [(v,) for v in self.vertices]
        frontier = [(e,) for e in self.edge_list]
        k = 1
        while frontier and (max_length is None or k <= max_length):
            out += frontier
            nxt = []
            for mu in frontier:
                for e in self.receives(self.path_s(mu)):
                    nxt.append(mu + (e,))
            frontier = nxt
            k += 1
        return out


def classify(Q):
    return {v: ("regular" if Q.is_regular(v) else
                ("source" if not Q.receives(v) else "singular")) for v in Q.vertices}


# ---------------------------------------------------------------- S_Q

ZERO_PAIR = None


def sq_elements(Q, max_length=None):
    """Pairs (mu, nu) with s(mu) = s(nu), plus the zero (None)."""
    P = Q.paths(max_length)
    out = [ZERO_PAIR]
    for mu in P:
        for nu in P:
            if Q.path_s(mu) == Q.path_s(nu):
                out.append((mu, nu))
    return out


def sq_mul(Q, x, y):
    """(mu,nu)(alpha,beta) = (mu alpha', beta) if alpha = nu alpha',
    (mu, beta nu') if nu = alpha nu', and 0 otherwise."""
    if x is ZERO_PAIR or y is ZERO_PAIR:
        return ZERO_PAIR
    (mu, nu), (alpha, beta) = x, y
    rest = Q.strip(alpha, nu)
    if rest is not None:
        return (Q.concat(mu, rest), beta)
    rest = Q.strip(nu, alpha)
    if rest is not None:
        return (mu, Q.concat(beta, rest))
    return ZERO_PAIR


def sq_star(x):
    if x is ZERO_PAIR:
        return ZERO_PAIR
    return (x[1], x[0])


def sq_semigroup(Q, max_length=None):
    """S_Q as an ISemigroup (finite graphs without cycles, or truncated)."""
    from .invsemi import ISemigroup
    els = sq_elements(Q, max_length)
    idx = {x: i for i, x in enumerate(els)}
    table = [[idx[sq_mul(Q, a, b)] for b in els] for a in els]
    star = [idx[sq_star(a)] for a in els]
    return ISemigroup(els, table, star, idx[ZERO_PAIR])


def idempotent_semilattice(Q):
    """E(S_Q) = {(mu, mu)} u {0}, built directly from paths (acyclic Q)."""
    P = Q.paths()
    els = [ZERO_PAIR] + [(mu, mu) for mu in P]
    idx = {x: i for i, x in enumerate(els)}
    table = [[idx[sq_mul(Q, a, b)] for b in els] for a in els]
    return FiniteSemilattice(els, table, 0)


# ---------------------------------------------------------------- boundary path space

def boundary_paths(Q):
    """Paths whose source is singular (the finite part of the boundary
    path space; for acyclic finite graphs this is all of it)."""
    if not Q.is_acyclic():
        raise GraphError("boundary path space is enumerated for acyclic graphs only")
    sing = set(Q.singular_vertices())
    return [mu for mu in Q.paths() if Q.path_s(mu) in sing]


def shift(Q, mu):
    """Drop the first edge; an edge shifts to its source vertex; vertices
    are outside the domain (returns None)."""
    if Q.is_vertex(mu[0]):
        return None
    if len(mu) == 1:
        return (Q.s(mu[0]),)
    return mu[1:]


def graph_groupoid(Q):
    """Deaconu-Renault groupoid of the shift on the boundary paths."""
    X = boundary_paths(Q)
    phi = {}
    for mu in X:
        sm = shift(Q, mu)
        if sm is not None:
            phi[mu] = sm
    return deaconu_renault(X, phi), X


def cylinder_bisection(Q, G, mu, nu):
    """Z(mu, nu) = {(mu x, |mu| - |nu|, nu x) : x in boundary, r(x) = s(mu)}."""
    if Q.path_s(mu) != Q.path_s(nu):
        raise GraphError("pair has different sources", (mu, nu))
    k = Q.length(mu) - Q.length(nu)
    X = set(y for (y, _, _) in G.labels)
    out = set()
    for x in X:
        if Q.path_r(x) == Q.path_s(mu):
            out.add(G.index((Q.concat(mu, x), k, Q.concat(nu, x))))
    return frozenset(out)


def tight_character_pairing(Q):
    """Tight characters of E(S_Q) paired with boundary paths.

    Returns (pairs, ok) where pairs maps each boundary path x to the index
    of the tight character phi_x(mu, mu) = [x extends mu], and ok says the
    pairing is a bijection onto the tight characters.
    """
    E = idempotent_semilattice(Q)
    tight = set(E.tight_characters())
    pairs = {}
    for x in boundary_paths(Q):
        phi = frozenset(i for i, el in enumerate(E.elements)
                        if el is not ZERO_PAIR and Q.extends(x, el[0]))
        pairs[x] = phi
    ok = set(pairs.values()) == tight and len(set(pairs.values())) == len(pairs)
    return E, pairs, ok


# ---------------------------------------------------------------- Leavitt path algebra

class LPAElement:
    """Linear combination of monomials t_mu t_nu^*, as a dict (mu, nu) -> coefficient."""

    def __init__(self, Q, terms=None):
        self.Q = Q
        self.terms = {}
        for k, v in (terms or {}).items():
            if v != 0:
                if Q.path_s(k[0]) != Q.path_s(k[1]):
                    raise GraphError("monomial with different sources", k)
                self.terms[k] = self.terms.get(k, ZERO) + v

    @classmethod
    def monomial(cls, Q, mu, nu, c=ONE):
        return cls(Q, {(tuple(mu), tuple(nu)): c})

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, ZERO) + v
        return LPAElement(self.Q, {k: v for k, v in t.items() if v != 0})

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c):
        return LPAElement(self.Q, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LPAElement):
            return self.scale(other)
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                m = sq_mul(self.Q, k1, k2)
                if m is not ZERO_PAIR:
                    out[m] = out.get(m, ZERO) + v1 * v2
        return LPAElement(self.Q, {k: v for k, v in out.items() if v != 0})

    def star(self):
        from .exactnum import conj
        return LPAElement(self.Q, {(nu, mu): conj(v) for (mu, nu), v in self.terms.items()})

    def __repr__(self):
        return "LPAElement(%r)" % (self.terms,)


def _children(Q, key):
    mu, nu = key
    v = Q.path_s(mu)
    if not Q.is_regular(v):
        return []
    return [(Q.concat(mu, (e,)), Q.concat(nu, (e,))) for e in Q.receives(v)]


def _parent(Q, key):
    mu, nu = key
    if Q.is_vertex(mu[0]) or Q.is_vertex(nu[0]) or mu[-1] != nu[-1]:
        return None
    e = mu[-1]
    pm = mu[:-1] or (Q.r(e),)
    pn = nu[:-1] or (Q.r(e),)
    return (pm, pn)


def _is_descendant(Q, a, b):
    """a = (b0 g, b1 g) for a path g of positive length."""
    g0 = Q.strip(a[0], b[0])
    g1 = Q.strip(a[1], b[1])
    return g0 is not None and g0 == g1 and not Q.is_vertex(g0[0])


def lpa_normalize(x):
    """Canonical form: refine terms along the relation
    t_mu t_nu^* = sum over e in r^-1(s(mu)) of t_mue t_nue^*  (s(mu) regular)
    until no term refines another, merge, then coarsen complete families of
    siblings carrying equal coefficients.  Two elements are equal in the
    algebra exactly when their normal forms agree."""
    Q = x.Q
    terms = {k: v for k, v in x.terms.items() if v != 0}
    changed = True
    while changed:
        changed = False
        keys = list(terms)
        for a in keys:
            for b in keys:
                if a != b and _is_descendant(Q, a, b):
                    kids = _children(Q, b)
                    if not kids:
                        raise GraphError("cannot refine at a singular vertex", b)
                    c = terms.pop(b)
                    for k in kids:
                        terms[k] = terms.get(k, ZERO) + c
                    changed = True
                    break
            if changed:
                break
    terms = {k: v for k, v in terms.items() if v != 0}
    changed = True
    while changed:
        changed = False
        parents = {}
        for k in terms:
            p = _parent(Q, k)
            if p is not None and Q.is_regular(Q.path_s(p[0])):
                parents.setdefault(p, []).append(k)
        for p, kids in sorted(parents.items(), key=repr):
            full = _children(Q, p)
            vals = {terms[k] for k in kids}
            if len(kids) == len(full) and set(kids) == set(full) and len(vals) == 1:
                c = vals.pop()
                for k in kids:
                    del terms[k]
                terms[p] = c
                changed = True
                break
    return tuple(sorted(terms.items(), key=repr))


def lpa_is_zero(x):
    return lpa_normalize(x) == ()


def lpa_equal(x, y):
    return lpa_normalize(x - y) == ()


def lpa_to_groupoid(x, G):
    """Image in the graph groupoid algebra: t_mu t_nu^* -> 1_Z(mu,nu)."""
    Q = x.Q
    coeffs = [ZERO] * len(G)
    for (mu, nu), c in x.terms.items():
        for a in cylinder_bisection(Q, G, mu, nu):
            coeffs[a] = coeffs[a] + c
    return AlgElement(G, None, coeffs)


# ---------------------------------------------------------------- Q-families

class QFamily:
    """Matrices P[v] for vertices and T[e], Tstar[e] for edges on a
    weighted space.

    Path products are cached, so the generator matrices should not be
    modified after construction.
    """

    def __init__(self, Q, space, P, T, Tstar):
        self.Q = Q
        self.space = space
        self.P = dict(P)
        self.T = dict(T)
        self.Tstar = dict(Tstar)
        self.exact = all(is_exact_matrix(M) for M in
                         list(self.P.values()) + list(self.T.values()) + list(self.Tstar.values()))
        self._cache = {}

    def _mm(self, A, B):
        if is_exact_matrix(A) and is_exact_matrix(B):
            return exact_matmul(A, B)
        return to_numeric(A) @ to_numeric(B)

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def path(self, mu):
        if self.Q.is_vertex(mu[0]):
            return self.P[mu[0]]
        if len(mu) == 1:
            return self.T[mu[0]]
        return self._cached(("T", mu), lambda: self._mm(self.path(mu[:-1]), self.T[mu[-1]]))

    def path_star(self, mu):
        if self.Q.is_vertex(mu[0]):
            return self.P[mu[0]]
        if len(mu) == 1:
            return self.Tstar[mu[0]]
        return self._cached(("T*", mu), lambda: self._mm(self.Tstar[mu[-1]], self.path_star(mu[:-1])))

    def range_projection(self, mu):
        return self._cached(("TT*", mu), lambda: self._mm(self.path(mu), self.path_star(mu)))


def evaluate_q_family(x, fam):
    n = fam.space.dim
    exact = all(is_exact_matrix(M) for M in list(fam.P.values()) + list(fam.T.values()))
    out = zeros(n) if exact else np.zeros((n, n), dtype=complex)
    for (mu, nu), c in x.terms.items():
        M = fam._mm(fam.path(mu), fam.path_star(nu))
        out = out + (M * c if exact else M * complex(c))
    return out


def webster_family(fam, F):
    """P^F_mu = product over mu mu' in F, mu' of positive length, of
    (T_mu T_mu^* - T_mumu' T_mumu'^*), for mu in F."""
    Q = fam.Q
    F = list(F)
    out = {}
    for mu in F:
        M = fam.range_projection(mu)
        acc = M
        for nu in F:
            if nu != mu and Q.extends(nu, mu) and Q.length(nu) > Q.length(mu):
                acc = fam._mm(acc, M - fam.range_projection(nu))
        out[mu] = acc
    return out


def verify_webster(fam, F, W=None):
    """Mutual orthogonality and T_mu T_mu^* = sum of P^F_nu over nu in F
    extending mu.  Returns (ok, witness)."""
    Q = fam.Q
    W = W if W is not None else webster_family(fam, F)
    F = list(F)
    exact = all(is_exact_matrix(M) for M in W.values())
    tol = 0 if exact else 1e-9
    for a, b in itertools.combinations(F, 2):
        if not is_zero_matrix(fam._mm(W[a], W[b]), tol):
            return False, ("not orthogonal", a, b)
    for mu in F:
        total = None
        for nu in F:
            if Q.extends(nu, mu):
                total = W[nu] if total is None else total + W[nu]
        if not mat_equal(total, fam.range_projection(mu), tol):
            return False, ("reconstruction fails", mu)
    return True, None


def q_family_validate(fam, mode="real", max_family_paths=12, tol=1e-9):
    """Relations of a Banach Q-family.  Returns dict name -> (ok, witness).

    CK1: T_e^* T_e = P_s(e) and T_e T_e^* <= P_r(e); CK2 at regular
    vertices; P_v mutually orthogonal idempotents; T_e^* a generalised
    inverse of T_e; each operator contractive; Webster families jointly
    contractive for every set F of paths of length at most 2 (all subsets
    when there are at most ``max_family_paths`` such paths, else subsets of
    size at most 4).
    """
    from .exactnum import weighted_opnorm
    Q, sp = fam.Q, fam.space
    exact = all(is_exact_matrix(M) for M in
                list(fam.P.values()) + list(fam.T.values()) + list(fam.Tstar.values()))
    t = 0 if exact else tol
    mm = fam._mm
    rep = {}
    bad = None
    vs = list(Q.vertices)
    for v in vs:
        if not mat_equal(mm(fam.P[v], fam.P[v]), fam.P[v], t):
            bad = ("P_v not idempotent", v)
    for a, b in itertools.combinations(vs, 2):
        if not is_zero_matrix(mm(fam.P[a], fam.P[b]), t):
            bad = ("P_v not orthogonal", a, b)
    rep["projections"] = (bad is None, bad)
    bad = None
    for e in Q.edge_list:
        T, Ts = fam.T[e], fam.Tstar[e]
        if not mat_equal(mm(Ts, T), fam.P[Q.s(e)], t):
            bad = ("T_e^* T_e != P_s(e)", e)
        R = mm(T, Ts)
        if not mat_equal(mm(fam.P[Q.r(e)], R), R, t) or not mat_equal(mm(R, fam.P[Q.r(e)]), R, t):
            bad = ("T_e T_e^* not below P_r(e)", e)
    rep["CK1"] = (bad is None, bad)
    bad = None
    for v in Q.regular_vertices():
        total = None
        for e in Q.receives(v):
            R = mm(fam.T[e], fam.Tstar[e])
            total = R if total is None else total + R
        if not mat_equal(total, fam.P[v], t):
            bad = v
    rep["CK2"] = (bad is None, bad)
    bad = None
    for e in Q.edge_list:
        T, Ts = fam.T[e], fam.Tstar[e]
        if not mat_equal(mm(mm(T, Ts), T), T, t) or not mat_equal(mm(mm(Ts, T), Ts), Ts, t):
            bad = e
    rep["generalised_inverse"] = (bad is None, bad)
    bad = None
    ops = [("P", v, fam.P[v]) for v in vs] + [("T", e, fam.T[e]) for e in Q.edge_list] + \
          [("T*", e, fam.Tstar[e]) for e in Q.edge_list]
    for kind, name, M in ops:
        if float(weighted_opnorm(M, sp)) > 1 + tol:
            bad = (kind, name)
    rep["contractive"] = (bad is None, bad)
    bad = None
    short = [mu for mu in Q.paths(max_length=2) if Q.length(mu) <= 2]
    if len(short) <= max_family_paths:
        families = [F for k in range(1, len(short) + 1) for F in itertools.combinations(short, k)]
    else:
        families = [F for k in range(1, 5) for F in itertools.combinations(short, k)]
    for F in families:
        W = webster_family(fam, F)
        ok, wit = verify_webster(fam, F, W)
        if not ok:
            bad = (F, wit)
            break
        verdict = jointly_contractive_check([W[mu] for mu in F], sp, mode)
        if not verdict.passed():
            bad = (F, verdict.status, verdict.worst)
            break
    rep["webster"] = (bad is None, bad)
    return rep


def spatial_q_family(Q, p):
    """Spatial Q-family on l^p of the boundary paths with counting measure:
    P_v multiplies by the indicator of Z(v), T_e sends the point x in Z(s(e))
    to e x."""
    X = boundary_paths(Q)
    space = WeightedSpace.counting(X, p)
    P = {v: multiplication_operator(space, {x: ONE for x in X if Q.path_r(x) == v})
         for v in Q.vertices}
    T, Ts = {}, {}
    for e in Q.edge_list:
        pm = {x: Q.concat((e,), x) for x in X if Q.path_r(x) == Q.s(e)}
        s = make_spi(space, pm)
        T[e] = spi_matrix(s)
        Ts[e] = spi_matrix(spi_star(s))
    return QFamily(Q, space, P, T, Ts)


def q_family_semilattice_rep(fam):
    """E(S_Q) -> matrices, (mu, mu) -> T_mu T_mu^*, 0 -> 0."""
    E = idempotent_semilattice(fam.Q)
    n = fam.space.dim
    v = {}
    for i, el in enumerate(E.elements):
        v[i] = zeros(n) if el is ZERO_PAIR else fam.range_projection(el[0])
    return E, v


webster_idempotents = webster_family
classify_graph = classify
