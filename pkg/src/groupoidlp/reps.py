"""Representations on finite l^p spaces.

Covers the left regular representation of a twisted groupoid algebra,
spatial partial isometries, L^p-projections, the inclusion-exclusion
family of a finite set of commuting idempotents, joint contractivity,
tightness of semilattice representations, and covariant representations
of twisted actions together with their integration and disintegration.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactnum import (
    INF, Bracket, WeightedSpace, abs2, as_exponent, conj, eye, is_exact, is_exact_matrix,
    is_unimodular, is_zero_matrix, lp_norm, mat_equal, opnorm_bracket, opnorm_exact,
    real_root, to_numeric, weighted_conjugate, zeros,
)
from .galg import ONE, ZERO, AlgElement, Cocycle


class RepError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else "%s (witness %r)" % (msg, witness))
        self.witness = witness


def _zero_like(n, exact):
    return zeros(n) if exact else np.zeros((n, n), dtype=complex)


# ---------------------------------------------------------------- regular rep

def regular_representation(f):
    """Matrix of g -> f * g on functions on the arrows.

    Entry (c, b) is sigma(cb^-1, b) f(cb^-1) when d(c) = d(b), else 0.  The
    matrix does not depend on p (counting measure on arrows).
    """
    G, sigma = f.G, f.sigma
    n = len(G)
    exact = f.is_exact()
    M = _zero_like(n, exact)
    for a, v in enumerate(f.coeffs):
        if v == 0:
            continue
        for b in G.with_range(G.dom[a]):
            M[G.comp[(a, b)], b] = sigma(a, b) * v
    return M


def regular_norm(f, p, **kw):
    """||Lambda_p(f)||: exact for p in {1, inf}, float for p = 2, otherwise
    a Bracket."""
    p = as_exponent(p)
    M = regular_representation(f)
    if p in (1, INF, 2):
        return opnorm_exact(M, p)
    return opnorm_bracket(M, p, **kw)


def interpolation_bound(f, p):
    """d*(f)^(1/p) r*(f)^(1/q), the Riesz-Thorin bound for Lambda_p(f)."""
    from .galg import norm_dstar, norm_rstar
    p = as_exponent(p)
    ds, rs = float(norm_dstar(f)), float(norm_rstar(f))
    if p == INF:
        return rs
    if p == 1:
        return ds
    pf = float(p)
    return ds ** (1.0 / pf) * rs ** (1.0 - 1.0 / pf)


def unit_space_representation(f):
    """Action of an untwisted groupoid algebra on functions on the units:
    (f.xi)(y) = sum over r(a) = y of f(a) xi(d(a))."""
    if not f.sigma.is_trivial():
        raise RepError("unit-space representation needs the trivial twist")
    G = f.G
    pos = {x: i for i, x in enumerate(G.units)}
    M = _zero_like(len(G.units), f.is_exact())
    for a, v in enumerate(f.coeffs):
        if v != 0:
            M[pos[G.rng[a]], pos[G.dom[a]]] += v
    return M


# ---------------------------------------------------------------- spatial isometries

@dataclass(frozen=True)
class SpatialPartialIsometry:
    """Operator  xi -> omega * (w(phi*(x)) / w(x))^(1/p) * xi(phi*(x))  on the
    range set D, zero elsewhere.

    ``back`` maps each x in D to phi*(x) in D*, and ``phase`` gives the
    unimodular omega(x) on D.
    """

    space: WeightedSpace
    back: dict = field(hash=False)
    phase: dict = field(hash=False)

    @property
    def ran(self):
        return frozenset(self.back)

    @property
    def dom(self):
        return frozenset(self.back.values())


def make_spi(space, point_map, phase=None):
    """Spatial partial isometry carrying D* onto D by ``point_map``
    (a dict D* -> D)."""
    back = {y: x for x, y in point_map.items()}
    if len(back) != len(point_map):
        raise RepError("point map is not injective")
    phase = {x: phase.get(x, ONE) for x in back} if phase else {x: ONE for x in back}
    for x, w in phase.items():
        if not is_unimodular(w):
            raise RepError("phase is not unimodular", x)
    return SpatialPartialIsometry(space, back, phase)


def spi_matrix(s):
    sp = s.space
    n = sp.dim
    exact = all(is_exact(w) for w in s.phase.values())
    factors = {}
    for x, y in s.back.items():
        i, j = sp.index(x), sp.index(y)
        r = real_root(Fraction(sp.weights[j]) / Fraction(sp.weights[i]), sp.p)
        if not isinstance(r, Fraction):
            exact = False
        factors[(i, j)] = s.phase[x] * r
    M = zeros(n) if exact else np.zeros((n, n), dtype=complex)
    for (i, j), v in factors.items():
        M[i, j] = v if exact else complex(v)
    return M


def spi_compose(s, t):
    """s after t: phase omega(x) upsilon(phi*(x)), map phi o psi."""
    back, phase = {}, {}
    for x, y in s.back.items():
        if y in t.back:
            back[x] = t.back[y]
            phase[x] = s.phase[x] * t.phase[y]
    return SpatialPartialIsometry(s.space, back, phase)


def spi_star(s):
    back = {y: x for x, y in s.back.items()}
    phase = {y: conj(s.phase[x]) for x, y in s.back.items()}
    return SpatialPartialIsometry(s.space, back, phase)


def multiplication_operator(space, values):
    """Diagonal matrix of a function on points (dict point -> scalar)."""
    n = space.dim
    exact = all(is_exact(v) for v in values.values())
    M = zeros(n) if exact else np.zeros((n, n), dtype=complex)
    for x, v in values.items():
        M[space.index(x), space.index(x)] = v
    return M


def spi_from_matrix(M, space, tol=1e-12):
    """Recognise a spatial partial isometry: after weighted conjugation the
    matrix must have at most one nonzero per row and column, each
    unimodular.  Returns the SpatialPartialIsometry or None."""
    C = weighted_conjugate(M, space)
    exact = is_exact_matrix(C)
    n = space.dim
    back, phase = {}, {}
    used = set()
    for i in range(n):
        nz = [j for j in range(n) if (C[i, j] != 0 if exact else abs(C[i, j]) > tol)]
        if len(nz) > 1:
            return None
        if nz:
            j = nz[0]
            if j in used or not is_unimodular(C[i, j], 1e-9):
                return None
            used.add(j)
            back[space.points[i]] = space.points[j]
            phase[space.points[i]] = C[i, j]
    return SpatialPartialIsometry(space, back, phase)


# ---------------------------------------------------------------- projections

def _is_idempotent(P, tol):
    if is_exact_matrix(P) and tol == 0:
        return mat_equal(P.dot(P), P)
    A = to_numeric(P)
    return bool(np.max(np.abs(A @ A - A), initial=0.0) <= 1e-9)


def lp_projection_defect(P, space, xi):
    """||xi||^p - ||P xi||^p - ||(1-P) xi||^p (p finite), or
    ||xi|| - max(||P xi||, ||(1-P) xi||) for p = inf, on the weighted space."""
    A = to_numeric(P)
    xi = np.asarray(xi, dtype=complex)
    a, b = A @ xi, xi - A @ xi
    p = space.p
    if p == INF:
        return lp_norm(xi, p) - max(lp_norm(a, p), lp_norm(b, p))
    pf = float(p)
    w = space.weights
    return (lp_norm(xi, p, w) ** pf - lp_norm(a, p, w) ** pf - lp_norm(b, p, w) ** pf)


def lp_projection_structural(P, space):
    """Structural test: the weighted conjugate is a 0/1 diagonal matrix."""
    C = weighted_conjugate(P, space)
    exact = is_exact_matrix(C)
    n = space.dim
    for i in range(n):
        for j in range(n):
            v = C[i, j]
            if i != j:
                if (v != 0) if exact else abs(v) > 1e-12:
                    return False
            elif exact:
                if v not in (0, 1):
                    return False
            elif min(abs(v), abs(v - 1)) > 1e-12:
                return False
    return True


def lp_projection_check(P, space, samples=100, seed=0, tol=1e-9):
    """Both tests for an L^p-projection.

    Returns (verdict, structural, definitional, witness).  The definitional
    test tries every basis vector, the sums of pairs of basis vectors, and
    ``samples`` random vectors.  For p = 2 the verdict is the definitional
    test (orthogonal projections qualify); otherwise it is the structural
    test, and the two are expected to agree.
    """
    if not _is_idempotent(P, 0):
        return False, False, False, None
    n = space.dim
    structural = lp_projection_structural(P, space)
    rng = np.random.default_rng(seed)
    vecs = list(np.eye(n))
    for i in range(n):
        for j in range(i + 1, n):
            v = np.zeros(n)
            v[i], v[j] = 1, 1
            vecs.append(v)
    vecs += list(rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n)))
    witness = None
    for xi in vecs:
        if abs(lp_projection_defect(P, space, xi)) > tol * max(1.0, lp_norm(xi, space.p) ** 2):
            witness = xi
            break
    definitional = witness is None
    verdict = definitional if space.p == 2 else structural
    return verdict, structural, definitional, witness


def is_lp_projection(P, space, samples=100, seed=0):
    return lp_projection_check(P, space, samples, seed)[0]


# ---------------------------------------------------------------- inclusion-exclusion

def _matprod(mats, n, exact):
    out = eye(n) if exact else np.eye(n, dtype=complex)
    for M in mats:
        out = out.dot(M) if exact else out @ to_numeric(M)
    return out


def inclusion_exclusion(v, F):
    """Family P_{F0} = sum over F0 <= G <= F of (-1)^{|G - F0|} v_{meet G}
    for nonempty F0 <= F, with v_{meet G} the product of the v_e, e in G.

    ``v`` maps labels to commuting idempotent matrices.  Returns a dict
    frozenset(F0) -> matrix.
    """
    F = list(F)
    if not F:
        return {}
    mats = [v[e] for e in F]
    n = np.asarray(mats[0]).shape[0]
    exact = all(is_exact_matrix(M) for M in mats)
    for i in range(len(F)):
        for j in range(i + 1, len(F)):
            A, B = mats[i], mats[j]
            AB = A.dot(B) if exact else to_numeric(A) @ to_numeric(B)
            BA = B.dot(A) if exact else to_numeric(B) @ to_numeric(A)
            if not mat_equal(AB, BA, 0 if exact else 1e-9):
                raise RepError("idempotents do not commute", (F[i], F[j]))
    prods = {}
    for k in range(len(F) + 1):
        for Gs in itertools.combinations(range(len(F)), k):
            prods[Gs] = _matprod([mats[i] for i in Gs], n, exact)
    out = {}
    for k in range(1, len(F) + 1):
        for F0 in itertools.combinations(range(len(F)), k):
            rest = [i for i in range(len(F)) if i not in F0]
            acc = zeros(n) if exact else np.zeros((n, n), dtype=complex)
            for m in range(len(rest) + 1):
                for extra in itertools.combinations(rest, m):
                    Gs = tuple(sorted(F0 + extra))
                    term = prods[Gs]
                    acc = acc + term if m % 2 == 0 else acc - term
            out[frozenset(F[i] for i in F0)] = acc
    return out


def verify_inclusion_exclusion(v, F, family=None):
    """Idempotence, mutual orthogonality and v_e = sum_{e in F0} P_{F0}.
    Returns (ok, witness)."""
    family = inclusion_exclusion(v, F) if family is None else family
    items = sorted(family.items(), key=lambda kv: (len(kv[0]), sorted(map(repr, kv[0]))))
    exact = all(is_exact_matrix(M) for _, M in items)
    tol = 0 if exact else 1e-9

    def mul(A, B):
        return A.dot(B) if exact else to_numeric(A) @ to_numeric(B)

    for K, P in items:
        if not mat_equal(mul(P, P), P, tol):
            return False, ("not idempotent", sorted(map(repr, K)))
    for (K1, P1), (K2, P2) in itertools.combinations(items, 2):
        if not is_zero_matrix(mul(P1, P2), tol):
            return False, ("not orthogonal", sorted(map(repr, K1)), sorted(map(repr, K2)))
    for e in F:
        total = None
        for K, P in items:
            if e in K:
                total = P if total is None else total + P
        if not mat_equal(total, v[e], tol):
            return False, ("reconstruction fails", e)
    return True, None


# ---------------------------------------------------------------- joint contractivity

@dataclass
class Verdict:
    status: str
    worst: float
    witness: object = None
    reason: str = ""

    def passed(self):
        return self.status in ("PASS", "APPROX-PASS")


def _stack_norms(stack, p):
    if p == 1:
        return np.abs(stack).sum(axis=1).max(axis=1)
    if p == INF:
        return np.abs(stack).sum(axis=2).max(axis=1)
    return np.linalg.norm(stack, ord=2, axis=(1, 2))


def jointly_contractive_check(P, space, mode="real", tol=1e-9, seed=0, grid=16, samples=10000):
    """Is every combination sum a_i P_i with |a_i| <= 1 a contraction?

    Real mode checks the sign vertices {-1, 1}^F, which suffices by
    convexity.  Complex mode checks a phase grid (first coefficient fixed to
    1, norms being invariant under a global phase) when |F| <= 4, plus
    random phase samples, and reports APPROX-PASS or FAIL.
    """
    p = space.p
    Q = [to_numeric(weighted_conjugate(M, space)).astype(complex) for M in P]
    k = len(Q)
    if k == 0:
        return Verdict("PASS", 0.0, None, "empty family")
    n = Q[0].shape[0]
    # disjoint L^p-projections are jointly contractive
    diag = all(np.allclose(M, np.diag(np.diag(M)), atol=1e-12)
               and np.all(np.minimum(np.abs(np.diag(M)), np.abs(np.diag(M) - 1)) < 1e-12)
               for M in Q)
    if diag:
        supp = [np.abs(np.diag(M)) > 0.5 for M in Q]
        if all(not np.any(a & b) for a, b in itertools.combinations(supp, 2)):
            return Verdict("PASS" if mode == "real" else "APPROX-PASS", 1.0 if k else 0.0,
                           None, "disjoint L^p-projections")
    stackQ = np.stack(Q)
    if mode == "real":
        coeffs = np.array(list(itertools.product([1.0, -1.0], repeat=k)))
    else:
        rng = np.random.default_rng(seed)
        parts = []
        if k <= 4:
            ph = np.exp(2j * np.pi * np.arange(grid) / grid)
            rest = np.array(list(itertools.product(ph, repeat=k - 1))) if k > 1 else np.zeros((1, 0))
            parts.append(np.column_stack([np.ones(len(rest)), rest]))
        m = samples if p in (1, 2, INF) else min(samples, 300)
        parts.append(np.exp(2j * np.pi * rng.random((m, k))))
        coeffs = np.vstack(parts)
    worst, witness, undecided = 0.0, None, False
    chunk = 4096
    for start in range(0, len(coeffs), chunk):
        C = coeffs[start:start + chunk]
        stack = np.einsum("kf,fij->kij", C, stackQ)
        if p in (1, 2, INF):
            norms = _stack_norms(stack, p)
            i = int(np.argmax(norms))
            if norms[i] > worst:
                worst, witness = float(norms[i]), C[i]
        else:
            for c, M in zip(C, stack):
                br = opnorm_bracket(M, p)
                if br.lower > worst:
                    worst, witness = br.lower, c
                if br.upper > 1 + tol and br.lower <= 1 + tol:
                    undecided = True
    if worst > 1 + tol:
        return Verdict("FAIL", worst, witness, "combination with norm above 1")
    if undecided:
        return Verdict("INCONCLUSIVE", worst, witness, "bracket straddles 1")
    return Verdict("PASS" if mode == "real" else "APPROX-PASS", worst, witness, "")


# ---------------------------------------------------------------- tight reps

def check_semilattice_rep(E, v, tol=0.0):
    """v must send meets to products; v maps E-indices to matrices."""
    idx = list(range(len(E)))
    for a in idx:
        for b in idx:
            A, B = v[a], v[b]
            exact = is_exact_matrix(A) and is_exact_matrix(B) and tol == 0
            prod = A.dot(B) if exact else to_numeric(A) @ to_numeric(B)
            if not mat_equal(prod, v[E.meet(a, b)], 0 if exact else max(tol, 1e-9)):
                raise RepError("not multiplicative on meets", (E.elements[a], E.elements[b]))
    return True


def _cover_product(E, v, e, F, exact):
    n = np.asarray(v[e]).shape[0]
    out = eye(n) if exact else np.eye(n, dtype=complex)
    for f in F:
        D = v[e] - v[f]
        out = out.dot(D) if exact else out @ to_numeric(D)
    return out


def is_tight_rep(E, v, tol=0.0):
    """Tightness of a representation of a finite semilattice.

    Uses the atom criterion: v_0 = 0 when there is a zero, and for each
    nonzero e the product of (v_e - v_a) over atoms a <= e vanishes.
    Returns (ok, witness).
    """
    check_semilattice_rep(E, v, tol)
    exact = all(is_exact_matrix(v[i]) for i in range(len(E))) and tol == 0
    t = 0 if exact else max(tol, 1e-9)
    if E.zero is not None and not is_zero_matrix(v[E.zero], t):
        return False, ("v_0 != 0", E.elements[E.zero])
    for e in E.nonzero():
        atoms = E.atoms_below(e)
        if atoms == [e]:
            continue
        if not is_zero_matrix(_cover_product(E, v, e, atoms, exact), t):
            return False, ("atom cover product nonzero", E.elements[e])
    return True, None


def is_tight_rep_literal(E, v, tol=0.0):
    """Tightness straight from the definition: every cover F of every e
    gives a vanishing product (small semilattices only)."""
    exact = all(is_exact_matrix(v[i]) for i in range(len(E))) and tol == 0
    t = 0 if exact else max(tol, 1e-9)
    for e in range(len(E)):
        if e == E.zero:
            if not is_zero_matrix(v[e], t):
                return False, ("v_0 != 0", E.elements[e])
            continue
        for F in E.covers(e):
            if not is_zero_matrix(_cover_product(E, v, e, F, exact), t):
                return False, ("cover product nonzero", E.elements[e], [E.elements[f] for f in F])
    return True, None


def injectivity_certificate(E, v, tol=0.0):
    """True when no non-covering F below e (e not in F) has a vanishing
    product; small semilattices only."""
    exact = all(is_exact_matrix(v[i]) for i in range(len(E))) and tol == 0
    t = 0 if exact else max(tol, 1e-9)
    for e in E.nonzero():
        down = [z for z in E.below(e) if z != e]
        for k in range(len(down) + 1):
            for F in itertools.combinations(down, k):
                if not E.is_cover(e, F) and is_zero_matrix(_cover_product(E, v, e, F, exact), t):
                    return False
    return True


# ---------------------------------------------------------------- covariant reps

@dataclass
class CovariantRep:
    """Finite covariant representation of a twisted action extracted from a
    twisted groupoid.

    pi[x] is the matrix of the indicator of the unit x, v[t] the matrix of
    the semigroup element t (index into data.semigroup).
    """

    data: object
    pi: dict
    v: list
    space: WeightedSpace = None


def _mm(A, B):
    if is_exact_matrix(A) and is_exact_matrix(B):
        # representation matrices are very sparse
        out = zeros(A.shape[0], B.shape[1])
        for i, row in _sparse_product(_sparse(A), _sparse(B)).items():
            for j, z in row.items():
                out[i, j] = z
        return out
    return to_numeric(A).astype(complex) @ to_numeric(B).astype(complex)


def _eq(A, B, tol):
    if tol == 0 and is_exact_matrix(A) and is_exact_matrix(B):
        return mat_equal(A, B)
    return mat_equal(A, B, max(tol, 1e-9))


def _diagonal_rows(P):
    """Row indices when P is an exact diagonal 0/1 matrix, else None."""
    P = np.asarray(P)
    if not is_exact_matrix(P):
        return None
    n = P.shape[0]
    rows = []
    for i in range(n):
        for j in range(n):
            z = P[i, j]
            if (i != j and z != 0) or (i == j and z not in (0, 1)):
                return None
        if P[i, i] == 1:
            rows.append(i)
    return rows


def validate_covariant_rep(rep, tol=0):
    """Covariance relations, checked on indicator functions of points:

        v_t pi(1_x) = pi(1_{h_t x}) v_t               x in X_{t*}
        pi(1_x) v_s v_t = u(s,t)(x) pi(1_x) v_st      x in X_st
        pi(1_x) v_e = pi(1_x)                          x in X_e, e idempotent
        v_t = pi(1_{X_t}) v_t

    plus orthogonality of the pi(1_x).  Returns dict name -> (ok, witness).
    """
    data = rep.data
    S = data.semigroup
    n = len(S)
    report = {}
    bad = None
    xs = list(rep.pi)
    for i, x in enumerate(xs):
        if not _eq(_mm(rep.pi[x], rep.pi[x]), rep.pi[x], tol):
            bad = ("pi not idempotent", x)
        for y in xs[i + 1:]:
            if not is_zero_matrix(_mm(rep.pi[x], rep.pi[y]), 0 if tol == 0 else 1e-9):
                bad = ("pi not orthogonal", x, y)
    report["pi"] = (bad is None, bad)
    bad = None
    for t in range(n):
        for x, y in data.maps[t].items():
            if not _eq(_mm(rep.v[t], rep.pi[x]), _mm(rep.pi[y], rep.v[t]), tol):
                bad = (S.label(t), x)
    report["CR1"] = (bad is None, bad)
    masks = {x: _diagonal_rows(rep.pi[x]) for x in xs}
    bad = None
    for s in range(n):
        for t in range(n):
            st = S.mul(s, t)
            vst = rep.v[st]
            vsvt = _mm(rep.v[s], rep.v[t])
            for x in data.X(st):
                rows = masks.get(x)
                if rows is not None:
                    lhs, rhs = vsvt[rows], vst[rows]
                else:
                    lhs, rhs = _mm(rep.pi[x], vsvt), _mm(rep.pi[x], vst)
                rhs = rhs * data.uval(s, t, x) if is_exact_matrix(rhs) else rhs * complex(data.uval(s, t, x))
                if not _eq(lhs, rhs, tol):
                    bad = (S.label(s), S.label(t), x)
    report["CR2"] = (bad is None, bad)
    bad = None
    for e in S.idempotents():
        for x in data.X(e):
            if not _eq(_mm(rep.pi[x], rep.v[e]), rep.pi[x], tol):
                bad = (S.label(e), x)
    report["CR3"] = (bad is None, bad)
    bad = None
    for t in range(n):
        proj = None
        for x in data.X(t):
            proj = rep.pi[x] if proj is None else proj + rep.pi[x]
        target = rep.v[t]
        got = _mm(proj, target) if proj is not None else target * 0
        if not _eq(got, target, tol):
            bad = S.label(t)
    report["normalised"] = (bad is None, bad)
    if rep.space is not None:
        bad = None
        for t in range(n):
            if spi_from_matrix(rep.v[t], rep.space) is None:
                bad = S.label(t)
        report["spatial"] = (bad is None, bad)
    return report


class IntegratedRep:
    """Algebra representation given by its values on point masses."""

    def __init__(self, G, sigma, basis, dim):
        self.G = G
        self.sigma = sigma
        self.basis = basis
        self.dim = dim

    def __call__(self, f):
        exact = f.is_exact() and all(is_exact_matrix(M) for M in self.basis.values())
        out = zeros(self.dim) if exact else np.zeros((self.dim, self.dim), dtype=complex)
        for a, c in enumerate(f.coeffs):
            if c != 0:
                out = out + (self.basis[a] * c if exact else to_numeric(self.basis[a]) * complex(c))
        return out


def integrate(rep, tol=0):
    """Integrated form: delta_a -> pi(1_{r(a)}) v_t / c_t(a) for any t whose
    bisection contains a; the value must not depend on the choice of t."""
    data = rep.data
    G, S = data.groupoid, data.semigroup
    if G is None:
        raise RepError("integration needs data extracted from a groupoid")
    basis = {}
    for t, U in enumerate(S.elements):
        for a in U:
            c = data.sections[t][a]
            M = _mm(rep.pi[G.rng[a]], rep.v[t])
            M = M * (1 / c) if is_exact_matrix(M) else M / complex(c)
            if a in basis:
                if not _eq(basis[a], M, tol):
                    raise RepError("integrated form depends on the bisection", G.labels[a])
            else:
                basis[a] = M
    missing = [G.labels[a] for a in range(len(G)) if a not in basis]
    if missing:
        raise RepError("bisections do not cover the groupoid", missing[0])
    dim = np.asarray(next(iter(basis.values()))).shape[0]
    return IntegratedRep(G, data.sigma, basis, dim)


def _sparse(M):
    """Nonzero entries of an exact matrix, grouped by row."""
    rows = {}
    for (i, j), z in np.ndenumerate(M):
        if z != 0:
            rows.setdefault(i, {})[j] = z
    return rows


def _sparse_product(A, B):
    out = {}
    for i, row in A.items():
        acc = {}
        for k, x in row.items():
            for j, y in B.get(k, {}).items():
                acc[j] = acc.get(j, ZERO) + x * y
        acc = {j: z for j, z in acc.items() if z != 0}
        if acc:
            out[i] = acc
    return out


def check_multiplicative(G, sigma, basis, tol=0):
    """psi(delta_a) psi(delta_b) = sigma(a,b) psi(delta_ab) or 0."""
    if tol == 0 and all(is_exact_matrix(M) for M in basis.values()):
        sp = {a: _sparse(M) for a, M in basis.items()}
        for a in range(len(G)):
            for b in range(len(G)):
                prod = _sparse_product(sp[a], sp[b])
                if G.dom[a] == G.rng[b]:
                    s = sigma(a, b)
                    target = {i: {j: z * s for j, z in row.items()} for i, row in sp[G.comp[(a, b)]].items()}
                    if prod != target:
                        return False, (G.labels[a], G.labels[b])
                elif prod:
                    return False, (G.labels[a], G.labels[b])
        return True, None
    for a in range(len(G)):
        for b in range(len(G)):
            prod = _mm(basis[a], basis[b])
            if G.dom[a] == G.rng[b]:
                target = basis[G.comp[(a, b)]]
                s = sigma(a, b)
                target = target * s if is_exact_matrix(target) else to_numeric(target) * complex(s)
                if not _eq(prod, target, tol):
                    return False, (G.labels[a], G.labels[b])
            elif not is_zero_matrix(prod, 0 if tol == 0 else 1e-9):
                return False, (G.labels[a], G.labels[b])
    return True, None


def disintegrate(data, basis, space=None, tol=0):
    """Covariant representation of a representation given on point masses:
    pi(1_x) = psi(delta_x) and v_t = psi(c_t)."""
    G, S = data.groupoid, data.semigroup
    ok, wit = check_multiplicative(G, data.sigma, basis, tol)
    if not ok:
        raise RepError("representation is not multiplicative", wit)
    pi = {x: basis[x] for x in G.units}
    dim = np.asarray(basis[0]).shape[0]
    exact = all(is_exact_matrix(M) for M in basis.values())
    v = []
    for t, U in enumerate(S.elements):
        acc = zeros(dim) if exact else np.zeros((dim, dim), dtype=complex)
        for a in U:
            c = data.sections[t][a]
            acc = acc + (basis[a] * c if exact else to_numeric(basis[a]) * complex(c))
        v.append(acc)
    return CovariantRep(data, pi, v, space)


def regular_basis(G, sigma):
    """Lambda(delta_a) for every arrow a."""
    return {a: regular_representation(AlgElement.delta(G, sigma, a)) for a in range(len(G))}


def reps_equal(r1, r2, tol=0):
    if set(r1.pi) != set(r2.pi) or len(r1.v) != len(r2.v):
        return False
    return (all(_eq(r1.pi[x], r2.pi[x], tol) for x in r1.pi)
            and all(_eq(a, b, tol) for a, b in zip(r1.v, r2.v)))


def random_spatial_basis(G, sigma, rng, p, complex_phases=False):
    """A spatial representation built from the regular one: restrict to the
    arrows with domain in a random set of units, repeat blocks, permute the
    points, twist by unimodular phases and move to a weighted space.

    Weights are p-th powers of rationals so that point-coordinate matrices
    stay exact.  Returns (space, basis).
    """
    p = as_exponent(p)
    units = list(G.units)
    chosen = [x for x in units if rng.random() < 0.6] or [units[int(rng.integers(len(units)))]]
    cols = []
    for x in chosen:
        for copy in range(int(rng.integers(1, 3))):
            cols += [(copy, b) for b in G.with_domain(x)]
    m = len(cols)
    perm = list(rng.permutation(m))
    pts = [cols[i] for i in perm]
    pos = {c: i for i, c in enumerate(pts)}
    phase_choices = [ONE, -ONE]
    if complex_phases:
        from .exactnum import I
        phase_choices += [I, -I]
    ph = [phase_choices[int(rng.integers(len(phase_choices)))] for _ in range(m)]
    if p == INF:
        roots = [ONE] * m
        weights = [Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4))) for _ in range(m)]
    else:
        roots = [Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3))) for _ in range(m)]
        weights = [r ** p.numerator if p.denominator == 1 else None for r in roots]
        if any(w is None for w in weights):
            roots = [ONE] * m
            weights = [ONE] * m
    space = WeightedSpace(tuple(range(m)), tuple(weights), p)
    basis = {}
    for a in range(len(G)):
        M = zeros(m)
        for (copy, b) in cols:
            if G.rng[b] == G.dom[a]:
                c = (copy, G.comp[(a, b)])
                i, j = pos[c], pos[(copy, b)]
                # conjugated entry ph_i * val * conj(ph_j); undo the weights
                val = ph[i] * sigma(a, b) * conj(ph[j])
                M[i, j] = val * roots[j] / roots[i]
        basis[a] = M
    return space, basis
