"""Twisted partial actions of finite groups on finite sets.

theta[t] is a bijection X_{t^-1} -> X_t.  The twist u(s, t) is a unimodular
function on X_s n X_st.  Crossed-product elements are dicts t -> f(t) where
f(t) is a function on X_t (a dict point -> scalar).
"""

from .exactnum import conj, is_exact, is_unimodular
from .galg import ONE, ZERO, AlgElement, Cocycle
from .groupoid import FiniteGroupoid
from .invsemi import exel_semigroup
from .twist import TwistedActionData


class PartialActionError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else "%s (witness %r)" % (msg, witness))
        self.witness = witness


class PartialAction:
    def __init__(self, group, points, theta, u=None):
        self.group = group
        self.points = tuple(points)
        self.theta = [dict(m) for m in theta]
        self.u = {k: dict(v) for k, v in (u or {}).items()}

    def X(self, t):
        return frozenset(self.theta[t].values())

    def uval(self, s, t, x):
        return self.u.get((s, t), {}).get(x, ONE)

    def is_exact(self):
        return all(is_exact(v) for m in self.u.values() for v in m.values())


def _same(x, y, tol):
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(complex(x) - complex(y)) <= tol


def validate_partial_action(pa, tol=1e-9):
    """theta_1 = id, theta_t^-1 = theta_{t^-1}, theta_ts extends
    theta_t theta_s, and the twist conditions.  Returns dict name -> (ok, witness)."""
    G = pa.group
    n = len(G)
    X = set(pa.points)
    rep = {}
    e = G.identity
    rep["identity"] = (pa.theta[e] == {x: x for x in X}, None if pa.theta[e] == {x: x for x in X} else e)
    bad = None
    for t in range(n):
        m = pa.theta[t]
        if len(set(m.values())) != len(m) or not set(m) <= X or not set(m.values()) <= X:
            bad = ("not a partial bijection", G.elements[t])
        elif pa.theta[G.inverse[t]] != {y: x for x, y in m.items()}:
            bad = ("theta_{t^-1} is not the inverse", G.elements[t])
    rep["inverse"] = (bad is None, bad)
    bad = None
    for t in range(n):
        for s in range(n):
            ts = G.mul(t, s)
            for x, y in pa.theta[s].items():
                if y in pa.theta[t]:
                    if pa.theta[ts].get(x) != pa.theta[t][y]:
                        bad = (G.elements[t], G.elements[s], x)
    rep["extension"] = (bad is None, bad)
    bad = None
    for (s, t), m in pa.u.items():
        dom = pa.X(s) & pa.X(G.mul(s, t))
        for x, v in m.items():
            if x not in dom or not is_unimodular(v, tol):
                bad = (G.elements[s], G.elements[t], x)
    for t in range(n):
        for x in pa.X(t):
            if not _same(pa.uval(e, t, x), 1, tol) or not _same(pa.uval(t, e, x), 1, tol):
                bad = ("u(1,t) or u(t,1) != 1", G.elements[t], x)
    rep["twist_normalised"] = (bad is None, bad)
    bad = None
    for r in range(n):
        for s in range(n):
            rs = G.mul(r, s)
            for t in range(n):
                st = G.mul(s, t)
                dom = set(pa.theta[r]) & pa.X(s) & pa.X(st)
                for x in dom:
                    y = pa.theta[r][x]
                    lhs = pa.uval(s, t, x) * pa.uval(r, st, y)
                    rhs = pa.uval(r, s, y) * pa.uval(rs, t, y)
                    if not _same(lhs, rhs, tol):
                        bad = (G.elements[r], G.elements[s], G.elements[t], x)
    rep["twist_cocycle"] = (bad is None, bad)
    return rep


def partial_action_groupoid(pa):
    """Groupoid of pairs (t, x), x in X_{t^-1}, with r = theta_t(x), d = x
    and (s, theta_t x)(t, x) = (st, x); twist u(s,t)(theta_st(x)).

    Labels are (group label, point).  Returns (groupoid, cocycle).
    """
    G = pa.group
    labels, key = [], {}
    for t in range(len(G)):
        for x in pa.points:
            if x in pa.theta[t]:
                key[(t, x)] = len(labels)
                labels.append((G.elements[t], x))
    e = G.identity
    rng, dom, inv = [], [], []
    for (t, x), i in sorted(key.items(), key=lambda kv: kv[1]):
        y = pa.theta[t][x]
        rng.append(key[(e, y)])
        dom.append(key[(e, x)])
        inv.append(key[(G.inverse[t], y)])
    comp, vals = {}, {}
    pairs = sorted(key.items(), key=lambda kv: kv[1])
    for (s, y), a in pairs:
        for (t, x), b in pairs:
            if pa.theta[t][x] == y:
                st = G.mul(s, t)
                c = key.get((st, x))
                if c is None:
                    raise PartialActionError("composite germ missing", (G.elements[s], G.elements[t], x))
                comp[(a, b)] = c
                w = pa.uval(s, t, pa.theta[st][x])
                if w != 1:
                    vals[(a, b)] = w
    Gr = FiniteGroupoid(labels, rng, dom, inv, comp)
    return Gr, Cocycle(Gr, vals)


# ---------------------------------------------------------------- crossed product

def crossed_zero(pa):
    return {t: {} for t in range(len(pa.group))}


def _clean(f):
    return {t: {x: v for x, v in m.items() if v != 0} for t, m in f.items()}


def crossed_convolve(pa, f, g):
    """(f*g)(r) = sum over st = r of alpha_s(alpha_s^-1(f(s)) g(t)) u(s,t);
    pointwise at y in X_s n X_st: f(s)(y) g(t)(theta_{s^-1} y) u(s,t)(y)."""
    G = pa.group
    out = crossed_zero(pa)
    for s, fs in f.items():
        sinv = G.inverse[s]
        for t, gt in g.items():
            st = G.mul(s, t)
            for y, a in fs.items():
                if a == 0:
                    continue
                z = pa.theta[sinv].get(y)
                if z is None or z not in gt or y not in pa.X(st):
                    continue
                val = a * gt[z] * pa.uval(s, t, y)
                out[st][y] = out[st].get(y, ZERO) + val
    return _clean(out)


def crossed_involute(pa, f):
    """f*(t) = alpha_t(f(t^-1)^*) u(t, t^-1)^*."""
    G = pa.group
    out = crossed_zero(pa)
    for t in range(len(G)):
        tinv = G.inverse[t]
        src = f.get(tinv, {})
        for y in pa.X(t):
            z = pa.theta[tinv][y]
            if z in src and src[z] != 0:
                out[t][y] = conj(src[z]) * conj(pa.uval(t, tinv, y))
    return _clean(out)


def crossed_norm_l1(f):
    """sum_t sup |f(t)|."""
    total = ZERO
    for m in f.values():
        if m:
            total = total + max(abs(v) for v in m.values())
    return total


def embed(pa, f, groupoid=None):
    """f -> the function (t, x) -> f(t)(theta_t x) on the partial-action
    groupoid."""
    Gr, sigma = groupoid if groupoid is not None else partial_action_groupoid(pa)
    G = pa.group
    coeffs = [ZERO] * len(Gr)
    for a, (tl, x) in enumerate(Gr.labels):
        t = G.index(tl)
        coeffs[a] = f.get(t, {}).get(pa.theta[t][x], ZERO)
    return AlgElement(Gr, sigma, coeffs)


def restrict_element(pa, h):
    """Inverse of ``embed`` on a groupoid element."""
    G = pa.group
    out = crossed_zero(pa)
    for a, (tl, x) in enumerate(h.G.labels):
        if h.coeffs[a] != 0:
            t = G.index(tl)
            out[t][pa.theta[t][x]] = h.coeffs[a]
    return _clean(out)


def exel_induced_action(pa):
    """Action of the Exel model S(G) induced by the partial action:
    (A, g) acts by theta_g restricted to the intersection of X_{g^-1 a},
    a in A, with twist [u]((A,s),(B,t)) = u(s,t) on X_{(A,s)(B,t)}.

    Returns a TwistedActionData over the S(G) model.
    """
    G = pa.group
    S, bracket = exel_semigroup(G)
    maps = []
    for (A, g) in S.elements:
        gi = G.inverse[g]
        dom = set(pa.points)
        for a in A:
            dom &= pa.X(G.mul(gi, a))
        maps.append({x: pa.theta[g][x] for x in dom})
    u = {}
    for i, (A, s) in enumerate(S.elements):
        for j, (B, t) in enumerate(S.elements):
            k = S.mul(i, j)
            vals = {}
            for y in set(maps[k].values()):
                w = pa.uval(s, t, y)
                if w != 1:
                    vals[y] = w
            if vals:
                u[(i, j)] = vals
    return TwistedActionData(S, pa.points, maps, u)
