"""Twisted actions of inverse semigroups on finite sets, and the passage
between them and twisted groupoids.

A twisted action on a finite set X consists of an inverse semigroup S, a
partial bijection h_t : X_{t*} -> X_t for each t, and unimodular functions
u(s, t) on X_{st}.  With commutative coefficients C(X) the action on
functions is alpha_t(a) = a o h_{t*}.  Pointwise, the axioms read

    (A1) h_s h_t = h_st
    (A2) u(s,t)(x) u(r,st)(y) = u(r,s)(y) u(rs,t)(y),  y in X_rst, x = h_{r*}(y)
    (A3) u(e,f) = 1 on X_ef,  u(t,t*t) = u(tt*,t) = 1 on X_t
    (A4) u(t*,e)(x) u(t*e,t)(x) = u(t*,t)(x) on X_{t*et}
"""

import cmath
import math

from .exactnum import QComplex, conj, is_exact, is_unimodular
from .galg import ONE, AlgElement, Cocycle, convolve, involute
from .groupoid import ActionOnFiniteSet, GroupoidError, transformation_groupoid, validate_action


class TwistError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else "%s (witness %r)" % (msg, witness))
        self.witness = witness


class TwistedActionData:
    """Semigroup action on points plus the twisting functions u(s, t).

    maps[t] sends X_{t*} onto X_t.  u[(s, t)] is a dict on X_{st}; missing
    pairs or points mean the value 1.  When the data was extracted from a
    twisted groupoid, ``groupoid``, ``sigma`` and ``sections`` record where
    it came from.
    """

    def __init__(self, semigroup, points, maps, u=None, groupoid=None, sigma=None, sections=None):
        self.semigroup = semigroup
        self.points = tuple(points)
        self.maps = [dict(m) for m in maps]
        self.u = {k: dict(v) for k, v in (u or {}).items()}
        self.groupoid = groupoid
        self.sigma = sigma
        self.sections = sections

    def action(self):
        return ActionOnFiniteSet(self.semigroup, self.points, self.maps)

    def X(self, t):
        return frozenset(self.maps[t].values())

    def uval(self, s, t, x):
        return self.u.get((s, t), {}).get(x, ONE)

    def is_exact(self):
        return all(is_exact(v) for m in self.u.values() for v in m.values())


def extract_twisted_action(G, sigma, S, sections=None, tol=1e-9):
    """Twisted action of a bisection semigroup on the unit space.

    ``S`` is an ISemigroup whose labels are bisections (frozensets of arrow
    indices).  ``sections[t]`` is a dict arrow -> unimodular scalar on the
    bisection; it defaults to 1, and must be 1 on bisections of units.
    u(U, V) = c_U * c_V * c_UV^* computed by twisted convolution.
    """
    sigma = sigma if sigma is not None else Cocycle(G)
    n = len(S)
    if sections is None:
        sections = [{a: ONE for a in U} for U in S.elements]
    sections = [dict(c) for c in sections]
    c_el = []
    for t, U in enumerate(S.elements):
        c = sections[t]
        if set(c) != set(U):
            raise TwistError("section support differs from its bisection", t)
        for a, v in c.items():
            if not is_unimodular(v, tol):
                raise TwistError("section value is not unimodular", (G.labels[a], v))
            if G.is_unit(a) and v != 1:
                raise TwistError("section on units must be 1", G.labels[a])
        c_el.append(AlgElement.from_dict(G, sigma, c))
    maps = [{G.dom[a]: G.rng[a] for a in U} for U in S.elements]
    u = {}
    stars = [involute(c) for c in c_el]
    for s in range(n):
        for t in range(n):
            st = S.mul(s, t)
            prod = convolve(convolve(c_el[s], c_el[t]), stars[st])
            vals = {}
            for a, v in enumerate(prod.coeffs):
                if v == 0:
                    continue
                if not G.is_unit(a):
                    raise TwistError("c_s c_t c_st^* is not supported on units",
                                     (S.label(s), S.label(t)))
                vals[a] = v
            Xst = {G.rng[a] for a in S.label(st)}
            if set(vals) != Xst:
                raise TwistError("u(s,t) does not live on X_st", (S.label(s), S.label(t)))
            u[(s, t)] = {x: v for x, v in vals.items() if v != 1}
    # the action induced by conjugation agrees with h_U
    for t in range(n):
        for x, y in maps[t].items():
            conj_delta = convolve(convolve(c_el[t], AlgElement.delta(G, sigma, x)), stars[t])
            target = AlgElement.delta(G, sigma, y)
            ok = conj_delta == target if conj_delta.is_exact() else conj_delta.close_to(target, tol)
            if not ok:
                raise TwistError("c_U a c_U^* differs from a o h_{U*}", (S.label(t), G.labels[x]))
    return TwistedActionData(S, G.units, maps, u, groupoid=G, sigma=sigma, sections=sections)


def _same(x, y, tol):
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(complex(x) - complex(y)) <= tol


def validate_twisted_action(data, tol=1e-9):
    """Check (A1)-(A4), unimodularity and non-degeneracy.

    Returns a dict axiom -> (ok, witness or None).
    """
    S = data.semigroup
    n = len(S)
    report = {}
    try:
        validate_action(data.action())
        report["action"] = (True, None)
    except GroupoidError as exc:
        report["action"] = (False, exc.witness)
    # A1 is the semigroup law on the partial maps; Ad of the scalar unitary
    # is trivial on commutative coefficients.
    bad = None
    for s in range(n):
        for t in range(n):
            ms, mt = data.maps[s], data.maps[t]
            comp = {x: ms[y] for x, y in mt.items() if y in ms}
            if comp != data.maps[S.mul(s, t)]:
                bad = (S.label(s), S.label(t))
                break
        if bad:
            break
    report["A1"] = (bad is None, bad)

    bad = None
    for (s, t), m in data.u.items():
        Xst = data.X(S.mul(s, t))
        for x, v in m.items():
            if x not in Xst or not is_unimodular(v, tol):
                bad = (S.label(s), S.label(t), x)
    report["unimodular"] = (bad is None, bad)

    bad = None
    for r in range(n):
        hr_inv = {y: x for x, y in data.maps[r].items()}
        for s in range(n):
            rs = S.mul(r, s)
            for t in range(n):
                st = S.mul(s, t)
                rst = S.mul(rs, t)
                for y in data.X(rst):
                    x = hr_inv.get(y)
                    if x is None:
                        continue
                    lhs = data.uval(s, t, x) * data.uval(r, st, y)
                    rhs = data.uval(r, s, y) * data.uval(rs, t, y)
                    if not _same(lhs, rhs, tol):
                        bad = (S.label(r), S.label(s), S.label(t), y)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    report["A2"] = (bad is None, bad)

    bad = None
    E = S.idempotents()
    for e in E:
        for f in E:
            for x in data.X(S.mul(e, f)):
                if not _same(data.uval(e, f, x), 1, tol):
                    bad = ("u(e,f)", S.label(e), S.label(f), x)
    for t in range(n):
        for x in data.X(t):
            if not _same(data.uval(t, S.source(t), x), 1, tol):
                bad = ("u(t,t*t)", S.label(t), x)
            if not _same(data.uval(S.range_(t), t, x), 1, tol):
                bad = ("u(tt*,t)", S.label(t), x)
    report["A3"] = (bad is None, bad)

    bad = None
    for t in range(n):
        ts = S.star(t)
        for e in E:
            te = S.mul(ts, e)
            for x in data.X(S.mul(te, t)):
                lhs = data.uval(ts, e, x) * data.uval(te, t, x)
                if not _same(lhs, data.uval(ts, t, x), tol):
                    bad = (S.label(t), S.label(e), x)
    report["A4"] = (bad is None, bad)
    return report


def twisted_action_ok(report):
    return all(ok for ok, _ in report.values())


def rebuild(data, check=True):
    """Twisted groupoid of germs (S x| X, sigma) from a twisted action.

    Each germ [t, x] is represented by its least semigroup index t; the
    cocycle compares the product of representatives with the
    representative of the product through a common lower bound v:

        sigma([s, h_t x], [t, x]) = u(s,t)(y) u(vv*, st)(y) / u(vv*, t')(y)

    with y = h_st(x) and t' the representative of [st, x].
    """
    S = data.semigroup
    act = data.action()
    G, U = transformation_groupoid(act, check=check)
    rep = [S.index(lab[0]) for lab in G.labels]
    point = [lab[1] for lab in G.labels]
    vals = {}
    for (a, b), ab in G.comp.items():
        s, t, t2 = rep[a], rep[b], rep[ab]
        x = point[b]
        st = S.mul(s, t)
        y = data.maps[st][x]
        v = None
        for cand in S.lower_bounds(st, t2):
            if x in data.maps[cand]:
                v = cand
                break
        if v is None:
            raise TwistError("germ representatives have no common lower bound", G.labels[ab])
        vv = S.range_(v)
        val = data.uval(s, t, y) * data.uval(vv, st, y) / data.uval(vv, t2, y)
        if val != 1:
            vals[(a, b)] = val
    return G, Cocycle(G, vals), U


# ---------------------------------------------------------------- isomorphism

def _group_isos(G1, x1, G2, x2):
    """All isomorphisms between the isotropy groups at x1 and x2, as dicts."""
    H1, H2 = G1.isotropy(x1), G2.isotropy(x2)
    if len(H1) != len(H2):
        return
    order = [x1] + [h for h in H1 if h != x1]
    targets = [h for h in H2]

    def rec(k, phi):
        if k == len(order):
            yield dict(phi)
            return
        g = order[k]
        for h in targets:
            if h in phi.values() or (k == 0 and h != x2):
                continue
            phi[g] = h
            ok = True
            for a in list(phi):
                for (p, q) in ((a, g), (g, a)):
                    pq = G1.comp[(p, q)]
                    if pq in phi and G2.comp[(phi[p], phi[q])] != phi[pq]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                yield from rec(k + 1, phi)
            del phi[g]

    yield from rec(0, {})


def _orbit_map(G1, orb1, G2, orb2, psi):
    """Extend an isotropy isomorphism at the base units to an isomorphism of
    transitive pieces, using breadth-first spanning arrows on both sides."""
    x1, x2 = orb1[0], psi[orb1[0]]
    tau1 = _spanning(G1, x1)
    tau2 = _spanning(G2, x2)
    units2 = sorted(tau2)
    units1 = sorted(tau1, key=lambda y: (y != x1, y))
    units2 = sorted(units2, key=lambda y: (y != x2, y))
    umap = dict(zip(units1, units2))
    phi = {}
    for y in units1:
        for z in units1:
            for a in G1.arrows_between(z, y):
                # a = tau_z g tau_y^-1
                g = G1.comp[(G1.comp[(G1.inv[tau1[z]], a)], tau1[y])]
                b = G2.comp[(G2.comp[(tau2[umap[z]], psi[g])], G2.inv[tau2[umap[y]]])]
                phi[a] = b
    return phi


def _spanning(G, x0):
    tree = {x0: x0}
    queue = [x0]
    while queue:
        y = queue.pop(0)
        for a in G.with_domain(y):
            z = G.rng[a]
            if z not in tree:
                tree[z] = G.comp[(a, tree[y])]
                queue.append(z)
    return tree


def _is_hom(G1, G2, phi, arrows):
    arrows = set(arrows)
    for (a, b), ab in G1.comp.items():
        if a in arrows and b in arrows:
            if G2.comp.get((phi[a], phi[b])) != phi[ab]:
                return False
    return len(set(phi[a] for a in arrows)) == len(arrows)


def _roots(c, n, real_only):
    c = complex(c)
    r = abs(c) ** (1.0 / n)
    th = cmath.phase(c)
    out = []
    for j in range(n):
        z = r * cmath.exp(1j * (th + 2 * math.pi * j) / n)
        if real_only:
            if abs(z.imag) > 1e-9:
                continue
            z = complex(round(z.real), 0) if abs(abs(z.real) - 1) < 1e-9 else complex(z.real, 0)
        out.append(z)
    return out


def solve_coboundary(G, rho, arrows, mode="complex", tol=1e-9):
    """Find b on ``arrows`` (a union of orbits) with
    rho(a, c) = b(a) b(c) / b(ac), b = 1 on units, or None.

    rho is a callable on composable pairs.  Spanning arrows get b = 1; the
    isotropy values are roots of products of rho and are found by
    backtracking; everything else is then forced and checked.
    """
    arrows = set(arrows)
    units = sorted(x for x in G.units if x in arrows)
    real_only = mode == "real"
    seen, bases = set(), []
    for x in units:
        if x not in seen:
            tau = _spanning(G, x)
            seen.update(tau)
            bases.append((x, tau))
    b = {}
    for x0, tau in bases:
        H = G.isotropy(x0)
        orbit_arrows = [a for a in sorted(arrows) if G.rng[a] in tau]
        found = None
        for bh in _isotropy_solutions(G, rho, x0, H, real_only, tol):
            trial = {}
            for a in orbit_arrows:
                y, z = G.dom[a], G.rng[a]
                ty, tz = tau[y], tau[z]
                ty_inv = G.inv[ty]
                g = G.comp[(G.comp[(G.inv[tz], a)], ty)]
                gi = G.comp[(g, ty_inv)]
                b_ty_inv = complex(rho(ty, ty_inv))
                b_gi = bh[g] * b_ty_inv / complex(rho(g, ty_inv))
                trial[a] = b_gi / complex(rho(tz, gi))
            ok = True
            for a in orbit_arrows:
                for c in G.with_range(G.dom[a]):
                    ac = G.comp[(a, c)]
                    if abs(trial[a] * trial[c] / trial[ac] - complex(rho(a, c))) > tol:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found = trial
                break
        if found is None:
            return None
        b.update(found)
    return b


def _isotropy_solutions(G, rho, x0, H, real_only, tol):
    """Functions b on the isotropy group with rho = coboundary(b) there."""
    elems = [g for g in H if g != x0]
    cands = {}
    for g in elems:
        n, prod, gk = 1, complex(1), g
        while gk != x0:
            prod *= complex(rho(g, gk))
            gk = G.comp[(g, gk)]
            n += 1
        # b(g)^n = prod_{k=1}^{n-1} rho(g, g^k)
        cands[g] = _roots(prod, n, real_only) if n > 1 else [complex(1)]

    def consistent(b):
        for g, bg in b.items():
            for h, bh in b.items():
                gh = G.comp[(g, h)]
                if gh in b and abs(bg * bh / b[gh] - complex(rho(g, h))) > tol:
                    return False
        return True

    def close(b):
        changed = True
        while changed:
            changed = False
            for g in list(b):
                for h in list(b):
                    gh = G.comp[(g, h)]
                    if gh not in b:
                        b[gh] = b[g] * b[h] / complex(rho(g, h))
                        changed = True
        return b

    def rec(b):
        missing = [g for g in elems if g not in b]
        if not missing:
            if consistent(b):
                yield b
            return
        g = missing[0]
        for z in cands[g]:
            trial = close({**b, g: z})
            if consistent(trial):
                yield from rec(trial)

    yield from rec({x0: complex(1)})


def groupoid_iso_check(G1, sigma1, G2, sigma2, mode="complex", tol=1e-9, hint=None):
    """Search for an isomorphism G1 -> G2 carrying sigma2 to a twist
    cohomologous to sigma1.

    Works orbit by orbit: transitive pieces are matched when some isotropy
    isomorphism makes the twists agree up to coboundary, and the pieces are
    paired by bipartite matching.  ``hint`` is an optional candidate
    isomorphism (dict arrow -> arrow) tried first.

    Returns a dict with keys iso (bool), twist (bool), phi and b.
    """
    result = {"iso": False, "twist": False, "phi": None, "b": None}
    if len(G1) != len(G2) or len(G1.units) != len(G2.units):
        return result

    def rho_for(phi):
        return lambda a, c: sigma1(a, c) / sigma2(phi[a], phi[c])

    if hint is not None and len(hint) == len(G1) and _is_hom(G1, G2, hint, range(len(G1))):
        result.update(iso=True, phi=dict(hint))
        b = solve_coboundary(G1, rho_for(hint), range(len(G1)), mode, tol)
        if b is not None:
            result.update(twist=True, b=b)
            return result

    orbs1, orbs2 = G1.orbits(), G2.orbits()
    if sorted((len(o), len(G1.isotropy(o[0]))) for o in orbs1) != \
            sorted((len(o), len(G2.isotropy(o[0]))) for o in orbs2):
        return result
    result["iso"] = True
    # compatible[(i, j)] = (phi on orbit i, b) when the twisted pieces match
    compatible = {}
    any_phi = {}
    for i, o1 in enumerate(orbs1):
        arrows1 = [a for a in range(len(G1)) if G1.rng[a] in o1]
        for j, o2 in enumerate(orbs2):
            if len(o1) != len(o2) or len(G1.isotropy(o1[0])) != len(G2.isotropy(o2[0])):
                continue
            for psi in _group_isos(G1, o1[0], G2, o2[0]):
                phi = _orbit_map(G1, o1, G2, o2, psi)
                if not _is_hom(G1, G2, phi, arrows1):
                    continue
                any_phi.setdefault((i, j), phi)
                b = solve_coboundary(G1, rho_for(phi), arrows1, mode, tol)
                if b is not None:
                    compatible[(i, j)] = (phi, b)
                    break
    plain = _matching(len(orbs1), set(any_phi))
    if plain is None:
        result["iso"] = False
        return result
    phi = {}
    for i, j in plain.items():
        phi.update(any_phi[(i, j)])
    result["phi"] = phi
    match = _matching(len(orbs1), set(compatible))
    if match is None:
        return result
    phi, b = {}, {}
    for i, j in match.items():
        phi.update(compatible[(i, j)][0])
        b.update(compatible[(i, j)][1])
    result.update(twist=True, phi=phi, b=b)
    return result


def _matching(n, edges):
    """Perfect matching of left 0..n-1 into right vertices, or None."""
    adj = {}
    for i, j in sorted(edges):
        adj.setdefault(i, []).append(j)
    owner = {}

    def augment(i, seen):
        for j in adj.get(i, []):
            if j in seen:
                continue
            seen.add(j)
            if j not in owner or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(n):
        if not augment(i, set()):
            return None
    return {i: j for j, i in owner.items()}


def natural_iso(data, G_rebuilt):
    """The germ-to-arrow map [t, x] -> the arrow of U_t with domain x, for
    data extracted from a groupoid."""
    G = data.groupoid
    S = data.semigroup
    phi = {}
    for a, (tlab, x) in enumerate(G_rebuilt.labels):
        U = tlab
        hits = [g for g in U if G.dom[g] == x]
        if len(hits) != 1:
            return None
        phi[a] = hits[0]
    del S
    return phi


def rebuild_and_compare(data, G=None, sigma=None, mode=None, tol=1e-9):
    """Rebuild the twisted groupoid from ``data`` and compare it with
    (G, sigma), by default the groupoid the data was extracted from."""
    G = G if G is not None else data.groupoid
    sigma = sigma if sigma is not None else data.sigma
    if G is None:
        raise TwistError("no groupoid to compare against")
    sigma = sigma if sigma is not None else Cocycle(G)
    G2, sigma2, U = rebuild(data)
    if mode is None:
        complex_vals = any(isinstance(v, (QComplex, complex))
                           for v in list(sigma.values.values()) + list(sigma2.values.values()))
        mode = "complex" if complex_vals else "real"
    hint = natural_iso(data, G2) if data.groupoid is G else None
    res = groupoid_iso_check(G2, sigma2, G, sigma, mode=mode, tol=tol, hint=hint)
    res["rebuilt"] = (G2, sigma2)
    res["mode"] = mode
    return res


__all__ = [
    "TwistError", "TwistedActionData", "extract_twisted_action", "validate_twisted_action",
    "twisted_action_ok", "rebuild", "groupoid_iso_check", "solve_coboundary",
    "rebuild_and_compare", "natural_iso", "conj",
]
