"""Finite discrete groupoids, their bisections and the standard builders.

Arrows are indexed 0..n-1 and carry hashable labels.  Composition follows
the usual convention: a*b is defined when d(a) = r(b), and then
r(ab) = r(a), d(ab) = d(b).  Units are arrows equal to their own range.
"""

from collections import deque

from .invsemi import ISemigroup, SemigroupError, generate


class GroupoidError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else "%s (witness %r)" % (msg, witness))
        self.witness = witness


class FiniteGroupoid:
    def __init__(self, labels, rng, dom, inv, comp):
        self.labels = tuple(labels)
        self.rng = tuple(rng)
        self.dom = tuple(dom)
        self.inv = tuple(inv)
        self.comp = dict(comp)
        self._index = {a: i for i, a in enumerate(self.labels)}
        self.units = tuple(i for i in range(len(self.labels)) if self.rng[i] == i)
        self._out = {x: [] for x in self.units}
        self._in = {x: [] for x in self.units}
        for a in range(len(self.labels)):
            self._in[self.rng[a]].append(a)
            self._out[self.dom[a]].append(a)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return "FiniteGroupoid(%d arrows, %d units)" % (len(self), len(self.units))

    def index(self, label):
        return self._index[label]

    def label(self, a):
        return self.labels[a]

    def is_unit(self, a):
        return self.rng[a] == a

    def composable(self, a, b):
        return self.dom[a] == self.rng[b]

    def mul(self, a, b):
        try:
            return self.comp[(a, b)]
        except KeyError:
            raise GroupoidError("arrows are not composable", (self.labels[a], self.labels[b]))

    def composable_pairs(self):
        return sorted(self.comp)

    def with_range(self, x):
        """Arrows with r(a) = x (x a unit index)."""
        return self._in[x]

    def with_domain(self, x):
        return self._out[x]

    def arrows_between(self, y, x):
        """Arrows from x to y."""
        return [a for a in self._in[y] if self.dom[a] == x]

    def isotropy(self, x):
        return self.arrows_between(x, x)

    def orbits(self):
        """Unit orbits, each sorted, in order of first unit."""
        seen, out = set(), []
        for x in self.units:
            if x in seen:
                continue
            orb = sorted({self.rng[a] for a in self._out[x]})
            seen.update(orb)
            out.append(orb)
        return out

    def is_bisection(self, U):
        U = list(U)
        return (len({self.rng[a] for a in U}) == len(U)
                and len({self.dom[a] for a in U}) == len(U))

    def bisection_mul(self, U, V):
        return frozenset(self.comp[(a, b)] for a in U for b in V if self.dom[a] == self.rng[b])

    def bisection_inv(self, U):
        return frozenset(self.inv[a] for a in U)


def validate_groupoid(labels, units, r, d, inverse, compose):
    """Build a FiniteGroupoid from label data, checking every axiom.

    r, d, inverse map labels to labels; compose maps label pairs (a, b) with
    d(a) = r(b) to a label, either as a dict or a callable.
    """
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise GroupoidError("duplicate arrow labels")
    idx = {a: i for i, a in enumerate(labels)}
    units = set(units)
    for u in units:
        if u not in idx:
            raise GroupoidError("unit is not an arrow", u)
    try:
        rng = [idx[r[a]] for a in labels]
        dom = [idx[d[a]] for a in labels]
        inv = [idx[inverse[a]] for a in labels]
    except KeyError as exc:
        raise GroupoidError("range/domain/inverse missing or not an arrow", exc.args[0])
    for i, a in enumerate(labels):
        if labels[rng[i]] not in units or labels[dom[i]] not in units:
            raise GroupoidError("range or domain is not a unit", a)
    for u in units:
        i = idx[u]
        if rng[i] != i or dom[i] != i or inv[i] != i:
            raise GroupoidError("unit is not its own range, domain and inverse", u)
    comp = {}
    get = compose if callable(compose) else (lambda a, b: compose.get((a, b)))
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            c = get(a, b)
            if dom[i] == rng[j]:
                if c is None or c not in idx:
                    raise GroupoidError("composable pair has no product", (a, b))
                k = idx[c]
                if rng[k] != rng[i] or dom[k] != dom[j]:
                    raise GroupoidError("product has wrong range or domain", (a, b))
                comp[(i, j)] = k
            elif c is not None and not callable(compose):
                raise GroupoidError("product defined for non-composable pair", (a, b))
    n = len(labels)
    for i in range(n):
        if comp[(rng[i], i)] != i or comp[(i, dom[i])] != i:
            raise GroupoidError("unit law fails", labels[i])
        if comp.get((i, inv[i])) != rng[i] or comp.get((inv[i], i)) != dom[i]:
            raise GroupoidError("inverse law fails", labels[i])
    for (i, j), k in comp.items():
        for m in range(n):
            if dom[j] == rng[m]:
                if comp[(k, m)] != comp[(i, comp[(j, m)])]:
                    raise GroupoidError("not associative", (labels[i], labels[j], labels[m]))
    return FiniteGroupoid(labels, rng, dom, inv, comp)


def pair_groupoid(n):
    """Arrows (i, j) from j to i; (i, j)(j, k) = (i, k)."""
    labels = [(i, j) for i in range(n) for j in range(n)]
    idx = {a: k for k, a in enumerate(labels)}
    rng = [idx[(i, i)] for (i, j) in labels]
    dom = [idx[(j, j)] for (i, j) in labels]
    inv = [idx[(j, i)] for (i, j) in labels]
    comp = {}
    for (i, j) in labels:
        for k in range(n):
            comp[(idx[(i, j)], idx[(j, k)])] = idx[(i, k)]
    return FiniteGroupoid(labels, rng, dom, inv, comp)


def group_groupoid(G):
    """A finite group as a one-unit groupoid; labels are G's labels."""
    n = len(G)
    e = G.identity
    comp = {(a, b): G.mul(a, b) for a in range(n) for b in range(n)}
    return FiniteGroupoid(G.elements, [e] * n, [e] * n, G.inverse, comp)


# ---------------------------------------------------------------- actions

class ActionOnFiniteSet:
    """Action of an inverse semigroup by partial bijections of a finite set.

    maps[t] is a dict sending x in X_{t*} to h_t(x) in X_t.
    """

    def __init__(self, semigroup, points, maps):
        self.semigroup = semigroup
        self.points = tuple(points)
        self.maps = [dict(m) for m in maps]

    def domain(self, t):
        return frozenset(self.maps[t])

    def range_(self, t):
        return frozenset(self.maps[t].values())


def validate_action(action):
    S, X = action.semigroup, set(action.points)
    n = len(S)
    if len(action.maps) != n:
        raise GroupoidError("one map per semigroup element required")
    for t in range(n):
        m = action.maps[t]
        if not set(m) <= X or not set(m.values()) <= X:
            raise GroupoidError("map leaves the point set", S.label(t))
        if len(set(m.values())) != len(m):
            raise GroupoidError("map is not injective", S.label(t))
        inv = {y: x for x, y in m.items()}
        if action.maps[S.star(t)] != inv:
            raise GroupoidError("h_{t*} is not the inverse of h_t", S.label(t))
    for s in range(n):
        ms = action.maps[s]
        for t in range(n):
            mt = action.maps[t]
            comp = {x: ms[y] for x, y in mt.items() if y in ms}
            if comp != action.maps[S.mul(s, t)]:
                raise GroupoidError("h_s h_t != h_st", (S.label(s), S.label(t)))
    covered = set()
    for m in action.maps:
        covered |= set(m.values())
    if covered != X:
        raise GroupoidError("action is degenerate", sorted(X - covered, key=repr)[0])
    return True


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if repr(rb) < repr(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra


def germ_classes(action):
    """Germ equivalence on pairs (t, x), x in X_{t*}.

    (t, x) ~ (t', x) when some v <= t, t' has x in X_{v*}.  Returns a dict
    from pair to the canonical pair (least semigroup index) of its class.
    """
    S = action.semigroup
    pairs = [(t, x) for t in range(len(S)) for x in action.points if x in action.maps[t]]
    by_point = {}
    for t, x in pairs:
        by_point.setdefault(x, []).append(t)
    canon = {}
    for x, ts in by_point.items():
        uf = _UnionFind(ts)
        for v in ts:
            for t in ts:
                if S.leq(v, t):
                    uf.union(v, t)
        groups = {}
        for t in ts:
            groups.setdefault(uf.find(t), []).append(t)
        for members in groups.values():
            rep = min(members)
            for t in members:
                canon[(t, x)] = (rep, x)
    return canon


def transformation_groupoid(action, check=True):
    """Groupoid of germs S x| X.

    Returns (G, U) with arrows labelled (S-label, point) using the least
    representative of each germ, and U[t] the bisection {[t, x]}.
    """
    if check:
        validate_action(action)
    S = action.semigroup
    canon = germ_classes(action)
    reps = sorted(set(canon.values()), key=lambda tx: (tx[0], action.points.index(tx[1])))
    idx = {g: i for i, g in enumerate(reps)}
    E = set(S.idempotents())
    unit_at = {}
    for (t, x) in reps:
        if t in E:
            unit_at[x] = idx[(t, x)]
    rng, dom, inv = [], [], []
    for (t, x) in reps:
        y = action.maps[t][x]
        rng.append(unit_at[y])
        dom.append(unit_at[x])
        inv.append(idx[canon[(S.star(t), y)]])
    comp = {}
    for a, (s, y) in enumerate(reps):
        for b, (t, x) in enumerate(reps):
            if action.maps[t][x] == y:
                comp[(a, b)] = idx[canon[(S.mul(s, t), x)]]
    labels = [(S.label(t), x) for (t, x) in reps]
    G = FiniteGroupoid(labels, rng, dom, inv, comp)
    U = [frozenset(idx[canon[(t, x)]] for x in action.maps[t]) for t in range(len(S))]
    if check:
        for s in range(len(S)):
            for t in range(len(S)):
                if G.bisection_mul(U[s], U[t]) != U[S.mul(s, t)]:
                    raise GroupoidError("t -> U_t is not multiplicative", (S.label(s), S.label(t)))
    return G, U


def deaconu_renault(points, phi):
    """Groupoid of (y, m - n, x) with phi^m(y) = phi^n(x).

    ``phi`` is a partial self-map given as a dict.  On a finite set it must
    be aperiodic (no cycles); a cycle raises GroupoidError with a witness.
    Arrows are labelled (y, k, x) with r = y and d = x.
    """
    points = list(points)
    trajectory = {}
    for x in points:
        traj, seen, cur = [x], {x}, x
        while cur in phi:
            cur = phi[cur]
            if cur in seen:
                raise GroupoidError("map has a periodic point", cur)
            seen.add(cur)
            traj.append(cur)
        trajectory[x] = traj
    labels = []
    for y in points:
        pos_y = {p: m for m, p in enumerate(trajectory[y])}
        for x in points:
            for n_, p in enumerate(trajectory[x]):
                if p in pos_y:
                    labels.append((y, pos_y[p] - n_, x))
                    break
    idx = {a: i for i, a in enumerate(labels)}
    by_pair = {(y, x): i for i, (y, k, x) in enumerate(labels)}
    unit = {x: idx[(x, 0, x)] for x in points}
    rng = [unit[y] for (y, k, x) in labels]
    dom = [unit[x] for (y, k, x) in labels]
    inv = [idx[(x, -k, y)] for (y, k, x) in labels]
    comp = {}
    for a, (z, k, y) in enumerate(labels):
        for b, (y2, l, x) in enumerate(labels):
            if y == y2:
                c = by_pair[(z, x)]
                if labels[c][1] != k + l:
                    raise GroupoidError("degree is not additive", (labels[a], labels[b]))
                comp[(a, b)] = c
    return FiniteGroupoid(labels, rng, dom, inv, comp)


def minimal_witness(points, phi, y, x):
    """Least n (and matching m) with phi^n(x) = phi^m(y), or None."""
    def traj(z):
        out, cur = [z], z
        while cur in phi and len(out) <= len(points):
            cur = phi[cur]
            out.append(cur)
        return out
    ty = {p: m for m, p in enumerate(traj(y))}
    for n_, p in enumerate(traj(x)):
        if p in ty:
            return n_, ty[p]
    return None


# ---------------------------------------------------------------- bisections

def bisection_semigroup(G, gens, bound=5000):
    """Inverse semigroup of bisections generated by ``gens`` under
    U.V = {ab} and U* = U^-1.  Labels are frozensets of arrow indices."""
    gens = [frozenset(U) for U in gens]
    for U in gens:
        if not G.is_bisection(U):
            raise GroupoidError("not a bisection", sorted(G.labels[a] for a in U))
    try:
        return generate(gens, G.bisection_mul, G.bisection_inv, bound)
    except SemigroupError as exc:
        raise GroupoidError(str(exc))


def is_wide(G, S):
    """Whether the bisections cover G and every intersection U n V is a
    union of members of S."""
    Us = list(S.elements)
    covered = set()
    for U in Us:
        covered |= U
    if covered != set(range(len(G))):
        return False
    for U in Us:
        for V in Us:
            W = U & V
            inside = set()
            for Z in Us:
                if Z <= W:
                    inside |= Z
            if inside != W:
                return False
    return True


def canonical_action(G, S):
    """Action of a bisection semigroup on the unit space by
    h_U(d(a)) = r(a), a in U.  Points are unit arrow indices."""
    maps = [{G.dom[a]: G.rng[a] for a in U} for U in S.elements]
    return ActionOnFiniteSet(S, G.units, maps)


def bisection_semigroup_all(G, bound=5000):
    """All bisections of G (small groupoids only) as an inverse semigroup."""
    n = len(G)
    out = []
    def rec(cur, start, rs, ds):
        out.append(frozenset(cur))
        if len(out) > bound:
            raise GroupoidError("too many bisections")
        for a in range(start, n):
            if G.rng[a] not in rs and G.dom[a] not in ds:
                cur.append(a)
                rs.add(G.rng[a]); ds.add(G.dom[a])
                rec(cur, a + 1, rs, ds)
                cur.pop()
                rs.discard(G.rng[a]); ds.discard(G.dom[a])
    rec([], 0, set(), set())
    return bisection_semigroup(G, out, bound)


def spanning_arrows(G):
    """For each orbit, a base unit and for each unit y an arrow from the
    base to y, found by breadth-first search."""
    tree = {}
    bases = []
    for orb in G.orbits():
        x0 = orb[0]
        bases.append(x0)
        tree[x0] = x0
        queue = deque([x0])
        while queue:
            y = queue.popleft()
            for a in G.with_domain(y):
                z = G.rng[a]
                if z not in tree:
                    tree[z] = G.mul(a, tree[y])
                    queue.append(z)
    return bases, tree
