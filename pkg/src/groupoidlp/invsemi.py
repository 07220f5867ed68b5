"""Finite inverse semigroups, finite groups and Exel's semigroup S(G).

Inverse semigroups are stored as multiplication tables over element indices
together with the star (generalised inverse) table.  Elements keep their
original labels so callers can look them up by value.
"""

from dataclasses import dataclass
from itertools import permutations

from .semilattice import FiniteSemilattice


class SemigroupError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else "%s (witness %r)" % (msg, witness))
        self.witness = witness


class ISemigroup:
    def __init__(self, elements, table, star, zero=None):
        self.elements = tuple(elements)
        self.table = tuple(tuple(r) for r in table)
        self.star_table = tuple(star)
        self.zero = zero
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "ISemigroup(%d elements)" % len(self)

    def index(self, label):
        return self._index[label]

    def label(self, i):
        return self.elements[i]

    def mul(self, a, b):
        return self.table[a][b]

    def star(self, a):
        return self.star_table[a]

    def source(self, a):
        """t*t"""
        return self.mul(self.star(a), a)

    def range_(self, a):
        """tt*"""
        return self.mul(a, self.star(a))

    def is_idempotent(self, a):
        return self.mul(a, a) == a

    def idempotents(self):
        return [a for a in range(len(self)) if self.is_idempotent(a)]

    def leq(self, s, t):
        """Natural partial order: s <= t iff s = t s* s."""
        return s == self.mul(t, self.source(s))

    def lower_bounds(self, s, t):
        return [v for v in range(len(self)) if self.leq(v, s) and self.leq(v, t)]

    def idempotent_semilattice(self):
        """E(S) as a FiniteSemilattice; its elements are indices into S."""
        E = self.idempotents()
        pos = {e: i for i, e in enumerate(E)}
        table = [[pos[self.mul(a, b)] for b in E] for a in E]
        zero = pos[self.zero] if self.zero is not None else None
        return FiniteSemilattice(E, table, zero)


def _find_zero(n, table):
    if n < 2:
        return None
    for z in range(n):
        if all(table[z][a] == z and table[a][z] == z for a in range(n)):
            return z
    return None


def validate_inverse_semigroup(table, star, elements=None):
    """Check associativity, the star laws, commuting idempotents and
    uniqueness of generalised inverses; return the ISemigroup."""
    n = len(table)
    if elements is None:
        elements = list(range(n))
    if len(star) != n or len(elements) != n or any(len(r) != n for r in table):
        raise SemigroupError("tables must be n x n with an n-entry star table")
    for a in range(n):
        for b in range(n):
            if not 0 <= table[a][b] < n:
                raise SemigroupError("table entry out of range", (a, b))
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise SemigroupError("not associative", (elements[a], elements[b], elements[c]))
    for a in range(n):
        s = star[a]
        if table[table[a][s]][a] != a or table[table[s][a]][s] != s:
            raise SemigroupError("star is not a generalised inverse", elements[a])
        inverses = [b for b in range(n)
                    if table[table[a][b]][a] == a and table[table[b][a]][b] == b]
        if inverses != [s]:
            raise SemigroupError("generalised inverse not unique", elements[a])
    E = [a for a in range(n) if table[a][a] == a]
    for e in E:
        for f in E:
            if table[e][f] != table[f][e]:
                raise SemigroupError("idempotents do not commute", (elements[e], elements[f]))
    return ISemigroup(elements, table, star, _find_zero(n, table))


def generate(gens, mul, star, bound=5000):
    """Inverse semigroup generated by labelled elements under ``mul``/``star``.

    Elements must be hashable.  Raises when the closure exceeds ``bound``.
    """
    start = []
    for g in gens:
        for x in (g, star(g)):
            if x not in start:
                start.append(x)
    if not start:
        raise SemigroupError("no generators")
    elements = list(start)
    seen = set(elements)
    frontier = list(elements)
    while frontier:
        nxt = []
        for a in frontier:
            for g in start:
                c = mul(a, g)
                if c not in seen:
                    seen.add(c)
                    elements.append(c)
                    nxt.append(c)
                    if len(elements) > bound:
                        raise SemigroupError("closure exceeds bound %d" % bound)
        frontier = nxt
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    st = [index[star(a)] for a in elements]
    n = len(elements)
    return ISemigroup(elements, table, st, _find_zero(n, table))


class PartialBijection:
    """Finite partial bijection, stored as an immutable set of pairs."""

    __slots__ = ("pairs", "_map")

    def __init__(self, mapping):
        m = dict(mapping)
        if len(set(m.values())) != len(m):
            raise SemigroupError("map is not injective", m)
        self._map = m
        self.pairs = frozenset(m.items())

    def __call__(self, x):
        return self._map[x]

    def __contains__(self, x):
        return x in self._map

    def __eq__(self, other):
        return isinstance(other, PartialBijection) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        items = sorted(self._map.items(), key=repr)
        return "PB{%s}" % ", ".join("%r->%r" % kv for kv in items)

    @property
    def domain(self):
        return frozenset(self._map)

    @property
    def image(self):
        return frozenset(self._map.values())

    def as_dict(self):
        return dict(self._map)

    def compose(self, other):
        """self after other."""
        return PartialBijection({x: self._map[y] for x, y in other._map.items() if y in self._map})

    def inverse(self):
        return PartialBijection({y: x for x, y in self._map.items()})


def generate_from_partial_bijections(gens, bound=5000):
    gens = [g if isinstance(g, PartialBijection) else PartialBijection(g) for g in gens]
    return generate(gens, lambda a, b: a.compose(b), lambda a: a.inverse(), bound)


def spectral_action(S):
    """Canonical action of S on the nonzero characters of E(S).

    Returns (E, chars, maps) where chars lists characters as frozensets of
    S-indices (their supports) and maps[t] sends the index of phi with
    phi(t*t) = 1 to the index of phi(t* . t).
    """
    E = S.idempotent_semilattice()
    chars = [frozenset(E.elements[i] for i in phi) for phi in E.characters()]
    pos = {c: i for i, c in enumerate(chars)}
    maps = []
    for t in range(len(S)):
        ts, src = S.star(t), S.source(t)
        m = {}
        for i, phi in enumerate(chars):
            if src in phi:
                img = frozenset(e for e in E.elements if S.mul(S.mul(ts, e), t) in phi)
                m[i] = pos[img]
        maps.append(m)
    return E, chars, maps


# ---------------------------------------------------------------- groups

@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple
    table: tuple
    identity: int
    inverse: tuple

    def __len__(self):
        return len(self.elements)

    def index(self, g):
        return self.elements.index(g)

    def mul(self, a, b):
        return self.table[a][b]

    def order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k


def group_from_table(elements, table):
    n = len(elements)
    ident = [e for e in range(n) if all(table[e][a] == a == table[a][e] for a in range(n))]
    if len(ident) != 1:
        raise SemigroupError("no identity element")
    e = ident[0]
    inv = []
    for a in range(n):
        bs = [b for b in range(n) if table[a][b] == e and table[b][a] == e]
        if len(bs) != 1:
            raise SemigroupError("element without inverse", elements[a])
        inv.append(bs[0])
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise SemigroupError("not associative", (a, b, c))
    return FiniteGroup(tuple(elements), tuple(tuple(r) for r in table), e, tuple(inv))


def cyclic_group(n):
    return group_from_table(list(range(n)), [[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product(G, H):
    els = [(g, h) for g in G.elements for h in H.elements]
    idx = {x: i for i, x in enumerate(els)}
    table = []
    for (g, h) in els:
        gi, hi = G.index(g), H.index(h)
        table.append([idx[(G.elements[G.mul(gi, G.index(g2))], H.elements[H.mul(hi, H.index(h2))])]
                      for (g2, h2) in els])
    return group_from_table(els, table)


def symmetric_group(n):
    els = list(permutations(range(n)))
    idx = {x: i for i, x in enumerate(els)}
    table = [[idx[tuple(a[b[k]] for k in range(n))] for b in els] for a in els]
    return group_from_table(els, table)


def group_by_name(name):
    """Small named groups: trivial, Zn, Z2xZ2, S3."""
    name = name.strip()
    if name == "trivial":
        return cyclic_group(1)
    if name == "Z2xZ2":
        return direct_product(cyclic_group(2), cyclic_group(2))
    if name == "S3":
        return symmetric_group(3)
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise SemigroupError("unknown group name %r" % name)


# ---------------------------------------------------------------- Exel S(G)

def exel_semigroup(G):
    """Faithful model of S(G): pairs (A, g) with {1, g} in A, product
    (A, g)(B, h) = (A u gB, gh) and (A, g)* = (g^-1 A, g^-1).

    Labels use group indices: (frozenset A, g).  Returns (S, bracket) where
    bracket[t] is the index of [t] = ({1, t}, t).
    """
    n = len(G)
    e = G.identity
    others = [x for x in range(n) if x != e]
    elements = []
    for g in range(n):
        rest = [x for x in others if x != g]
        for mask in range(1 << len(rest)):
            A = {e, g} | {rest[k] for k in range(len(rest)) if mask >> k & 1}
            elements.append((frozenset(A), g))

    def mul(x, y):
        (A, g), (B, h) = x, y
        return (A | frozenset(G.mul(g, b) for b in B), G.mul(g, h))

    def star(x):
        A, g = x
        gi = G.inverse[g]
        return (frozenset(G.mul(gi, a) for a in A), gi)

    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(x, y)] for y in elements] for x in elements]
    st = [index[star(x)] for x in elements]
    S = ISemigroup(elements, table, st, _find_zero(len(elements), table))
    bracket = [index[(frozenset({e, t}), t)] for t in range(n)]
    return S, bracket


def exel_normal_form(G, elem):
    """Word in the generators [t] equal to (A, g): the product of
    [a][a^-1] over a in A minus {1, g}, followed by [g]."""
    A, g = elem
    word = []
    for a in sorted(A - {G.identity, g}):
        word += [a, G.inverse[a]]
    word.append(g)
    return word
