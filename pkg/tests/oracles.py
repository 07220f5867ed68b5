"""Independent reference computations used by the tests.

Nothing here imports the algorithms under test; each oracle recomputes a
quantity by brute force from its definition.
"""

import itertools
import math
from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------- Exel semigroup by relation closure

def exel_oracle(G, short_len=None, slack=3):
    """S(G) from its presentation by congruence closure on words.

    Generators are the non-identity group elements; [1] is the empty word.
    Relations: [s][t][t^-1] = [st][t^-1] and [s^-1][s][t] = [s^-1][st], with
    [1] deleted wherever it appears.  All words up to the bound go into a
    union-find structure and every relation application that stays within
    the bound is merged, until nothing changes.  Words of length at most
    ``short_len`` are the candidates for normal forms; the bound is
    ``short_len + slack`` so that rewriting can pass through longer words.
    The result is trusted only when every word of length short_len + 1 is
    equivalent to a shorter one, which is asserted.

    Returns (elements, right) where elements are shortest representative
    words and right[(w, g)] is the representative of w[g].
    """
    n = len(G)
    e = G.identity
    gens = [g for g in range(n) if g != e]
    if short_len is None:
        short_len = len(gens) + 1 if gens else 0
    max_len = short_len + slack
    words = [()]
    for k in range(1, max_len + 1):
        words += list(itertools.product(gens, repeat=k))
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def clean(w):
        return tuple(x for x in w if x != e)

    rules = {}
    for s in range(n):
        for t in range(n):
            ti, si = G.inverse[t], G.inverse[s]
            for a, b in ((clean((s, t, ti)), clean((G.mul(s, t), ti))),
                         (clean((si, s, t)), clean((si, G.mul(s, t))))):
                if a != b:
                    rules.setdefault(a, set()).add(b)
                    rules.setdefault(b, set()).add(a)
    rules.pop((), None)
    changed = True
    while changed:
        changed = False
        for w in words:
            iw = index[w]
            for k in (1, 2, 3):
                for pos in range(len(w) - k + 1):
                    for b in rules.get(w[pos:pos + k], ()):
                        w2 = w[:pos] + b + w[pos + k:]
                        j = index.get(w2)
                        if j is not None:
                            ra, rb = find(iw), find(j)
                            if ra != rb:
                                parent[max(ra, rb)] = min(ra, rb)
                                changed = True
    best = {}
    for w in words:
        r = find(index[w])
        if r not in best or (len(w), w) < (len(best[r]), best[r]):
            best[r] = w
    for w in words:
        if len(w) == short_len + 1:
            assert len(best[find(index[w])]) <= short_len, "closure did not stabilise"
    best = {r: w for r, w in best.items() if len(w) <= short_len}
    elements = sorted(best.values(), key=lambda w: (len(w), w))
    right = {}
    for w in elements:
        for g in gens:
            right[(w, g)] = best[find(index[w + (g,)])]
    return elements, right


# ---------------------------------------------------------------- covering LP by vertex enumeration

def _solve(A, b):
    """Exact Gaussian elimination; None when singular."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def projective_norm_oracle(coeffs, bisections):
    """min sum t_U subject to sum_{U containing a} t_U >= |f(a)|, t >= 0,
    by enumerating the vertices of the feasible polyhedron."""
    supp = [a for a, v in enumerate(coeffs) if v != 0]
    m = len(bisections)
    if not supp:
        return Fraction(0)
    rows = []
    for a in supp:
        rows.append(([Fraction(1) if a in U else Fraction(0) for U in bisections], abs(Fraction(coeffs[a]))))
    for i in range(m):
        rows.append(([Fraction(1) if j == i else Fraction(0) for j in range(m)], Fraction(0)))
    best = None
    for active in itertools.combinations(range(len(rows)), m):
        x = _solve([rows[i][0] for i in active], [rows[i][1] for i in active])
        if x is None:
            continue
        if all(sum(c * xi for c, xi in zip(r, x)) >= rhs for r, rhs in rows):
            val = sum(x)
            if best is None or val < best:
                best = val
    return best


# ---------------------------------------------------------------- p-norms by grid search

def grid_opnorm(M, p, n_angles=721):
    """Max of ||Mx||_p over a fine grid of the real unit p-sphere (dims 1-3).
    A lower bound for the real operator norm, converging as the grid grows."""
    M = np.asarray(M, dtype=float)
    d = M.shape[1]
    p = float(p)

    def pnorm(v):
        return np.max(np.abs(v), axis=-1) if math.isinf(p) else np.sum(np.abs(v) ** p, axis=-1) ** (1 / p)

    if d == 1:
        pts = np.array([[1.0]])
    elif d == 2:
        th = np.linspace(0, 2 * np.pi, n_angles)
        pts = np.stack([np.cos(th), np.sin(th)], axis=1)
    elif d == 3:
        k = int(np.sqrt(n_angles * 40))
        th = np.linspace(0, np.pi, k)
        ph = np.linspace(0, 2 * np.pi, 2 * k)
        T, P = np.meshgrid(th, ph)
        pts = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1).reshape(-1, 3)
    else:
        raise ValueError("grid oracle supports dimension <= 3")
    pts = pts / pnorm(pts)[:, None]
    return float(np.max(pnorm(pts @ M.T)))


# ---------------------------------------------------------------- semilattices

def brute_characters(n, meet, zero):
    """All nonzero {0,1}-characters of a meet table, as frozensets."""
    out = []
    for bits in itertools.product([0, 1], repeat=n):
        if not any(bits):
            continue
        if zero is not None and bits[zero]:
            continue
        if all(bits[meet[a][b]] == bits[a] * bits[b] for a in range(n) for b in range(n)):
            out.append(frozenset(i for i in range(n) if bits[i]))
    return out


def brute_tight(n, meet, zero):
    """Tight characters straight from the definition: for each e and each
    finite cover F of e (every nonzero z <= e meets some f in F), phi(e) = 1
    forces phi(f) = 1 for some f in F."""
    def leq(a, b):
        return meet[a][b] == a

    def meets(z, f):
        return zero is None or meet[z][f] != zero

    out = []
    for phi in brute_characters(n, meet, zero):
        ok = True
        for e in phi:
            below = [z for z in range(n) if leq(z, e)]
            nonzero_below = [z for z in below if z != zero]
            for k in range(len(below) + 1):
                for F in itertools.combinations(below, k):
                    if all(any(meets(z, f) for f in F) for z in nonzero_below) \
                            and not any(f in phi for f in F):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(phi)
    return out


# ---------------------------------------------------------------- graphs

def brute_boundary(vertices, edges):
    """Finite paths ending at a vertex that receives no edges (acyclic
    graphs, standard regularity), listed as tuples of edges or (v,)."""
    receives = {v: [e for e, (r, s) in edges.items() if r == v] for v in vertices}
    out = []

    def grow(path, end):
        if not receives[end]:
            out.append(path if path else (end,))
        for e in sorted(receives[end]):
            grow(path + (e,), edges[e][1])

    for v in vertices:
        grow((), v)
    return out


def compare_exel(mul, bracket, n_model, elements, right, identity_word_index):
    """Compare a concrete model of S(G) with the closure oracle.

    ``mul`` multiplies model indices, ``bracket[g]`` is the model index of
    [g] and ``identity_word_index`` the model index of the empty word.
    Returns the evaluation map word -> model index; asserts that it is a
    bijection and that it carries the oracle's right multiplication to the
    model's.
    """
    value = {}
    for w in elements:
        x = identity_word_index
        for g in w:
            x = mul(x, bracket[g])
        value[w] = x
    assert len(set(value.values())) == len(elements), "model identifies distinct oracle classes"
    assert len(elements) == n_model, "model has %d elements, oracle %d" % (n_model, len(elements))
    for (w, g), w2 in right.items():
        assert mul(value[w], bracket[g]) == value[w2], (w, g)
    return value
