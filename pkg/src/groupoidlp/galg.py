"""Twisted groupoid algebras: cocycles, convolution, involution and norms.

A twist is recorded as a normalised 2-cocycle sigma on composable pairs
(values default to 1).  Elements of the algebra are dense coefficient
vectors indexed by arrows.  Convolution is

    (f * g)(c) = sum over ab = c of sigma(a, b) f(a) g(b)

and the involution is f*(a) = conj(sigma(a, a^-1)) conj(f(a^-1)).
"""

from fractions import Fraction

from .exactnum import QComplex, abs2, absval, conj, is_exact, is_unimodular, parse_scalar
from .lp import solve_lp

ONE = Fraction(1)
ZERO = Fraction(0)


class CocycleError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else "%s (witness %r)" % (msg, witness))
        self.witness = witness


class Cocycle:
    """Scalar 2-cocycle on the composable pairs of a groupoid."""

    def __init__(self, G, values=None):
        self.G = G
        self.values = {}
        for k, v in (values or {}).items():
            if v != 1:
                self.values[k] = v

    def __call__(self, a, b):
        return self.values.get((a, b), ONE)

    def is_trivial(self):
        return not self.values

    def is_exact(self):
        return all(is_exact(v) for v in self.values.values())

    def is_real(self):
        return not any(isinstance(v, (QComplex, complex)) for v in self.values.values())

    @classmethod
    def trivial(cls, G):
        return cls(G)

    @classmethod
    def from_labels(cls, G, values):
        """Cocycle from {(label_a, label_b): scalar}."""
        return cls(G, {(G.index(a), G.index(b)): parse_scalar(v) for (a, b), v in values.items()})


def validate_cocycle(G, sigma, tol=1e-9):
    """Check unimodularity, normalisation and the cocycle identity
    sigma(a,b) sigma(ab,c) = sigma(b,c) sigma(a,bc).  Raises CocycleError."""
    for (a, b) in sigma.values:
        if (a, b) not in G.comp:
            raise CocycleError("value on a non-composable pair", (G.labels[a], G.labels[b]))
    exact = sigma.is_exact()

    def same(x, y):
        return x == y if exact else abs(complex(x) - complex(y)) <= tol

    for (a, b) in G.comp:
        if not is_unimodular(sigma(a, b), tol):
            raise CocycleError("value is not unimodular", (G.labels[a], G.labels[b]))
    for a in range(len(G)):
        if not same(sigma(G.rng[a], a), 1) or not same(sigma(a, G.dom[a]), 1):
            raise CocycleError("not normalised", G.labels[a])
    for (a, b), ab in G.comp.items():
        for c in G.with_range(G.dom[b]):
            lhs = sigma(a, b) * sigma(ab, c)
            rhs = sigma(b, c) * sigma(a, G.comp[(b, c)])
            if not same(lhs, rhs):
                raise CocycleError("cocycle identity fails",
                                   (G.labels[a], G.labels[b], G.labels[c]))
    return True


def coboundary(G, b):
    """Cocycle (a, c) -> b(a) b(c) / b(ac) for a unimodular function b with
    b = 1 on units."""
    vals = {}
    for (a, c), ac in G.comp.items():
        vals[(a, c)] = b.get(a, ONE) * b.get(c, ONE) / b.get(ac, ONE)
    return Cocycle(G, vals)


def opposite_cocycle(sigma):
    """Twist of the opposite groupoid written on the same arrows:
    sigma_op(a, b) = sigma(b^-1, a^-1)."""
    G = sigma.G
    return Cocycle(G, {(a, b): sigma(G.inv[b], G.inv[a]) for (a, b) in G.comp})


class AlgElement:
    """Finitely supported function on the arrows of a twisted groupoid."""

    __slots__ = ("G", "sigma", "coeffs")

    def __init__(self, G, sigma, coeffs):
        self.G = G
        self.sigma = sigma if sigma is not None else Cocycle(G)
        self.coeffs = list(coeffs)
        if len(self.coeffs) != len(G):
            raise ValueError("one coefficient per arrow")

    @classmethod
    def zero(cls, G, sigma=None):
        return cls(G, sigma, [ZERO] * len(G))

    @classmethod
    def from_dict(cls, G, sigma, values, by_label=False):
        c = [ZERO] * len(G)
        for k, v in values.items():
            i = G.index(k) if by_label else k
            c[i] = c[i] + (parse_scalar(v) if isinstance(v, (str, list)) else v)
        return cls(G, sigma, c)

    @classmethod
    def delta(cls, G, sigma, a, value=ONE):
        c = [ZERO] * len(G)
        c[a] = value
        return cls(G, sigma, c)

    def __repr__(self):
        items = ["%r: %s" % (self.G.labels[a], v) for a, v in enumerate(self.coeffs) if v != 0]
        return "AlgElement{%s}" % ", ".join(items)

    def __getitem__(self, a):
        return self.coeffs[a]

    def support(self):
        return [a for a, v in enumerate(self.coeffs) if v != 0]

    def is_exact(self):
        return all(is_exact(v) for v in self.coeffs) and self.sigma.is_exact()

    def is_real(self):
        return (not any(isinstance(v, (QComplex, complex)) for v in self.coeffs)
                and self.sigma.is_real())

    def _like(self, coeffs):
        return AlgElement(self.G, self.sigma, coeffs)

    def __add__(self, other):
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return self._like([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def scale(self, z):
        return self._like([z * a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, z):
        return self.scale(z)

    def __eq__(self, other):
        return (isinstance(other, AlgElement) and self.G is other.G
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def close_to(self, other, tol=1e-9):
        return all(abs(complex(a) - complex(b)) <= tol for a, b in zip(self.coeffs, other.coeffs))

    def star(self):
        return involute(self)


def convolve(f, g):
    if f.G is not g.G:
        raise ValueError("elements live on different groupoids")
    G, sigma = f.G, f.sigma
    out = [ZERO] * len(G)
    fs = [(a, v) for a, v in enumerate(f.coeffs) if v != 0]
    for b, w in enumerate(g.coeffs):
        if w == 0:
            continue
        rb = G.rng[b]
        for a, v in fs:
            if G.dom[a] == rb:
                ab = G.comp[(a, b)]
                out[ab] = out[ab] + sigma(a, b) * v * w
    return f._like(out)


def involute(f):
    G, sigma = f.G, f.sigma
    out = [ZERO] * len(G)
    for a in range(len(G)):
        ai = G.inv[a]
        v = f.coeffs[ai]
        if v != 0:
            out[a] = conj(sigma(a, ai)) * conj(v)
    return f._like(out)


def opposite_element(f):
    """f as an element of the opposite algebra: f_op(a) = f(a^-1), living on
    the same arrows with the opposite twist."""
    G = f.G
    return AlgElement(G, opposite_cocycle(f.sigma), [f.coeffs[G.inv[a]] for a in range(len(G))])


# ---------------------------------------------------------------- norms

def _fiber_max(f, key):
    G = f.G
    sums = {x: ZERO for x in G.units}
    for a, v in enumerate(f.coeffs):
        if v != 0:
            sums[key[a]] = sums[key[a]] + absval(v)
    return max(sums.values()) if sums else ZERO


def norm_dstar(f):
    """max over units x of sum_{d(a) = x} |f(a)|."""
    return _fiber_max(f, f.G.dom)


def norm_rstar(f):
    """max over units x of sum_{r(a) = x} |f(a)|."""
    return _fiber_max(f, f.G.rng)


def norm_I(f):
    return max(norm_dstar(f), norm_rstar(f))


def norm_sup(f):
    return max((absval(v) for v in f.coeffs), default=ZERO)


def norm_projective(f, bisections):
    """Least sum_U sup|f_U| over decompositions f = sum_U f_U with each f_U
    supported in the bisection U.

    Solved exactly as a linear programme for real exact coefficients.
    Returns (value, pieces) with pieces[i] a dict arrow -> coefficient for
    the i-th bisection.  Raises ValueError when the bisections do not cover
    the support of f.
    """
    if not f.is_real() or not all(is_exact(v) for v in f.coeffs):
        raise ValueError("projective norm is computed for exact real coefficients only")
    Us = [frozenset(U) for U in bisections]
    supp = f.support()
    for a in supp:
        if not any(a in U for U in Us):
            raise ValueError("bisections do not cover the support (arrow %r)" % (f.G.labels[a],))
    if not supp:
        return ZERO, [dict() for _ in Us]
    # variables: t_U, then for each (U, a) with a in U n supp: x+, x-, slack
    nU = len(Us)
    cells = [(i, a) for i, U in enumerate(Us) for a in supp if a in U]
    nvar = nU + 3 * len(cells)
    c = [ONE] * nU + [ZERO] * (3 * len(cells))
    A, b = [], []
    for a in supp:
        row = [ZERO] * nvar
        for k, (i, a2) in enumerate(cells):
            if a2 == a:
                row[nU + 3 * k] = ONE
                row[nU + 3 * k + 1] = -ONE
        A.append(row)
        b.append(Fraction(f.coeffs[a]))
    for k, (i, a) in enumerate(cells):
        row = [ZERO] * nvar
        row[nU + 3 * k] = ONE
        row[nU + 3 * k + 1] = ONE
        row[nU + 3 * k + 2] = ONE
        row[i] = -ONE
        A.append(row)
        b.append(ZERO)
    res = solve_lp(c, A, b)
    if res.status != "optimal":
        raise RuntimeError("projective norm LP ended with status %s" % res.status)
    pieces = [dict() for _ in Us]
    for k, (i, a) in enumerate(cells):
        v = res.x[nU + 3 * k] - res.x[nU + 3 * k + 1]
        if v != 0:
            pieces[i][a] = v
    return res.value, pieces


def norm_hierarchy(f):
    """The elementary norms of f as a dict."""
    return {
        "sup": norm_sup(f),
        "dstar": norm_dstar(f),
        "rstar": norm_rstar(f),
        "I": norm_I(f),
    }


def abs2_sum(f):
    return sum((abs2(v) for v in f.coeffs), ZERO)
