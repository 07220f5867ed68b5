"""Scalars, weighted l^p spaces and operator p-norms.

Exact arithmetic uses ``fractions.Fraction`` for real numbers and
``QComplex`` (a pair of Fractions) for complex numbers with rational parts.
Floating mode uses plain ``float``/``complex`` and numpy arrays.

Matrices are numpy arrays.  Exact matrices have ``dtype=object`` and hold
Fraction or QComplex entries; everything else is treated as floating point.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

INF = math.inf


class QComplex:
    """Complex number with rational real and imaginary parts.

    Arithmetic results with zero imaginary part collapse back to Fraction,
    so exact real data never silently turns complex.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def make(re, im):
        if im == 0:
            return Fraction(re)
        return QComplex(re, im)

    @staticmethod
    def _parts(z):
        if isinstance(z, QComplex):
            return z.re, z.im
        if isinstance(z, (int, Fraction)):
            return Fraction(z), Fraction(0)
        return None

    def __add__(self, other):
        o = self._parts(other)
        if o is None:
            return complex(self) + other
        return QComplex.make(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __sub__(self, other):
        o = self._parts(other)
        if o is None:
            return complex(self) - other
        return QComplex.make(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._parts(other)
        if o is None:
            return other - complex(self)
        return QComplex.make(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._parts(other)
        if o is None:
            return complex(self) * other
        a, b = self.re, self.im
        c, d = o
        return QComplex.make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._parts(other)
        if o is None:
            return complex(self) / other
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("QComplex division by zero")
        a, b = self.re, self.im
        return QComplex.make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._parts(other)
        if o is None:
            return other / complex(self)
        return QComplex(o[0], o[1]) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return complex(self) ** n
        if n < 0:
            return 1 / (self ** (-n))
        out = Fraction(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._parts(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return absval(self)

    def conjugate(self):
        return QComplex(self.re, -self.im)

    def __repr__(self):
        return "QComplex(%s, %s)" % (self.re, self.im)

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return "%s%s%si" % (self.re, sign, abs(self.im))


I = QComplex(0, 1)


def is_exact(z):
    return isinstance(z, (int, Fraction, QComplex)) and not isinstance(z, bool)


def conj(z):
    if isinstance(z, (int, Fraction, float)):
        return z
    return z.conjugate()


def abs2(z):
    """|z|^2, exact for exact input."""
    if isinstance(z, QComplex):
        return z.re * z.re + z.im * z.im
    if isinstance(z, complex):
        return z.real * z.real + z.imag * z.imag
    return z * z


def _isqrt_exact(q):
    """Exact square root of a nonnegative Fraction, or None."""
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def absval(z):
    """Absolute value; exact whenever the result is rational."""
    if isinstance(z, QComplex):
        if z.im == 0:
            return abs(z.re)
        if z.re == 0:
            return abs(z.im)
        r = _isqrt_exact(abs2(z))
        return r if r is not None else math.sqrt(float(abs2(z)))
    return abs(z)


def is_unimodular(z, tol=1e-12):
    if is_exact(z):
        return abs2(z) == 1
    return abs(abs(z) - 1) <= tol


def parse_scalar(value):
    """Read a scalar from JSON-style data.

    Accepts ints, "n/d" or decimal strings, "i"/"-i", a two-element list
    [re, im], or a float (kept as float).
    """
    if isinstance(value, bool):
        raise ValueError("boolean is not a scalar")
    if isinstance(value, (int, Fraction, QComplex)):
        return value if not isinstance(value, int) else Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return QComplex.make(parse_scalar(value[0]), parse_scalar(value[1]))
    if isinstance(value, str):
        s = value.strip()
        if s in ("i", "+i"):
            return I
        if s == "-i":
            return -I
        return Fraction(s)
    raise ValueError("cannot read scalar from %r" % (value,))


def scalar_to_json(z):
    if isinstance(z, QComplex):
        return [str(z.re), str(z.im)]
    if isinstance(z, Fraction):
        return str(z)
    if isinstance(z, complex):
        return [repr(z.real), repr(z.imag)]
    return z if not isinstance(z, int) else str(z)


# ---------------------------------------------------------------- exponents

def as_exponent(p):
    """Normalise an exponent to Fraction or INF."""
    if isinstance(p, str):
        s = p.strip().lower()
        if s in ("inf", "infinity", "oo"):
            return INF
        p = Fraction(s)
    if isinstance(p, float):
        if math.isinf(p):
            if p < 0:
                raise ValueError("exponent must lie in [1, inf]")
            return INF
        p = Fraction(p).limit_denominator(10 ** 6)
    p = Fraction(p)
    if p < 1:
        raise ValueError("exponent must lie in [1, inf], got %s" % p)
    return p


def p_dual(p):
    """Conjugate exponent q with 1/p + 1/q = 1."""
    p = as_exponent(p)
    if p == INF:
        return Fraction(1)
    if p == 1:
        return INF
    return p / (p - 1)


def _iroot(n, k):
    """Floor of the k-th root of a nonnegative integer."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def exact_root(q, p):
    """q ** (1/p) as a Fraction when it is rational, else None."""
    p = as_exponent(p)
    q = Fraction(q)
    if q <= 0:
        raise ValueError("weights must be positive")
    if p == INF:
        return Fraction(1)
    a, b = p.numerator, p.denominator
    qb = q ** b
    n, d = qb.numerator, qb.denominator
    rn, rd = _iroot(n, a), _iroot(d, a)
    if rn ** a == n and rd ** a == d:
        return Fraction(rn, rd)
    return None


def real_root(q, p):
    """q ** (1/p), exact when possible."""
    r = exact_root(q, p)
    if r is not None:
        return r
    return float(q) ** (1.0 / float(p))


# ---------------------------------------------------------------- matrices

def is_exact_matrix(M):
    M = np.asarray(M)
    return M.dtype == object and all(is_exact(z) for z in M.flat)


def exact_matrix(rows):
    """Object array of exact scalars from nested lists."""
    A = np.array(rows, dtype=object)
    out = np.empty(A.shape, dtype=object)
    for idx, z in np.ndenumerate(A):
        out[idx] = parse_scalar(z) if not isinstance(z, QComplex) else z
    return out


def zeros(n, m=None):
    m = n if m is None else m
    Z = np.empty((n, m), dtype=object)
    Z.fill(Fraction(0))
    return Z


def eye(n):
    Z = zeros(n)
    for i in range(n):
        Z[i, i] = Fraction(1)
    return Z


def to_numeric(M):
    """Floating copy of a matrix (complex only when needed)."""
    M = np.asarray(M)
    if M.dtype != object:
        return M.astype(complex) if np.iscomplexobj(M) else M.astype(float)
    if any(isinstance(z, (QComplex, complex)) for z in M.flat):
        return np.array([[complex(z) for z in row] for row in M.reshape(M.shape[0], -1)],
                        dtype=complex).reshape(M.shape)
    return np.array([float(z) for z in M.flat], dtype=float).reshape(M.shape)


def exact_matmul(A, B):
    """Product of exact matrices.  Rational matrices are scaled to integers
    first, which is much faster than multiplying Fractions."""
    A, B = np.asarray(A), np.asarray(B)
    if not (all(type(z) is Fraction for z in A.flat) and all(type(z) is Fraction for z in B.flat)):
        return A.dot(B)
    da = math.lcm(*(z.denominator for z in A.flat)) if A.size else 1
    db = math.lcm(*(z.denominator for z in B.flat)) if B.size else 1
    Ai = np.empty(A.shape, dtype=object)
    Bi = np.empty(B.shape, dtype=object)
    Ai.flat = [z.numerator * (da // z.denominator) for z in A.flat]
    Bi.flat = [z.numerator * (db // z.denominator) for z in B.flat]
    P = Ai.dot(Bi)
    d = da * db
    out = np.empty(P.shape, dtype=object)
    out.flat = [Fraction(int(x), d) for x in P.flat]
    return out


def mat_equal(A, B, tol=0.0):
    """Exact comparison for exact matrices, tolerance comparison otherwise."""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        return False
    if tol == 0.0 and is_exact_matrix(A) and is_exact_matrix(B):
        return all(a == b for a, b in zip(A.flat, B.flat))
    if A.size == 0:
        return True
    return bool(np.max(np.abs(to_numeric(A) - to_numeric(B))) <= max(tol, 1e-12))


def is_zero_matrix(A, tol=0.0):
    A = np.asarray(A)
    if tol == 0.0 and is_exact_matrix(A):
        return all(z == 0 for z in A.flat)
    return A.size == 0 or bool(np.max(np.abs(to_numeric(A))) <= max(tol, 1e-12))


@dataclass(frozen=True)
class WeightedSpace:
    """l^p of a finite set with positive point masses."""

    points: tuple
    weights: tuple
    p: object

    def __post_init__(self):
        if len(self.points) != len(self.weights):
            raise ValueError("one weight per point")
        object.__setattr__(self, "p", as_exponent(self.p))
        ws = tuple(w if isinstance(w, float) else Fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def counting(cls, points, p):
        return cls(tuple(points), tuple(Fraction(1) for _ in points), p)

    @property
    def dim(self):
        return len(self.points)

    def index(self, x):
        return self.points.index(x)

    def norm(self, xi):
        return lp_norm(xi, self.p, self.weights)


def lp_norm(xi, p, weights=None):
    p = as_exponent(p)
    a = np.abs(to_numeric(np.asarray(xi).reshape(-1)))
    if a.size == 0:
        return 0.0
    if p == INF:
        return float(a.max())
    w = np.ones_like(a) if weights is None else np.array([float(x) for x in weights])
    return float((w * a ** float(p)).sum() ** (1.0 / float(p)))


# ---------------------------------------------------------------- p-norms

def _abs_entries(M):
    M = np.asarray(M)
    if M.dtype == object:
        out = np.empty(M.shape, dtype=object)
        for idx, z in np.ndenumerate(M):
            out[idx] = absval(z)
        return out
    return np.abs(M)


def _max_sum(A, axis):
    if A.size == 0:
        return Fraction(0)
    sums = A.sum(axis=axis)
    best = max(sums.tolist())
    return best


def opnorm_exact(M, p):
    """Operator norm on unweighted l^p for p in {1, 2, inf}.

    p=1 is the largest absolute column sum and p=inf the largest absolute
    row sum; both are exact (Fraction) for exact rational input.  p=2 is the
    largest singular value in floating point.
    """
    p = as_exponent(p)
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError("matrix expected")
    if M.size == 0:
        return Fraction(0)
    if p == 1:
        return _max_sum(_abs_entries(M), 0)
    if p == INF:
        return _max_sum(_abs_entries(M), 1)
    if p == 2:
        return float(np.linalg.norm(to_numeric(M), 2))
    raise ValueError("opnorm_exact handles p in {1, 2, inf}; use opnorm_bracket")


@dataclass(frozen=True)
class Bracket:
    lower: float
    upper: float
    converged: bool
    method: str = ""

    @property
    def width(self):
        return self.upper - self.lower

    def status(self):
        return "CONVERGED" if self.converged else "NOT-CONVERGED"


def _bipartite_components(nz):
    """Connected pieces of the row/column incidence pattern."""
    n, m = nz.shape
    seen_r, seen_c = [False] * n, [False] * m
    out = []
    for start in range(n):
        if seen_r[start] or not nz[start].any():
            continue
        rows, cols = [], []
        stack = [("r", start)]
        seen_r[start] = True
        while stack:
            kind, i = stack.pop()
            if kind == "r":
                rows.append(i)
                for j in np.nonzero(nz[i])[0]:
                    if not seen_c[j]:
                        seen_c[j] = True
                        stack.append(("c", int(j)))
            else:
                cols.append(i)
                for k in np.nonzero(nz[:, i])[0]:
                    if not seen_r[k]:
                        seen_r[k] = True
                        stack.append(("r", int(k)))
        out.append((sorted(rows), sorted(cols)))
    return out


def _phase_equivalence(A, components):
    """Unimodular row and column phases r, c with A = diag(r) |A| diag(c),
    or None.  Such an A has the same l^p norms as |A|."""
    n, m = A.shape
    r, c = np.zeros(n, dtype=complex), np.zeros(m, dtype=complex)
    for rows, cols in components:
        r[rows[0]] = 1.0
        stack = [("r", rows[0])]
        while stack:
            kind, i = stack.pop()
            if kind == "r":
                for j in np.nonzero(A[i])[0]:
                    ph = (A[i, j] / abs(A[i, j])) / r[i]
                    if c[j] == 0:
                        c[j] = ph
                        stack.append(("c", int(j)))
                    elif abs(c[j] - ph) > 1e-12:
                        return None
            else:
                for k in np.nonzero(A[:, i])[0]:
                    ph = (A[k, i] / abs(A[k, i])) / c[i]
                    if r[k] == 0:
                        r[k] = ph
                        stack.append(("r", int(k)))
                    elif abs(r[k] - ph) > 1e-12:
                        return None
    r[r == 0] = 1.0
    c[c == 0] = 1.0
    return r, c


def _boyd_component(B, p, tol, maxiter):
    """Power iteration for a nonnegative block with connected pattern.

    Returns (lower, upper, converged).  The upper value is the Schur-test
    bound max_j (B^T (Bx)^(p-1))_j / x_j^(p-1), raised to 1/p, which holds
    for every positive x and meets the lower value at the maximiser.
    """
    q1 = 1.0 / (p - 1.0)
    x = np.ones(B.shape[1])
    lower, upper = 0.0, math.inf
    for _ in range(maxiter):
        y = B @ x
        nx = (x ** p).sum() ** (1.0 / p)
        lower = max(lower, (y ** p).sum() ** (1.0 / p) / nx)
        z = B.T @ (y ** (p - 1.0))
        upper = min(upper, float(np.max(z / x ** (p - 1.0))) ** (1.0 / p))
        if upper - lower <= tol * upper:
            return lower, upper, True
        x = z ** q1
        x = x / x.max()
        if not np.all(x > 0):
            break
    return lower, upper, False


def _dual_map(Y, r):
    a = np.abs(Y)
    safe = np.where(a > 0, a, 1.0)
    return (Y / safe) * a ** (r - 1.0)


def _ascent_lower(A, p, starts, iters, rng, extra=None):
    """Best ||Ax||_p/||x||_p over a multistart ascent."""
    pf = float(p)
    qf = pf / (pf - 1.0)
    n, m = A.shape
    cplx = np.iscomplexobj(A)
    X = rng.standard_normal((m, starts))
    if cplx:
        X = X + 1j * rng.standard_normal((m, starts))
    if extra is not None:
        X = np.column_stack([X] + [e.reshape(-1, 1) for e in extra])
    best = 0.0

    def ratios(X):
        num = (np.abs(A @ X) ** pf).sum(axis=0) ** (1.0 / pf)
        den = (np.abs(X) ** pf).sum(axis=0) ** (1.0 / pf)
        den = np.where(den > 0, den, np.inf)
        return num / den

    for _ in range(iters):
        best = max(best, float(ratios(X).max()))
        Z = A.conj().T @ _dual_map(A @ X, pf)
        Xn = _dual_map(Z, qf)
        scale = np.abs(Xn).max(axis=0)
        if not np.all(scale > 0):
            break
        X = Xn / scale
    best = max(best, float(ratios(X).max()))
    return best


def opnorm_bracket(M, p, starts=16, seed=0, tol=1e-12, maxiter=20000, ascent_iters=200):
    """Certified lower/upper bracket of the l^p operator norm.

    The lower value is attained by an explicit vector.  The upper value is
    the smaller of the Riesz-Thorin bound ||M||_1^(1/p) ||M||_inf^(1/q) and
    the Schur-test bound for |M| at the power-iteration vector.  When M is
    |M| up to unimodular row and column phases (nonnegative M in
    particular) the norms agree and the two ends meet up to ``tol``.
    """
    p = as_exponent(p)
    A = to_numeric(M)
    if A.size == 0:
        return Bracket(0.0, 0.0, True, "empty")
    if p in (1, INF, 2):
        v = float(opnorm_exact(A, p))
        return Bracket(v, v, True, "exact")
    pf = float(p)
    qf = pf / (pf - 1.0)
    absA = np.abs(A)
    n1 = float(absA.sum(axis=0).max())
    ninf = float(absA.sum(axis=1).max())
    rt = n1 ** (1.0 / pf) * ninf ** (1.0 / qf)
    if rt == 0.0:
        return Bracket(0.0, 0.0, True, "zero")
    lo_abs, hi_abs, conv = 0.0, 0.0, True
    boyd_vec = np.zeros(A.shape[1])
    components = _bipartite_components(absA > 0)
    for rows, cols in components:
        B = absA[np.ix_(rows, cols)]
        lo, hi, ok = _boyd_component(B, pf, tol, maxiter)
        conv = conv and ok
        if lo > lo_abs:
            lo_abs = lo
            boyd_vec = np.zeros(A.shape[1])
            x = np.ones(len(cols))
            for _ in range(50):
                x = (B.T @ ((B @ x) ** (pf - 1.0))) ** (1.0 / (pf - 1.0))
                x = x / x.max()
            boyd_vec[cols] = x
        hi_abs = max(hi_abs, hi)
    upper = min(rt, hi_abs * (1.0 + 1e-13))
    nonneg = not np.iscomplexobj(A) and bool(np.all(A >= 0))
    if nonneg:
        lower = lo_abs
        method = "boyd"
    elif _phase_equivalence(A, components) is not None:
        # x -> conj(c) x carries the Boyd vector of |M| to one for M
        lower = lo_abs
        method = "boyd-phase"
    else:
        rng = np.random.default_rng(seed)
        lower = _ascent_lower(A, pf, starts, ascent_iters, rng, extra=[boyd_vec])
        method = "ascent"
    lower = float(min(lower, upper))
    upper = float(upper)
    converged = bool((upper - lower) <= 1e-6 * upper)
    return Bracket(lower, upper, converged, method)


def opnorm(M, p, **kw):
    """Exact norm for p in {1, 2, inf}, otherwise the bracket's upper end."""
    p = as_exponent(p)
    if p in (1, 2, INF):
        return opnorm_exact(M, p)
    return opnorm_bracket(M, p, **kw).upper


def weighted_conjugate(M, space):
    """D^(1/p) M D^(-1/p), turning an operator on the weighted space into
    the matching matrix on unweighted l^p."""
    M = np.asarray(M)
    p = space.p
    n = space.dim
    if M.shape != (n, n):
        raise ValueError("matrix shape %s does not match space of dim %d" % (M.shape, n))
    if p == INF:
        return M.copy()
    roots = [real_root(w, p) if not isinstance(w, float) else w ** (1.0 / float(p))
             for w in space.weights]
    exact = M.dtype == object and all(isinstance(r, Fraction) for r in roots)
    if exact:
        out = np.empty(M.shape, dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = M[i, j] * roots[i] / roots[j]
        return out
    A = to_numeric(M)
    r = np.array([float(x) for x in roots])
    return A * r[:, None] / r[None, :]


def weighted_opnorm(M, space, **kw):
    """Operator norm on the weighted space (bracket upper end when p is
    outside {1, 2, inf})."""
    return opnorm(weighted_conjugate(M, space), space.p, **kw)
