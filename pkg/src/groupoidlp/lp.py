"""Exact two-phase simplex over the rationals.

Solves  min c.x  subject to  A x = b, x >= 0  with Fraction arithmetic and
Bland's rule, so the result is an exact optimum (no cycling, no rounding).
"""

from fractions import Fraction


class LPResult:
    def __init__(self, status, x=None, value=None):
        self.status = status
        self.x = x
        self.value = value

    def __repr__(self):
        return "LPResult(%s, value=%s)" % (self.status, self.value)


def _pivot(T, r, c):
    piv = T[r][c]
    row = T[r]
    if piv != 1:
        T[r] = row = [v / piv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f != 0:
                T[i] = [a - f * b for a, b in zip(other, row)]


def _run(T, basis, ncols, maxiter):
    """Optimise the tableau whose last row holds reduced costs (objective
    row is 'cost - z').  Columns >= ncols are never entered."""
    m = len(T) - 1
    for _ in range(maxiter):
        obj = T[-1]
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best, leave = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(T, leave, enter)
        basis[leave] = enter
    raise RuntimeError("simplex iteration cap reached")


def solve_lp(c, A, b, maxiter=100000):
    """Exact solution of min c.x s.t. A x = b, x >= 0.

    Returns LPResult with status 'optimal', 'infeasible' or 'unbounded'.
    """
    c = [Fraction(v) for v in c]
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    m, n = len(A), len(c)
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # phase 1: artificial columns n..n+m-1
    T = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(A[i] + art + [b[i]])
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= A[i][j]
        obj[-1] -= b[i]
    T.append(obj)
    basis = [n + i for i in range(m)]
    _run(T, basis, n, maxiter)
    if T[-1][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, col)
            basis[i] = col
        i += 1
    # phase 2
    T = [row[:n] + [row[-1]] for row in T[:-1]]
    obj = c + [Fraction(0)]
    for i, j in enumerate(basis):
        if obj[j] != 0:
            f = obj[j]
            obj = [a - f * r for a, r in zip(obj, T[i])]
    T.append(obj)
    status = _run(T, basis, n, maxiter)
    if status != "optimal":
        return LPResult(status)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult("optimal", x, value)
