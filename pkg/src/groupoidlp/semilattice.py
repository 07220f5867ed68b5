"""Finite meet-semilattices: filters, characters, covers and tight characters.

A semilattice is stored as a square meet table over element indices.  A
zero, when present, is an absorbing element that characters must send to 0.
Characters are identified with their supports, which in the finite case are
the principal filters up(z) = {e : z <= e} with z nonzero.
"""

from itertools import combinations


class SemilatticeError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else "%s (witness %r)" % (msg, witness))
        self.witness = witness


class FiniteSemilattice:
    def __init__(self, elements, table, zero=None):
        self.elements = tuple(elements)
        self.table = tuple(tuple(row) for row in table)
        self.zero = zero
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def index(self, label):
        return self._index[label]

    def meet(self, a, b):
        return self.table[a][b]

    def leq(self, a, b):
        return self.table[a][b] == a

    def nonzero(self):
        return [i for i in range(len(self)) if i != self.zero]

    def below(self, e):
        return [z for z in range(len(self)) if self.leq(z, e)]

    def atoms(self):
        """Minimal nonzero elements."""
        nz = self.nonzero()
        return [a for a in nz if not any(b != a and self.leq(b, a) for b in nz)]

    def atoms_below(self, e):
        return [a for a in self.atoms() if self.leq(a, e)]

    def up(self, z):
        return frozenset(e for e in range(len(self)) if self.leq(z, e))

    def filters(self):
        """Proper filters; each is principal in a finite semilattice."""
        return [self.up(z) for z in self.nonzero()]

    def characters(self):
        """Nonzero characters as supports, ordered by their generators."""
        return self.filters()

    def character_values(self, phi):
        return tuple(1 if e in phi else 0 for e in range(len(self)))

    def ultrafilters(self):
        return [self.up(a) for a in self.atoms()]

    def tight_characters(self):
        """Tight characters; for finite semilattices these are the
        ultrafilter characters."""
        return self.ultrafilters()

    def is_cover(self, e, F):
        """Whether every nonzero z <= e meets some member of F.

        Reduces to atoms: each nonzero z below e sits above an atom, and an
        atom meets f exactly when it lies below f.
        """
        F = list(F)
        for f in F:
            if not self.leq(f, e):
                raise SemilatticeError("cover candidate not below e", (f, e))
        for a in self.atoms_below(e):
            if not any(self.meet(a, f) != self.zero for f in F):
                return False
        return True

    def is_cover_literal(self, e, F):
        """Cover test straight from the definition (all nonzero z <= e)."""
        for z in self.below(e):
            if z == self.zero:
                continue
            if not any(self.meet(z, f) != self.zero for f in F):
                return False
        return True

    def covers(self, e):
        """All covers F of e (subsets of the down-set of e); small inputs only."""
        down = self.below(e)
        out = []
        for k in range(len(down) + 1):
            for F in combinations(down, k):
                if self.is_cover(e, F):
                    out.append(F)
        return out


def validate_semilattice(table, elements=None, zero="auto"):
    """Check that ``table`` is a meet table and build the semilattice.

    ``zero`` may be an index, None, or "auto" (the absorbing element when
    there is more than one element).
    """
    n = len(table)
    if elements is None:
        elements = list(range(n))
    if len(elements) != n or any(len(row) != n for row in table):
        raise SemilatticeError("table must be square with one row per element")
    for a in range(n):
        if table[a][a] != a:
            raise SemilatticeError("not idempotent", a)
        for b in range(n):
            if not 0 <= table[a][b] < n:
                raise SemilatticeError("table entry out of range", (a, b))
            if table[a][b] != table[b][a]:
                raise SemilatticeError("not commutative", (a, b))
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise SemilatticeError("not associative", (a, b, c))
    if zero == "auto":
        zero = None
        if n > 1:
            for z in range(n):
                if all(table[z][a] == z for a in range(n)):
                    zero = z
    elif zero is not None and any(table[zero][a] != zero for a in range(n)):
        raise SemilatticeError("designated zero is not absorbing", zero)
    return FiniteSemilattice(elements, table, zero)
