"""Exact rational linear algebra for the small dense systems met in Bose-Mesner algebras.

Everything works on lists of ``Fraction`` (or ``int``) so that intersection-number
arithmetic never rounds.
"""
from fractions import Fraction

from .errors import SingularSystem


def _frac_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form. Returns ``(matrix, pivot_columns)``."""
    m = _frac_rows(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def columns_to_rows(columns):
    if not columns:
        return []
    return [list(row) for row in zip(*columns)]


def solve_columns(columns, rhs):
    """Solve ``sum_k c_k * columns[k] = rhs`` exactly; the solution must be unique."""
    n = len(columns)
    if n == 0:
        if any(Fraction(x) != 0 for x in rhs):
            raise SingularSystem("empty basis cannot represent a nonzero vector")
        return []
    aug = [list(row) + [b] for row, b in zip(columns_to_rows(columns), rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        raise SingularSystem("right-hand side is outside the span of the columns")
    if len(pivots) < n:
        raise SingularSystem("columns are linearly dependent; solution is not unique")
    return [red[k][n] for k in range(n)]


class EchelonSpan:
    """Incrementally maintained echelon basis of a subspace of Q^n."""

    def __init__(self, n):
        self.n = n
        self._rows = []  # (pivot, row) with row[pivot] == 1

    @property
    def dimension(self):
        return len(self._rows)

    def reduce(self, vec):
        v = [Fraction(x) for x in vec]
        for pivot, row in self._rows:
            if v[pivot] != 0:
                f = v[pivot]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec):
        """Insert ``vec``; return True if it enlarged the span."""
        v = self.reduce(vec)
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        inv = 1 / v[pivot]
        v = [x * inv for x in v]
        self._rows = [
            (p, [a - r[pivot] * b for a, b in zip(r, v)]) if r[pivot] != 0 else (p, r)
            for p, r in self._rows
        ]
        self._rows.append((pivot, v))
        return True

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))


def as_integer(x):
    """Return ``int(x)`` when the rational is integral, else raise ValueError."""
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
    return x.numerator
