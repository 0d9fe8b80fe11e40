"""Commutative algebras given by structure constants.

Both sides of the theory run on the same machinery: the Bose-Mesner algebra in
the adjacency basis (structure constants p^k_{ij}, exact integers) and the same
algebra under the Hadamard product in the scaled idempotent basis (structure
constants q^k_{ij}, floating point with a tolerance).
"""
from fractions import Fraction

import numpy as np

from .config import DEFAULT_TOL, SEPARATION_FACTOR
from .errors import SingularSystem
from .exact import EchelonSpan, solve_columns


class StructureAlgebra:
    """Basis ``e_0..e_d`` with ``e_i e_j = sum_k table[i, j, k] e_k``."""

    def __init__(self, table, unit, exact, tol=DEFAULT_TOL, separation_factor=SEPARATION_FACTOR):
        self.exact = bool(exact)
        self.unit = int(unit)
        if self.exact:
            self.table = np.asarray(table).astype(object)
            self.tol = 0.0
            self.zero_tol = 0
            self.separation_tol = 0
        else:
            self.table = np.asarray(table, dtype=np.float64)
            self.tol = float(tol)
            self.zero_tol = self.tol * self.scale
            self.separation_tol = separation_factor * self.zero_tol
        self.dim = self.table.shape[0]
        self._left = [self.table[i].T.copy() for i in range(self.dim)]
        self._monomials = {}

    @classmethod
    def from_tensor(cls, tensor):
        return cls(tensor.p, tensor.identity_index, exact=True)

    @classmethod
    def from_spectrum(cls, spectrum, tol=None):
        return cls(spectrum.krein, spectrum.j0, exact=False, tol=spectrum.tol if tol is None else tol)

    @property
    def scale(self):
        # largest infinity norm of a multiplication operator
        t = np.abs(np.asarray(self.table, dtype=np.float64))
        return max(1.0, float(t.sum(axis=2).max()))

    def left_matrix(self, i):
        return self._left[i]

    def basis(self, k):
        v = np.zeros(self.dim, dtype=object if self.exact else np.float64)
        v[:] = 0
        v[k] = 1
        return v

    def mul_basis(self, i, vec):
        return self._left[i].dot(vec)

    def is_zero(self, x):
        return x == 0 if self.exact else abs(x) <= self.zero_tol

    def is_separated(self, x):
        """Nonzero with margin: exact nonzero, or clearly above the noise floor."""
        return x != 0 if self.exact else abs(x) > self.separation_tol

    def support(self, vec):
        return {k for k, x in enumerate(vec) if not self.is_zero(x)}

    def monomial(self, generators, alpha):
        """Coordinates of prod_i e_{g_i}^{alpha_i}."""
        generators, alpha = tuple(generators), tuple(alpha)
        key = (generators, alpha)
        hit = self._monomials.get(key)
        if hit is not None:
            return hit
        if not any(alpha):
            vec = self.basis(self.unit)
        else:
            i = next(k for k, a in enumerate(alpha) if a > 0)
            prev = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
            vec = self.mul_basis(generators[i], self.monomial(generators, prev))
        self._monomials[key] = vec
        return vec

    def evaluate(self, polynomial, generators):
        """Coordinates of ``polynomial`` evaluated at the generator basis elements."""
        out = self.basis(self.unit) * 0
        for deg, c in polynomial.terms.items():
            out = out + self.monomial(generators, deg) * c
        return out

    def generated_dimension(self, generators):
        """Dimension of the unital subalgebra generated by the given basis elements."""
        if self.exact:
            span = EchelonSpan(self.dim)
            add = span.add
        else:
            ortho = []

            def add(v):
                v = np.asarray(v, dtype=np.float64)
                norm = np.linalg.norm(v)
                if norm == 0:
                    return False
                w = v / norm
                for _ in range(2):
                    for q in ortho:
                        w = w - (q @ w) * q
                if np.linalg.norm(w) <= 1e-9:
                    return False
                ortho.append(w / np.linalg.norm(w))
                return True

        start = self.basis(self.unit)
        add(start)
        queue = [start]
        while queue:
            v = queue.pop()
            for g in generators:
                w = self.mul_basis(g, v)
                if add(w):
                    queue.append(w if self.exact else w / np.linalg.norm(np.asarray(w, dtype=float)))
        return span.dimension if self.exact else len(ortho)

    def solve(self, columns, rhs):
        """Unique coefficients expressing ``rhs`` in the given columns.

        Returns ``(coefficients, residual)``; raises SingularSystem when the
        columns are dependent or ``rhs`` is outside their span.
        """
        if self.exact:
            coeffs = solve_columns([list(c) for c in columns], list(rhs))
            return coeffs, Fraction(0)
        A = np.array([np.asarray(c, dtype=np.float64) for c in columns]).T
        b = np.asarray(rhs, dtype=np.float64)
        if A.size == 0:
            resid = float(np.abs(b).max()) if b.size else 0.0
            if resid > self.zero_tol:
                raise SingularSystem("empty basis cannot represent a nonzero vector")
            return [], resid
        sv = np.linalg.svd(A, compute_uv=False)
        if sv[-1] <= self.tol * max(1.0, sv[0]):
            raise SingularSystem(f"monomial columns are numerically dependent (sigma_min={sv[-1]:.3g})")
        coeffs, *_ = np.linalg.lstsq(A, b, rcond=None)
        resid = float(np.abs(A @ coeffs - b).max())
        if resid > self.zero_tol * max(1.0, float(np.abs(b).max())):
            raise SingularSystem(f"vector lies outside the span (residual {resid:.3g})")
        return list(coeffs), resid
