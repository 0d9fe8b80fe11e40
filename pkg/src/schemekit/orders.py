"""Monomial orders on N^l, lower-set predicates and the (a, b) partial order.

A monomial order is represented by a sort key: ``order.key(alpha)`` returns a
tuple whose Python ordering is the monomial order, so heaps and ``sorted``
work directly on multidegrees.
"""
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
import json

from .exact import rank


class Cmp(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def unit_vector(ell, i):
    return tuple(1 if k == i else 0 for k in range(ell))


def add(alpha, beta):
    return tuple(a + b for a, b in zip(alpha, beta))


def dominates(alpha, beta):
    """True when alpha >= beta coordinatewise."""
    return all(a >= b for a, b in zip(alpha, beta))


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    arity: int
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grlex", "weights"):
            raise ValueError(f"unknown monomial order kind {self.kind!r}")
        if self.arity < 0:
            raise ValueError("arity must be nonnegative")
        if self.kind == "weights":
            rows = tuple(tuple(int(w) for w in row) for row in self.weights)
            object.__setattr__(self, "weights", rows)
            if not rows:
                raise ValueError("weight order needs at least one row")
            if any(len(r) != self.arity for r in rows):
                raise ValueError("every weight row must have one entry per variable")
            if rank(rows) != len(rows):
                raise ValueError("weight rows must be linearly independent over Q")
            zero = (0,) * self.arity
            for i in range(self.arity):
                if self.key(unit_vector(self.arity, i)) <= self.key(zero):
                    raise ValueError(f"weight order is not a well-order: x_{i + 1} <= 1")

    @classmethod
    def lex(cls, arity):
        return cls("lex", arity)

    @classmethod
    def grlex(cls, arity):
        return cls("grlex", arity)

    @classmethod
    def from_weights(cls, rows):
        rows = tuple(tuple(r) for r in rows)
        return cls("weights", len(rows[0]) if rows else 0, rows)

    @classmethod
    def parse(cls, spec, arity=None):
        """Parse ``lex``, ``grlex`` or ``weights:[[...],...]``."""
        spec = spec.strip()
        if spec.startswith("weights:"):
            order = cls.from_weights(json.loads(spec[len("weights:"):]))
            if arity is not None and order.arity != arity:
                raise ValueError(f"weight order has arity {order.arity}, expected {arity}")
            return order
        if spec in ("lex", "grlex"):
            return cls(spec, 0 if arity is None else arity)
        raise ValueError(f"unknown order specifier {spec!r}")

    def with_arity(self, arity):
        if self.kind == "weights":
            if arity != self.arity:
                raise ValueError("weight orders have a fixed arity")
            return self
        return MonomialOrder(self.kind, arity)

    @property
    def spec(self):
        if self.kind == "weights":
            return "weights:" + json.dumps([list(r) for r in self.weights])
        return self.kind

    def key(self, alpha):
        alpha = tuple(alpha)
        if self.kind == "lex":
            return alpha
        if self.kind == "grlex":
            return (sum(alpha),) + alpha
        return tuple(sum(w * a for w, a in zip(row, alpha)) for row in self.weights) + alpha

    def compare(self, alpha, beta):
        alpha, beta = tuple(alpha), tuple(beta)
        if len(alpha) != self.arity or len(beta) != self.arity:
            raise ValueError(f"arity mismatch: order on N^{self.arity}, got {alpha} and {beta}")
        ka, kb = self.key(alpha), self.key(beta)
        return Cmp.LESS if ka < kb else Cmp.GREATER if ka > kb else Cmp.EQUAL

    def le(self, alpha, beta):
        return self.key(alpha) <= self.key(beta)

    def lt(self, alpha, beta):
        return self.key(alpha) < self.key(beta)

    def sorted(self, items):
        return sorted(items, key=self.key)

    def max(self, items):
        return max(items, key=self.key)


def compare(order, alpha, beta):
    return order.compare(alpha, beta)


def is_lower_set(domain):
    """True iff every coordinatewise-dominated point of a member is a member."""
    pts = {tuple(a) for a in domain}
    for a in pts:
        for i, ai in enumerate(a):
            if ai > 0 and a[:i] + (ai - 1,) + a[i + 1:] not in pts:
                return False
    return True


@dataclass(frozen=True)
class AbOrder:
    """The partial order used by Bernard et al. for bivariate schemes."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        if not (0 <= a <= 1 and 0 <= b < 1):
            raise ValueError("need 0 <= a <= 1 and 0 <= b < 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def parse(cls, spec):
        a, b = spec.split(",")
        return cls(Fraction(a.strip()), Fraction(b.strip()))

    def precedes(self, mn, ij):
        (m, n), (i, j) = mn, ij
        return m + self.a * n <= i + self.a * j and self.b * m + n <= self.b * i + j


def _check_bivariate(points):
    for p in points:
        if len(p) != 2:
            raise ValueError("(a,b)-compatibility is only defined on N^2")


def ab_compatible_domain(ab, domain):
    pts = {tuple(p) for p in domain}
    _check_bivariate(pts)
    for i, j in pts:
        # the dominated region is bounded by m <= i + a*j and n <= j + b*i
        for m in range(int(i + ab.a * j) + 1):
            for n in range(int(j + ab.b * i) + 1):
                if ab.precedes((m, n), (i, j)) and (m, n) not in pts:
                    return False
    return True


def ab_compatible_poly(ab, polynomial, degree):
    """``polynomial`` maps exponent pairs to coefficients."""
    terms = {tuple(k): v for k, v in dict(polynomial).items() if v != 0}
    _check_bivariate(list(terms) + [tuple(degree)])
    if terms.get(tuple(degree), 0) == 0:
        return False
    return all(ab.precedes(mn, degree) for mn in terms)


def ab_implies_grlex(alpha, beta, ab):
    """Check that alpha <=_(a,b) beta implies swap(alpha) <=_grlex swap(beta)."""
    if not ab.precedes(alpha, beta):
        return True
    grlex = MonomialOrder.grlex(2)
    return grlex.le(tuple(reversed(alpha)), tuple(reversed(beta)))
