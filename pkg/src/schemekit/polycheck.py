"""Deciding multivariate P- and Q-polynomiality of a labeled scheme.

The P side works on the exact intersection numbers; the Q side on the Krein
numbers with a tolerance. Both are driven through :class:`StructureAlgebra`,
so the clauses, the greedy labeling inference and the generator search are
written once.
"""
from dataclasses import dataclass, field
import heapq
import itertools

import numpy as np

from .errors import AmbiguousLabeling, IncompleteLabeling, InferenceFailed, MalformedLabeling
from .orders import MonomialOrder, add, is_lower_set, unit_vector
from .structure import StructureAlgebra

SCHEMA_VERSION = 1


@dataclass(frozen=True, eq=False)
class Labeling:
    """Bijection between a domain in N^ell and relation (or eigenspace) indices."""

    ell: int
    to_index: dict
    kind: str = "P"
    signatures: dict = None

    def __post_init__(self):
        if self.kind not in ("P", "Q"):
            raise MalformedLabeling(f"labeling kind must be 'P' or 'Q', got {self.kind!r}")
        m = {}
        for alpha, idx in dict(self.to_index).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.ell or any(a < 0 for a in alpha):
                raise MalformedLabeling(f"multidegree {alpha} is not in N^{self.ell}")
            m[alpha] = int(idx)
        object.__setattr__(self, "to_index", m)
        if len(set(m.values())) != len(m):
            raise MalformedLabeling("labeling is not injective")

    @property
    def domain(self):
        return sorted(self.to_index)

    @property
    def from_index(self):
        return {v: k for k, v in self.to_index.items()}

    @property
    def generators(self):
        return tuple(self.to_index[unit_vector(self.ell, i)] for i in range(self.ell))

    def index(self, alpha):
        return self.to_index[tuple(alpha)]

    def validate(self, rank, unit):
        """Raise MalformedLabeling unless this labels 0..rank-1 with o -> unit and every e_i present."""
        if sorted(self.to_index.values()) != list(range(rank)):
            raise MalformedLabeling(f"labeling must be a bijection onto 0..{rank - 1}")
        o = (0,) * self.ell
        if self.to_index.get(o) != unit:
            raise MalformedLabeling(f"o must map to the identity index {unit}")
        for i in range(self.ell):
            if unit_vector(self.ell, i) not in self.to_index:
                raise MalformedLabeling(f"domain lacks e_{i + 1}")

    def relabeled(self, perm):
        """Same domain, index ``i`` renamed to ``perm[i]``."""
        return Labeling(self.ell, {a: int(perm[i]) for a, i in self.to_index.items()}, self.kind, self.signatures)

    def to_json(self):
        doc = {
            "schema": SCHEMA_VERSION,
            "ell": self.ell,
            "kind": self.kind,
            "map": [[list(a), i] for a, i in sorted(self.to_index.items(), key=lambda t: t[1])],
        }
        if self.signatures is not None:
            doc["signatures"] = [[list(a), [_encode_number(x) for x in row]] for a, row in sorted(self.signatures.items())]
        return doc

    @classmethod
    def from_json(cls, doc):
        try:
            ell = int(doc["ell"])
            mapping = {tuple(a): int(i) for a, i in doc["map"]}
            sigs = doc.get("signatures")
            if sigs is not None:
                sigs = {tuple(a): tuple(_decode_number(x) for x in row) for a, row in sigs}
            return cls(ell, mapping, doc.get("kind", "P"), sigs)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedLabeling(f"bad labeling JSON: {exc}") from None


def _encode_number(x):
    x = complex(x)
    return x.real if x.imag == 0 else [x.real, x.imag]


def _decode_number(x):
    return complex(x[0], x[1]) if isinstance(x, list) else float(x)


def resolve_dual_labeling(spectrum, signatures, tol=1e-6):
    """Turn ``alpha -> P-row`` signatures into a Q-labeling over this spectrum's eigenspaces."""
    P = np.asarray(spectrum.P)
    mapping = {}
    for alpha, row in signatures.items():
        row = np.asarray(row, dtype=np.complex128)
        if row.shape != (P.shape[1],):
            raise MalformedLabeling(f"signature for {alpha} has length {row.size}, expected {P.shape[1]}")
        dist = np.abs(P - row[None, :]).max(axis=1)
        j = int(np.argmin(dist))
        if dist[j] > tol * max(1.0, float(np.abs(row).max())):
            raise MalformedLabeling(f"signature for {alpha} matches no eigenspace (closest distance {dist[j]:.3g})")
        mapping[tuple(alpha)] = j
    ell = len(next(iter(mapping)))
    return Labeling(ell, mapping, "Q", dict(signatures))


@dataclass
class Certificate:
    verdict: bool
    violations: list = field(default_factory=list)
    leading_coeffs: dict = field(default_factory=dict)

    def to_json(self):
        def num(x):
            return int(x) if isinstance(x, (int, np.integer)) else float(x)

        return {
            "schema": SCHEMA_VERSION,
            "verdict": self.verdict,
            "violations": [
                {"clause": c, "generator": i, "alpha": list(a), "beta": None if b is None else list(b)}
                for c, i, a, b in self.violations
            ],
            "leading_coeffs": [[i, list(a), num(v)] for (i, a), v in sorted(self.leading_coeffs.items())],
        }


def _order_for(order, ell):
    if order is None:
        order = MonomialOrder.grlex(ell)
    if isinstance(order, str):
        order = MonomialOrder.parse(order, ell)
    return order.with_arity(ell)


def _check(alg, labeling, order):
    labeling.validate(alg.dim, alg.unit)
    order = _order_for(order, labeling.ell)
    dom = labeling.to_index
    from_index = labeling.from_index
    violations = []
    leading = {}
    if not is_lower_set(dom):
        for alpha in labeling.domain:
            for i, a in enumerate(alpha):
                below = alpha[:i] + (a - 1,) + alpha[i + 1:]
                if a > 0 and below not in dom:
                    violations.append(("lower_set", None, alpha, below))
    for i, g in enumerate(labeling.generators):
        e = unit_vector(labeling.ell, i)
        for alpha, a_idx in dom.items():
            top = add(alpha, e)
            coeffs = alg.table[g, a_idx, :]
            for k in alg.support(coeffs):
                beta = from_index[k]
                if not order.le(beta, top):
                    violations.append(("degree", i, alpha, beta))
            if top in dom:
                c = coeffs[dom[top]]
                leading[(i, alpha)] = c
                if not alg.is_separated(c):
                    violations.append(("leading", i, alpha, top))
    return Certificate(not violations, violations, leading)


def check_P(tensor, labeling, order=None):
    """Exact test of the intersection-number criterion for P-polynomiality."""
    if labeling.kind != "P":
        raise MalformedLabeling("check_P needs a relation labeling")
    return _check(StructureAlgebra.from_tensor(tensor), labeling, order)


def check_Q(spectrum, labeling, order=None, tol=None):
    """Krein-number criterion for Q-polynomiality with tolerance-based zero tests."""
    if labeling.kind != "Q":
        raise MalformedLabeling("check_Q needs an eigenspace labeling")
    return _check(StructureAlgebra.from_spectrum(spectrum, tol), labeling, order)


def _infer(alg, generators, order, kind):
    generators = tuple(int(g) for g in generators)
    ell = len(generators)
    if len(set(generators)) != ell:
        raise ValueError("generators must be distinct")
    if any(not 0 <= g < alg.dim for g in generators):
        raise ValueError(f"generator indices must lie in 0..{alg.dim - 1}")
    if alg.unit in generators:
        raise ValueError("the identity cannot be a generator")
    order = _order_for(order, ell)
    o = (0,) * ell
    dom = {o: alg.unit}
    for i, g in enumerate(generators):
        dom[unit_vector(ell, i)] = g
    labeled = set(dom.values())
    heap, seen = [], set()

    def push_successors(alpha):
        for i in range(ell):
            gamma = add(alpha, unit_vector(ell, i))
            if gamma not in seen:
                seen.add(gamma)
                heapq.heappush(heap, (order.key(gamma), gamma))

    for alpha in list(dom):
        seen.add(alpha)
    for alpha in list(dom):
        push_successors(alpha)

    while heap:
        _, gamma = heapq.heappop(heap)
        if gamma in dom:
            push_successors(gamma)
            continue
        preds = [j for j in range(ell) if gamma[j] > 0]
        below = [gamma[:j] + (gamma[j] - 1,) + gamma[j + 1:] for j in preds]
        if any(b not in dom for b in below):
            continue  # exterior
        fresh = None
        for j, b in zip(preds, below):
            new = frozenset(alg.support(alg.table[generators[j], dom[b], :])) - labeled
            if fresh is None:
                fresh = new
            elif new != fresh:
                partial = Labeling(ell, dom, kind)
                raise AmbiguousLabeling(gamma, fresh | new, partial)
        if not fresh:
            continue
        if len(fresh) > 1:
            raise AmbiguousLabeling(gamma, fresh, Labeling(ell, dom, kind))
        (k,) = fresh
        dom[gamma] = k
        labeled.add(k)
        push_successors(gamma)

    labeling = Labeling(ell, dom, kind)
    if len(dom) != alg.dim:
        raise IncompleteLabeling(len(dom), alg.dim, labeling)
    cert = _check(alg, labeling, order)
    if not cert.verdict:
        raise InferenceFailed("inferred labeling fails the criterion", labeling, cert)
    return labeling, cert


def infer_labeling(tensor, generators, order=None):
    """Greedy labeling from generator relations; raises InferenceFailed (never claims non-polynomiality)."""
    return _infer(StructureAlgebra.from_tensor(tensor), generators, order, "P")[0]


def infer_dual_labeling(spectrum, generators, order=None, tol=None):
    return _infer(StructureAlgebra.from_spectrum(spectrum, tol), generators, order, "Q")[0]


def _search(alg, ell, order, kind, first_hit):
    d = alg.dim - 1
    if ell < 0 or ell > max(d, 0):
        raise ValueError(f"ell must lie in 0..{d}")
    if ell == 0:
        if d != 0:
            return []
        lab = Labeling(0, {(): alg.unit}, kind)
        return [((), lab, _check(alg, lab, MonomialOrder.grlex(0)))]
    candidates = [i for i in range(alg.dim) if i != alg.unit]
    dims = {}
    results = []
    for gens in itertools.permutations(candidates, ell):
        key = frozenset(gens)
        if key not in dims:
            dims[key] = alg.generated_dimension(sorted(key))
        if dims[key] < alg.dim:
            continue
        try:
            lab, cert = _infer(alg, gens, order, kind)
        except InferenceFailed:
            continue
        results.append((gens, lab, cert))
        if first_hit:
            break
    results.sort(key=lambda r: r[0])
    return results


def search_P(tensor, ell, order=None, first_hit=False):
    """All ordered generator tuples whose greedy labeling passes check_P."""
    return _search(StructureAlgebra.from_tensor(tensor), ell, order, "P", first_hit)


def search_Q(spectrum, ell, order=None, tol=None, first_hit=False):
    return _search(StructureAlgebra.from_spectrum(spectrum, tol), ell, order, "Q", first_hit)


def _essential(alg, order, ell_max, kind):
    d = alg.dim - 1
    if d == 0:
        return 0
    ell_max = d if ell_max is None else min(ell_max, d)
    for ell in range(1, ell_max + 1):
        if _search(alg, ell, order, kind, first_hit=True):
            return ell
    return None


def essential_variate_P(tensor, order=None, ell_max=None):
    """Smallest ell admitting a P-labeling found by search, or None up to ``ell_max``."""
    return _essential(StructureAlgebra.from_tensor(tensor), order, ell_max, "P")


def essential_variate_Q(spectrum, order=None, ell_max=None, tol=None):
    return _essential(StructureAlgebra.from_spectrum(spectrum, tol), order, ell_max, "Q")


def generated_dimension_P(tensor, generators):
    """Exact dimension of the unital subalgebra generated by the given relations."""
    return StructureAlgebra.from_tensor(tensor).generated_dimension(generators)


def generated_dimension_Q(spectrum, generators, tol=None):
    return StructureAlgebra.from_spectrum(spectrum, tol).generated_dimension(generators)
