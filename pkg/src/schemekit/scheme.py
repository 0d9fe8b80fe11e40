"""Commutative association schemes on explicit ground sets.

A scheme is stored as its relation matrix: entry ``(x, y)`` is the index of the
relation containing the pair. Adjacency matrices are derived on demand.
"""
from dataclasses import dataclass, field
from functools import cached_property
import json

import numpy as np

from .config import max_ground_set
from .errors import (
    AxiomViolation,
    BoundsExceeded,
    InconsistentProduct,
    NonCommutative,
    NotAScheme,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True, eq=False)
class RelationScheme:
    size: int
    relations: np.ndarray
    class_count: int
    identity_index: int
    transpose_map: tuple
    labels: tuple = None

    @property
    def rank(self):
        return self.class_count + 1

    def adjacency(self, i):
        return (self.relations == i).astype(np.int64)

    @cached_property
    def is_symmetric(self):
        return all(i == t for i, t in enumerate(self.transpose_map))

    @cached_property
    def tensor(self):
        return intersection_tensor(self)

    def relabeled(self, perm):
        """Scheme with relation ``i`` renamed to ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        return from_relation_matrix(self.size, perm[self.relations])

    def __repr__(self):
        return f"RelationScheme(size={self.size}, class_count={self.class_count})"


@dataclass(frozen=True, eq=False)
class IntersectionTensor:
    """Intersection numbers ``p[i, j, k]`` = p^k_{ij} plus the bookkeeping around them."""

    p: np.ndarray
    valencies: tuple
    identity_index: int
    transpose_map: tuple
    size: int
    symmetric: bool = field(default=False)

    @property
    def rank(self):
        return self.p.shape[0]

    def left_matrix(self, i):
        """Regular representation of A_i: column j holds the coordinates of A_i A_j."""
        return self.p[i].T.copy()

    def product(self, i, j):
        return self.p[i, j, :].copy()


def _check_ground_set(size):
    cap = max_ground_set()
    if size > cap:
        raise BoundsExceeded(f"ground set of size {size} exceeds cap {cap}")


def from_relation_matrix(size, relation_matrix, labels=None, verify="witness"):
    """Validate a relation matrix and wrap it as a :class:`RelationScheme`.

    Axioms A1 to A3 are checked exhaustively; A4 and A5 are checked through
    :func:`intersection_tensor` with the requested verification level.
    """
    size = int(size)
    if size < 1:
        raise ValueError("ground set must be nonempty")
    _check_ground_set(size)
    R = np.asarray(relation_matrix)
    if R.shape != (size, size):
        raise AxiomViolation("A1", f"relation matrix has shape {R.shape}, expected {(size, size)}")
    if R.dtype.kind not in "iu":
        if R.dtype.kind == "f" and np.all(np.mod(R, 1) == 0):
            R = R.astype(np.int64)
        else:
            raise AxiomViolation("A1", "relation indices must be integers")
    R = R.astype(np.int64)
    if R.min() < 0:
        x, y = np.argwhere(R < 0)[0]
        raise AxiomViolation("A1", "negative relation index", (int(x), int(y)))
    d = int(R.max())
    present = np.zeros(d + 1, dtype=bool)
    present[np.unique(R)] = True
    if not present.all():
        missing = int(np.flatnonzero(~present)[0])
        raise AxiomViolation("A1", f"relation map is not surjective onto 0..{d}: index {missing} unused")

    diag = np.diagonal(R)
    i0 = int(diag[0])
    bad = np.flatnonzero(diag != i0)
    if bad.size:
        x = int(bad[0])
        raise AxiomViolation("A2", "diagonal mixes relation indices", (0, x) if x else (x, x))
    off = R == i0
    np.fill_diagonal(off, False)
    if off.any():
        x, y = np.argwhere(off)[0]
        raise AxiomViolation("A2", f"identity relation {i0} contains an off-diagonal pair", (int(x), int(y)))

    transpose = [-1] * (d + 1)
    RT = R.T
    for i in range(d + 1):
        images = np.unique(RT[R == i])
        if images.size != 1:
            x, y = np.argwhere((R == i) & (RT != images[0]))[0]
            raise AxiomViolation("A3", f"transpose of relation {i} is not a single relation", (int(x), int(y)))
        transpose[i] = int(images[0])
    if any(transpose[transpose[i]] != i for i in range(d + 1)):
        raise AxiomViolation("A3", "transpose map is not an involution")

    R.setflags(write=False)
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != d + 1:
            raise ValueError(f"expected {d + 1} labels, got {len(labels)}")
    scheme = RelationScheme(size, R, d, i0, tuple(transpose), labels)
    # fills the cache and enforces A4/A5
    scheme.__dict__["tensor"] = intersection_tensor(scheme, full=(verify == "full"))
    return scheme


def _pair_counts(R, x, y, d1):
    counts = np.bincount(R[x, :] * d1 + R[:, y], minlength=d1 * d1)
    return counts.reshape(d1, d1)


def intersection_tensor(scheme, full=False):
    """Intersection numbers by triple counting over witness pairs.

    By default each p^k_{ij} is read from one witness in R_k and cross-checked
    against a second witness when |R_k| >= 2. ``full=True`` checks every pair.
    """
    R = scheme.relations
    n = scheme.size
    d1 = scheme.class_count + 1
    p = np.zeros((d1, d1, d1), dtype=np.int64)
    for k in range(d1):
        pairs = np.argwhere(R == k)
        x, y = (int(v) for v in pairs[0])
        p[:, :, k] = _pair_counts(R, x, y, d1)
        if len(pairs) >= 2:
            other = pairs[pairs[:, 0] != x]
            x2, y2 = (int(v) for v in (other[0] if len(other) else pairs[-1]))
            second = _pair_counts(R, x2, y2, d1)
            if not np.array_equal(second, p[:, :, k]):
                i, j = np.argwhere(second != p[:, :, k])[0]
                raise NotAScheme(
                    f"p^{k}_{{{i},{j}}} depends on the pair: {p[i, j, k]} at {(x, y)} vs {second[i, j]}",
                    ((x, y), (x2, y2)),
                )
    if full:
        offsets = (np.arange(n) * d1 * d1)[None, :]
        for x in range(n):
            keys = R[x, :][:, None] * d1 + R + offsets
            counts = np.bincount(keys.ravel(), minlength=n * d1 * d1).reshape(n, d1, d1)
            expected = np.moveaxis(p[:, :, R[x, :]], 2, 0)
            if not np.array_equal(counts, expected):
                y = int(np.argwhere((counts != expected).any(axis=(1, 2)))[0][0])
                raise NotAScheme(f"triple count at pair {(x, y)} differs from the witness value", (x, y))

    asym = np.argwhere(p != p.transpose(1, 0, 2))
    if asym.size:
        i, j, k = (int(v) for v in asym[0])
        raise NonCommutative(f"p^{k}_{{{i},{j}}} = {p[i, j, k]} but p^{k}_{{{j},{i}}} = {p[j, i, k]}", (i, j, k))

    i0 = scheme.identity_index
    valencies = tuple(int(v) for v in p[:, scheme.transpose_map, i0].diagonal())
    p.setflags(write=False)
    return IntersectionTensor(
        p=p,
        valencies=valencies,
        identity_index=i0,
        transpose_map=scheme.transpose_map,
        size=n,
        symmetric=all(i == t for i, t in enumerate(scheme.transpose_map)),
    )


def adjacency_product_coeffs(scheme, i, j):
    """Coordinates of A_i A_j in the adjacency basis, via an explicit matrix product."""
    d1 = scheme.rank
    if not (0 <= i < d1 and 0 <= j < d1):
        raise IndexError(f"relation indices must lie in 0..{d1 - 1}")
    # float64 BLAS product is exact: entries are bounded by |X| < 2**53
    M = np.rint(scheme.adjacency(i).astype(np.float64) @ scheme.adjacency(j).astype(np.float64)).astype(np.int64)
    R = scheme.relations
    coeffs = np.zeros(d1, dtype=np.int64)
    for k in range(d1):
        x, y = np.argwhere(R == k)[0]
        coeffs[k] = M[x, y]
    mismatch = M != coeffs[R]
    if mismatch.any():
        x, y = np.argwhere(mismatch)[0]
        raise InconsistentProduct(
            f"A_{i} A_{j} is not constant on relation {R[x, y]}: entry {M[x, y]} at {(int(x), int(y))}"
        )
    return coeffs


def fusion(scheme, partition, verify="witness"):
    """Merge relations according to ``partition`` (a sequence of cells of indices)."""
    cells = [tuple(sorted(int(i) for i in cell)) for cell in partition]
    flat = [i for cell in cells for i in cell]
    if any(len(c) == 0 for c in cells):
        raise ValueError("partition cells must be nonempty")
    if sorted(flat) != list(range(scheme.rank)):
        raise ValueError("partition must cover 0..d exactly once")
    i0 = scheme.identity_index
    if (i0,) not in cells:
        raise ValueError("the identity relation must form its own cell")
    cell_set = {frozenset(c) for c in cells}
    for c in cells:
        if frozenset(scheme.transpose_map[i] for i in c) not in cell_set:
            raise ValueError(f"cell {c} is not mapped to a cell by the transpose map")
    new_index = np.empty(scheme.rank, dtype=np.int64)
    for idx, cell in enumerate(cells):
        new_index[list(cell)] = idx
    return from_relation_matrix(scheme.size, new_index[scheme.relations], verify=verify)


def scheme_to_json(scheme, **extra):
    doc = {"schema": SCHEMA_VERSION, "size": scheme.size, "relations": scheme.relations.tolist()}
    if scheme.labels is not None:
        doc["labels"] = list(scheme.labels)
    doc.update(extra)
    return doc


def scheme_from_json(doc, verify="witness"):
    if not isinstance(doc, dict) or "size" not in doc or "relations" not in doc:
        raise ValueError("scheme JSON needs 'size' and 'relations'")
    schema = doc.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ValueError(f"unsupported scheme schema version {schema}")
    return from_relation_matrix(doc["size"], np.array(doc["relations"]), labels=doc.get("labels"), verify=verify)


def write_scheme(path, scheme, **extra):
    with open(path, "w") as fh:
        json.dump(scheme_to_json(scheme, **extra), fh)


def read_scheme(path, verify="witness"):
    with open(path) as fh:
        return scheme_from_json(json.load(fh), verify=verify)
