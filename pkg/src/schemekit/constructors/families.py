"""Builders for the scheme families and combinators.

Every builder enumerates its ground set, computes a canonical label tuple for
each ordered pair from the defining invariant, and hands the resulting
relation matrix to :func:`from_relation_matrix`. Relation indices are the
labels sorted by graded-lex key, so the identity (label o) is always index 0.
"""
from dataclasses import dataclass
import itertools
import math
import re

import numpy as np

from ..config import max_ground_set
from ..errors import BoundsExceeded
from ..orders import MonomialOrder
from ..polycheck import Labeling
from ..scheme import from_relation_matrix
from ..spectrum import compute_spectrum
from .finite_field import check_prime, gaussian_binomial, rank_mod, rref_matrices

DODECAHEDRON_EDGES = (
    (0, 1), (0, 10), (0, 19), (1, 2), (1, 8), (2, 3), (2, 6), (3, 4), (3, 19), (4, 5),
    (4, 17), (5, 6), (5, 15), (6, 7), (7, 8), (7, 14), (8, 9), (9, 10), (9, 13), (10, 11),
    (11, 12), (11, 18), (12, 13), (12, 16), (13, 14), (14, 15), (15, 16), (16, 17), (17, 18), (18, 19),
)

# dual labels of the dodecahedron eigenspaces, keyed by the A_1 eigenvalue
DODECAHEDRON_DUAL = ((3.0, (0, 0)), (5**0.5, (0, 1)), (1.0, (0, 2)), (0.0, (1, 0)), (-2.0, (1, 1)), (-(5**0.5), (0, 3)))


# family specifications

@dataclass(frozen=True)
class Complete:
    q: int


@dataclass(frozen=True)
class Cycle:
    n: int


@dataclass(frozen=True)
class CyclicGroup:
    """Thin scheme of Z_n: relation of (x, y) is y - x mod n. Non-symmetric for n >= 3."""

    n: int


@dataclass(frozen=True)
class Dodecahedron:
    pass


@dataclass(frozen=True)
class Hamming:
    n: int
    q: int


@dataclass(frozen=True)
class Johnson:
    n: int
    h: int


@dataclass(frozen=True)
class NonbinaryJohnson:
    q: int
    n: int
    h: int


@dataclass(frozen=True)
class Extension:
    base: object
    n: int


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple


@dataclass(frozen=True)
class Composition:
    outer: object
    fiber: object


@dataclass(frozen=True)
class GeneralizedJohnson:
    fiber: object
    n: int
    h: int


@dataclass(frozen=True)
class Attenuated:
    q: int
    n: int
    m: int
    l: int


@dataclass(frozen=True, eq=False)
class BuiltScheme:
    scheme: object
    labels: tuple  # label tuple of each relation index
    labeling: Labeling  # canonical relation labeling (may fail check_P for non-polynomial inputs)
    dual_signatures: dict  # dual label -> P-row over relation indices, or None
    order_hint: str
    name: str

    @property
    def tensor(self):
        return self.scheme.tensor


# sizes, checked before enumerating anything

def expected_size(spec):
    if isinstance(spec, (Complete,)):
        return spec.q
    if isinstance(spec, (Cycle, CyclicGroup)):
        return spec.n
    if isinstance(spec, Dodecahedron):
        return 20
    if isinstance(spec, Hamming):
        return spec.q**spec.n
    if isinstance(spec, Johnson):
        return math.comb(spec.n, spec.h)
    if isinstance(spec, NonbinaryJohnson):
        return math.comb(spec.n, spec.h) * spec.q**spec.h
    if isinstance(spec, Extension):
        return expected_size(spec.base) ** spec.n
    if isinstance(spec, DirectProduct):
        return math.prod(expected_size(f) for f in spec.factors)
    if isinstance(spec, Composition):
        return expected_size(spec.outer) * expected_size(spec.fiber)
    if isinstance(spec, GeneralizedJohnson):
        return math.comb(spec.n, spec.h) * expected_size(spec.fiber) ** spec.h
    if isinstance(spec, Attenuated):
        return gaussian_binomial(spec.n, spec.m, spec.q) * spec.q ** (spec.m * spec.l)
    raise TypeError(f"unknown family spec {spec!r}")


def _validate(spec):
    def need(cond, msg):
        if not cond:
            raise ValueError(msg)

    if isinstance(spec, Complete):
        need(spec.q >= 1, "complete graph needs q >= 1")
    elif isinstance(spec, Cycle):
        need(spec.n >= 3, "cycle needs n >= 3")
    elif isinstance(spec, CyclicGroup):
        need(spec.n >= 1, "cyclic group needs n >= 1")
    elif isinstance(spec, Hamming):
        need(spec.n >= 1 and spec.q >= 2, "Hamming needs n >= 1 and q >= 2")
    elif isinstance(spec, Johnson):
        need(0 <= spec.h <= spec.n, "Johnson needs 0 <= h <= n")
    elif isinstance(spec, NonbinaryJohnson):
        need(spec.q >= 1 and 0 <= spec.h <= spec.n, "nonbinary Johnson needs q >= 1 and 0 <= h <= n")
    elif isinstance(spec, Extension):
        need(spec.n >= 1, "extension length must be >= 1")
    elif isinstance(spec, DirectProduct):
        need(len(spec.factors) >= 1, "direct product needs a factor")
    elif isinstance(spec, GeneralizedJohnson):
        need(0 <= spec.h <= spec.n, "generalized Johnson needs 0 <= h <= n")
    elif isinstance(spec, Attenuated):
        check_prime(spec.q)
        need(1 <= spec.m <= spec.n and spec.l >= 0, "attenuated space needs 1 <= m <= n and l >= 0")
    for child in _children(spec):
        _validate(child)


def _children(spec):
    if isinstance(spec, Extension):
        return (spec.base,)
    if isinstance(spec, DirectProduct):
        return tuple(spec.factors)
    if isinstance(spec, Composition):
        return (spec.outer, spec.fiber)
    if isinstance(spec, GeneralizedJohnson):
        return (spec.fiber,)
    return ()


def build(spec, verify="witness"):
    """Construct the scheme described by ``spec`` with its canonical labeling."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    _validate(spec)
    size = expected_size(spec)
    cap = max_ground_set()
    if size > cap:
        raise BoundsExceeded(f"{describe(spec)} has {size} points, above the cap {cap}")
    return _BUILDERS[type(spec)](spec, verify)


# assembling a scheme from label codes

def _assemble(codes, decode, name, verify, order_hint="grlex", dual=None):
    """``codes`` is an integer |X|x|X| array; ``decode`` maps a code to its label tuple."""
    uniq, inverse = np.unique(codes, return_inverse=True)
    labels = [tuple(int(v) for v in decode(int(c))) for c in uniq]
    ell = len(labels[0])
    key = MonomialOrder.grlex(ell).key
    order = sorted(range(len(labels)), key=lambda k: key(labels[k]))
    rank_of = np.empty(len(labels), dtype=np.int64)
    rank_of[order] = np.arange(len(labels))
    R = rank_of[inverse.reshape(codes.shape)]
    labels = tuple(labels[k] for k in order)
    scheme = from_relation_matrix(codes.shape[0], R, labels=[_fmt(lb) for lb in labels], verify=verify)
    labeling = Labeling(ell, {lb: i for i, lb in enumerate(labels)}, "P")
    sigs = dual(scheme, labels) if dual is not None else None
    return BuiltScheme(scheme, labels, labeling, sigs, order_hint, name)


def _fmt(label):
    return "".join(str(a) for a in label) if all(a < 10 for a in label) else ",".join(map(str, label))


def _mixed_codes(columns, radix):
    """Combine label coordinates (each an integer array) into a single code array."""
    code = np.zeros_like(columns[0])
    for col in columns:
        code = code * radix + col
    return code


def _mixed_decode(ell, radix):
    def decode(c):
        out = []
        for _ in range(ell):
            c, r = divmod(c, radix)
            out.append(r)
        return tuple(reversed(out))

    return decode


# distance-regular families

def _distance_rows(scheme, thetas):
    """P-rows of a distance-regular scheme from the three-term recurrence at the given eigenvalues."""
    p = scheme.tensor.p
    d = scheme.class_count
    rows = []
    for theta in thetas:
        row = [1.0, theta]
        for i in range(1, d):
            nxt = (theta * row[i] - p[1, i, i] * row[i] - p[1, i, i - 1] * row[i - 1]) / p[1, i, i + 1]
            row.append(nxt)
        rows.append(tuple(row[: d + 1]))
    return rows


def _drg(distances, name, verify, thetas=None, dual_labels=None):
    D = np.asarray(distances, dtype=np.int64)

    def dual(scheme, labels):
        if thetas is None:
            return None
        rows = _distance_rows(scheme, thetas)
        keys = dual_labels if dual_labels is not None else [(j,) for j in range(len(rows))]
        return dict(zip(keys, rows))

    return _assemble(D, lambda c: (c,), name, verify, dual=dual)


def _build_complete(spec, verify):
    q = spec.q
    D = 1 - np.eye(q, dtype=np.int64)
    thetas = [q - 1.0, -1.0] if q > 1 else [0.0]
    return _drg(D, describe(spec), verify, thetas)


def _build_cycle(spec, verify):
    n = spec.n
    x = np.arange(n)
    diff = np.abs(x[:, None] - x[None, :])
    D = np.minimum(diff, n - diff)
    thetas = [2 * math.cos(2 * math.pi * j / n) for j in range(n // 2 + 1)]
    return _drg(D, describe(spec), verify, thetas)


def _build_cyclic(spec, verify):
    n = spec.n
    x = np.arange(n)
    codes = (x[None, :] - x[:, None]) % n

    def dual(scheme, labels):
        # characters of Z_n; relation with label (r,) is the shift by r
        return {(j,): tuple(complex(np.exp(2j * np.pi * j * lb[0] / n)) for lb in labels) for j in range(n)}

    return _assemble(codes, lambda c: (c,), describe(spec), verify, dual=dual)


def _bfs_distances(n, edges):
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    D = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        D[s, s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if D[s, v] < 0:
                        D[s, v] = D[s, u] + 1
                        nxt.append(v)
            frontier = nxt
    return D


def _build_dodecahedron(spec, verify):
    D = _bfs_distances(20, DODECAHEDRON_EDGES)
    thetas = [t for t, _ in DODECAHEDRON_DUAL]
    labels = [lb for _, lb in DODECAHEDRON_DUAL]
    return _drg(D, "dodecahedron", verify, thetas, labels)


def _build_hamming(spec, verify):
    n, q = spec.n, spec.q
    X = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64)
    D = (X[:, None, :] != X[None, :, :]).sum(axis=2)
    thetas = [(q - 1) * n - q * j for j in range(n + 1)]
    return _drg(D, describe(spec), verify, [float(t) for t in thetas])


def _build_johnson(spec, verify):
    n, h = spec.n, spec.h
    subsets = list(itertools.combinations(range(n), h))
    M = np.zeros((len(subsets), n), dtype=np.int64)
    for r, s in enumerate(subsets):
        M[r, list(s)] = 1
    D = h - M @ M.T
    d = min(h, n - h)
    thetas = [float((h - j) * (n - h - j) - j) for j in range(d + 1)]
    return _drg(D, describe(spec), verify, thetas)


def _build_nonbinary_johnson(spec, verify):
    # words over {0, 1, ..., q} with exactly h nonzero entries
    q, n, h = spec.q, spec.n, spec.h
    words = []
    for support in itertools.combinations(range(n), h):
        for symbols in itertools.product(range(1, q + 1), repeat=h):
            w = [0] * n
            for pos, s in zip(support, symbols):
                w[pos] = s
            words.append(w)
    W = np.array(words, dtype=np.int64)
    S = (W > 0).astype(np.int64)
    common = S @ S.T
    t = h - common
    both = (S[:, None, :] * S[None, :, :]).astype(bool)
    a = (both & (W[:, None, :] != W[None, :, :])).sum(axis=2)
    radix = h + 1
    return _assemble(_mixed_codes([t, a], radix), _mixed_decode(2, radix), describe(spec), verify)


# combinators

def _base_rows(base):
    """Spectrum rows of a built base scheme, j0 first, as a complex array P[j, i]."""
    spec = compute_spectrum(base.scheme.tensor)
    return np.asarray(spec.P, dtype=np.complex128)


def _extension_row(P, alpha, n):
    """Row of the extension at dual label alpha: [y^beta] prod_j (sum_s P_s(j) y_s)^{a_j}, a_0 = n - |alpha|."""
    d = P.shape[1] - 1
    poly = {(0,) * d: 1 + 0j}
    powers = [(0, n - sum(alpha))] + [(j + 1, a) for j, a in enumerate(alpha)]
    for j, power in powers:
        for _ in range(power):
            new = {}
            for e, c in poly.items():
                for s in range(d + 1):
                    ee = e if s == 0 else e[: s - 1] + (e[s - 1] + 1,) + e[s:]
                    new[ee] = new.get(ee, 0) + c * P[j, s]
            poly = new
    return poly


def _build_extension(spec, verify):
    base = build(spec.base, verify)
    Rb = base.scheme.relations
    b = base.scheme.size
    d = base.scheme.class_count
    n = spec.n
    X = np.array(list(itertools.product(range(b), repeat=n)), dtype=np.int64)
    radix = n + 1
    counts = []
    for r in range(1, d + 1):
        c = np.zeros((len(X), len(X)), dtype=np.int64)
        for t in range(n):
            c += Rb[np.ix_(X[:, t], X[:, t])] == r
        counts.append(c)
    codes = _mixed_codes(counts, radix) if counts else np.zeros((len(X), len(X)), dtype=np.int64)

    def dual(scheme, labels):
        P = _base_rows(base)
        if P.shape[0] == 1:
            return {(): (1.0,)}
        out = {}
        for alpha in labels:
            poly = _extension_row(P, alpha, n)
            out[alpha] = tuple(_clean(poly.get(lb, 0)) for lb in labels)
        return out

    decode = _mixed_decode(d, radix) if d else (lambda c: ())
    return _assemble(codes, decode, describe(spec), verify, dual=dual if d else None)


def _clean(z):
    z = complex(z)
    return z.real if abs(z.imag) <= 1e-12 * max(1.0, abs(z)) else z


def _build_direct_product(spec, verify):
    parts = [build(f, verify) for f in spec.factors]
    sizes = [p.scheme.size for p in parts]
    widths = [len(p.labels[0]) for p in parts]
    # ground set is the product, first factor most significant
    idx = np.array(list(itertools.product(*(range(s) for s in sizes))), dtype=np.int64)
    radix = max(max(max(lb) for lb in p.labels) for p in parts) + 1
    cols = []
    for k, p in enumerate(parts):
        lab = np.array(p.labels, dtype=np.int64)  # relation index -> label tuple
        R = p.scheme.relations[np.ix_(idx[:, k], idx[:, k])]
        for w in range(widths[k]):
            cols.append(lab[R, w])
    codes = _mixed_codes(cols, radix)
    ell = sum(widths)

    def dual(scheme, labels):
        if any(p.dual_signatures is None for p in parts):
            return None
        out = {}
        for combo in itertools.product(*(sorted(p.dual_signatures.items()) for p in parts)):
            key = tuple(a for dl, _ in combo for a in dl)
            row = []
            for lb in labels:
                val = 1
                pos = 0
                for (_, r), p, w in zip(combo, parts, widths):
                    val *= r[p.labeling.index(lb[pos: pos + w])]
                    pos += w
                row.append(_clean(val))
            out[key] = tuple(row)
        return out

    return _assemble(codes, _mixed_decode(ell, radix), describe(spec), verify, dual=dual)


def _build_composition(spec, verify):
    outer = build(spec.outer, verify)
    fiber = build(spec.fiber, verify)
    nx, ny = outer.scheme.size, fiber.scheme.size
    wx, wy = len(outer.labels[0]), len(fiber.labels[0])
    lab_x = np.array(outer.labels, dtype=np.int64)
    lab_y = np.array(fiber.labels, dtype=np.int64)
    xs = np.repeat(np.arange(nx), ny)
    ys = np.tile(np.arange(ny), nx)
    Rx = outer.scheme.relations[np.ix_(xs, xs)]
    Ry = fiber.scheme.relations[np.ix_(ys, ys)]
    same = Rx == outer.scheme.identity_index
    radix = int(max(lab_x.max(), lab_y.max())) + 1
    cols = [np.where(same, 0, lab_x[Rx, w]) for w in range(wx)]
    cols += [np.where(same, lab_y[Ry, w], 0) for w in range(wy)]
    codes = _mixed_codes(cols, radix)

    def dual(scheme, labels):
        if outer.dual_signatures is None or fiber.dual_signatures is None:
            return None
        ky = fiber.scheme.tensor.valencies
        out = {}
        zero_x = (0,) * wx
        zero_y = (0,) * wy
        for dl, row in outer.dual_signatures.items():
            vals = []
            for lb in labels:
                lx, ly = lb[:wx], lb[wx:]
                if lx != zero_x:
                    vals.append(_clean(ny * row[outer.labeling.index(lx)]))
                else:
                    vals.append(float(ky[fiber.labeling.index(ly)]))
            out[zero_y + dl] = tuple(vals)
        for dl, row in fiber.dual_signatures.items():
            if not any(dl):
                continue
            vals = []
            for lb in labels:
                lx, ly = lb[:wx], lb[wx:]
                vals.append(0.0 if lx != zero_x else _clean(row[fiber.labeling.index(ly)]))
            out[dl + zero_x] = tuple(vals)
        return out

    return _assemble(codes, _mixed_decode(wx + wy, radix), describe(spec), verify, order_hint="lex", dual=dual)


def _build_generalized_johnson(spec, verify):
    fiber = build(spec.fiber, verify)
    n, h = spec.n, spec.h
    ny = fiber.scheme.size
    m = fiber.scheme.class_count
    Ry = fiber.scheme.relations
    # a point is a word over {-1} u Y of length n with exactly h defined positions
    words = []
    for dom in itertools.combinations(range(n), h):
        for vals in itertools.product(range(ny), repeat=h):
            w = [-1] * n
            for pos, v in zip(dom, vals):
                w[pos] = v
            words.append(w)
    W = np.array(words, dtype=np.int64)
    S = W >= 0
    both = S[:, None, :] & S[None, :, :]
    t = h - both.sum(axis=2)
    Wc = np.where(S, W, 0)
    rel = Ry[Wc[:, None, :], Wc[None, :, :]]
    radix = h + 1
    cols = [t] + [(both & (rel == i)).sum(axis=2) for i in range(1, m + 1)]
    codes = _mixed_codes(cols, radix)
    return _assemble(codes, _mixed_decode(m + 1, radix), describe(spec), verify)


def _build_attenuated(spec, verify):
    q, n, m, l = spec.q, spec.n, spec.m, spec.l
    points = []
    for M in rref_matrices(m, n, q):
        for flat in itertools.product(range(q), repeat=m * l):
            N = [flat[r * l:(r + 1) * l] for r in range(m)]
            points.append((M, tuple(tuple(row) + tuple(nr) for row, nr in zip(M, N))))
    size = len(points)
    codes = np.zeros((size, size), dtype=np.int64)
    radix = m + 1
    for a in range(size):
        Ma, Va = points[a]
        for b in range(a, size):
            Mb, Vb = points[b]
            i = m - (2 * m - rank_mod(Ma + Mb, q))
            meet = 2 * m - rank_mod(Va + Vb, q)
            j = m - i - meet
            codes[a, b] = codes[b, a] = i * radix + j
    return _assemble(codes, _mixed_decode(2, radix), describe(spec), verify)


_BUILDERS = {
    Complete: _build_complete,
    Cycle: _build_cycle,
    CyclicGroup: _build_cyclic,
    Dodecahedron: _build_dodecahedron,
    Hamming: _build_hamming,
    Johnson: _build_johnson,
    NonbinaryJohnson: _build_nonbinary_johnson,
    Extension: _build_extension,
    DirectProduct: _build_direct_product,
    Composition: _build_composition,
    GeneralizedJohnson: _build_generalized_johnson,
    Attenuated: _build_attenuated,
}


def attenuated_domain(q, n, m, l):
    return [(i, j) for i in range(min(m, n - m) + 1) for j in range(min(m - i, l) + 1)]


# textual family specifications

def describe(spec):
    if isinstance(spec, Complete):
        return f"k{spec.q}"
    if isinstance(spec, Cycle):
        return f"c{spec.n}"
    if isinstance(spec, CyclicGroup):
        return f"z{spec.n}"
    if isinstance(spec, Dodecahedron):
        return "dodecahedron"
    if isinstance(spec, Hamming):
        return f"hamming:{spec.n},{spec.q}"
    if isinstance(spec, Johnson):
        return f"johnson:{spec.n},{spec.h}"
    if isinstance(spec, NonbinaryJohnson):
        return f"nbjohnson:{spec.q},{spec.n},{spec.h}"
    if isinstance(spec, Attenuated):
        return f"attenuated:{spec.q},{spec.n},{spec.m},{spec.l}"
    if isinstance(spec, Extension):
        return f"extension({describe(spec.base)},{spec.n})"
    if isinstance(spec, DirectProduct):
        return "product(" + ",".join(describe(f) for f in spec.factors) + ")"
    if isinstance(spec, Composition):
        return f"composition({describe(spec.outer)},{describe(spec.fiber)})"
    if isinstance(spec, GeneralizedJohnson):
        return f"genjohnson({describe(spec.fiber)},{spec.n},{spec.h})"
    raise TypeError(f"unknown family spec {spec!r}")


_TOKEN = re.compile(r"\s*([A-Za-z_]+[0-9]*|[0-9]+|[(),:])")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse family spec at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_family(text):
    """Parse e.g. ``k3``, ``hamming:3,2``, ``extension(k3,2)``, ``composition(k3,c5)``, ``power(k2,3)``."""
    tokens = _tokenize(text)
    spec, rest = _parse(tokens)
    if rest:
        raise ValueError(f"trailing input in family spec: {' '.join(rest)}")
    return spec


def _ints(tokens, count):
    vals = []
    for k in range(count):
        if k:
            if not tokens or tokens[0] != ",":
                raise ValueError("expected ','")
            tokens = tokens[1:]
        if not tokens or not tokens[0].isdigit():
            raise ValueError("expected an integer")
        vals.append(int(tokens[0]))
        tokens = tokens[1:]
    return vals, tokens


def _parse(tokens):
    if not tokens:
        raise ValueError("empty family spec")
    head, tokens = tokens[0].lower(), tokens[1:]
    simple = re.fullmatch(r"([kcz])([0-9]+)", head)
    if simple:
        kind, num = simple.group(1), int(simple.group(2))
        return {"k": Complete, "c": Cycle, "z": CyclicGroup}[kind](num), tokens
    if head == "dodecahedron":
        return Dodecahedron(), tokens
    colon = {"complete": (Complete, 1), "cycle": (Cycle, 1), "cyclic": (CyclicGroup, 1), "hamming": (Hamming, 2),
             "johnson": (Johnson, 2), "nbjohnson": (NonbinaryJohnson, 3), "attenuated": (Attenuated, 4)}
    if head in colon:
        cls, count = colon[head]
        if not tokens or tokens[0] != ":":
            raise ValueError(f"{head} needs ':' followed by {count} integer(s)")
        vals, tokens = _ints(tokens[1:], count)
        return cls(*vals), tokens
    if head in ("extension", "product", "power", "composition", "genjohnson"):
        if not tokens or tokens[0] != "(":
            raise ValueError(f"{head} needs '('")
        tokens = tokens[1:]
        if head == "product":
            factors = []
            while True:
                f, tokens = _parse(tokens)
                factors.append(f)
                if tokens and tokens[0] == ",":
                    tokens = tokens[1:]
                    continue
                break
            spec = DirectProduct(tuple(factors))
        else:
            first, tokens = _parse(tokens)
            if not tokens or tokens[0] != ",":
                raise ValueError(f"{head} needs a second argument")
            tokens = tokens[1:]
            if head == "composition":
                second, tokens = _parse(tokens)
                spec = Composition(first, second)
            elif head == "genjohnson":
                (n, h), tokens = _ints(tokens, 2)
                spec = GeneralizedJohnson(first, n, h)
            else:
                (n,), tokens = _ints(tokens, 1)
                spec = Extension(first, n) if head == "extension" else DirectProduct((first,) * n)
        if not tokens or tokens[0] != ")":
            raise ValueError(f"{head} needs ')'")
        return spec, tokens[1:]
    raise ValueError(f"unknown family {head!r}")
