"""Eigenmatrices, multiplicities and Krein numbers of a commutative scheme.

All eigen-computation happens on the (d+1)x(d+1) intersection matrices. A
random combination of the regular-representation matrices is diagonalized;
its eigenvectors are common eigenvectors of every B_i, which yields the rows
of the first eigenmatrix.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import DEFAULT_TOL, FULL_VERIFY_LIMIT, SNAP_MAX_DENOMINATOR
from .errors import DegenerateCombination, SingularBasis, SpectrumInconsistent
from .structure import StructureAlgebra


@dataclass(frozen=True, eq=False)
class Spectrum:
    P: np.ndarray  # P[j, i] = P_i(j)
    Q: np.ndarray  # Q[i, j] = Q_j(i)
    multiplicities: tuple
    krein: np.ndarray  # krein[i, j, k] = q^k_{ij}
    tol: float
    j0: int
    size: int
    valencies: tuple
    residuals: dict = field(default_factory=dict)
    seed: int = 0

    @property
    def rank(self):
        return self.P.shape[0]

    def idempotent(self, j, scheme):
        """E_j as a dense |X|x|X| matrix."""
        Q = self.Q
        return Q[scheme.relations, j] / self.size


def _combination(B, rng):
    c = rng.integers(1, 10_000, size=len(B)) / 10_000.0
    c *= rng.choice([-1.0, 1.0], size=len(B))
    return sum(ci * Bi for ci, Bi in zip(c, B))


def _sort_key(row, first):
    # descending by the first generator's eigenvalue, then by the remaining relations
    order = [first] + [i for i in range(len(row)) if i != first]
    return tuple(x for i in order for x in (-round(row[i].real, 9), -round(row[i].imag, 9)))


def compute_spectrum(tensor, tol=DEFAULT_TOL, seed=0, scheme=None, max_retries=8):
    """Simultaneous eigenstructure of the intersection matrices.

    When ``scheme`` is given and |X| <= FULL_VERIFY_LIMIT the result is
    re-verified on the full adjacency matrices.
    """
    d1 = tensor.rank
    n = tensor.size
    k = np.asarray(tensor.valencies, dtype=np.float64)
    i0 = tensor.identity_index
    B = [tensor.left_matrix(i).astype(np.float64) for i in range(d1)]
    rng = np.random.default_rng(seed)

    for attempt in range(max_retries):
        C = _combination(B, rng)
        w, V = np.linalg.eig(C)
        scale = max(1.0, float(np.abs(w).max()))
        gaps = np.abs(w[:, None] - w[None, :])
        np.fill_diagonal(gaps, np.inf)
        if d1 == 1 or gaps.min() > 1e-6 * scale:
            break
    else:
        raise DegenerateCombination(f"no separating combination found in {max_retries} attempts")

    P = np.empty((d1, d1), dtype=np.complex128)
    for j in range(d1):
        v = V[:, j]
        denom = np.vdot(v, v)
        for i in range(d1):
            P[j, i] = np.vdot(v, B[i] @ v) / denom

    j_triv = int(np.argmin(np.abs(P - k[None, :]).max(axis=1)))
    first = next((i for i in range(d1) if i != i0), i0)
    rest = sorted((j for j in range(d1) if j != j_triv), key=lambda j: _sort_key(P[j], first))
    P = P[[j_triv] + rest]

    mult = n / (np.abs(P) ** 2 / k[None, :]).sum(axis=1)
    Q = (mult[None, :] * P.conj().T) / k[:, None]

    scaleP = max(1.0, float(np.abs(P).max()))
    if np.abs(P.imag).max() <= tol * scaleP and np.abs(Q.imag).max() <= tol * max(1.0, float(np.abs(Q).max())):
        P, Q = P.real.copy(), Q.real.copy()

    residuals = {}
    residuals["PQ"] = float(np.abs(P @ Q - n * np.eye(d1)).max()) / n
    residuals["QP"] = float(np.abs(Q @ P - n * np.eye(d1)).max()) / n
    residuals["multiplicity"] = float(np.abs(mult - np.rint(mult)).max())
    residuals["sum_multiplicity"] = float(abs(mult.sum() - n))
    for name in ("PQ", "QP", "multiplicity"):
        if residuals[name] > tol * scaleP:
            raise SpectrumInconsistent(f"{name} residual {residuals[name]:.3g} exceeds tolerance")
    if np.any(np.rint(mult) < 1):
        raise SpectrumInconsistent("nonpositive multiplicity")

    krein, kres = _krein(Q, tol)
    residuals["krein"] = kres
    spec = Spectrum(
        P=P,
        Q=Q,
        multiplicities=tuple(int(m) for m in np.rint(mult)),
        krein=krein,
        tol=tol,
        j0=0,
        size=n,
        valencies=tuple(tensor.valencies),
        residuals=residuals,
        seed=seed,
    )
    for arr in (P, Q, krein):
        arr.setflags(write=False)
    if scheme is not None and scheme.size <= FULL_VERIFY_LIMIT:
        res = verify_on_matrices(spec, scheme)
        residuals.update(res)
        if res["eigen"] > tol * scaleP * max(1.0, float(max(tensor.valencies))):
            raise SpectrumInconsistent(f"A_i E_j != P_i(j) E_j (residual {res['eigen']:.3g})")
    return spec


def _krein(Q, tol):
    """Expand Q_i o Q_j (columns, entrywise) in the columns of Q."""
    d1 = Q.shape[0]
    sv = np.linalg.svd(Q, compute_uv=False)
    if sv[-1] <= tol * sv[0]:
        raise SingularBasis(f"second eigenmatrix is numerically singular (sigma_min={sv[-1]:.3g})")
    rhs = (Q[:, :, None] * Q[:, None, :]).reshape(d1, d1 * d1)
    sol = np.linalg.solve(Q, rhs)
    resid = float(np.abs(Q @ sol - rhs).max())
    krein = sol.reshape(d1, d1, d1).transpose(1, 2, 0)
    if np.iscomplexobj(krein):
        krein = krein.real.copy()
    return np.ascontiguousarray(krein), resid


def krein_numbers(spectrum):
    """The Krein tensor ``q[i, j, k] = q^k_{ij}`` recomputed from Q, plus the solve residual."""
    return _krein(np.asarray(spectrum.Q), spectrum.tol)


def krein_L_matrix(spectrum, j, order=None):
    """Matrix with entry (k, i) = q^k_{j,i}; ``order`` lists eigenspace indices for rows/columns."""
    d1 = spectrum.rank
    if not 0 <= j < d1:
        raise IndexError(f"eigenspace index {j} outside 0..{d1 - 1}")
    L = spectrum.krein[j].T
    if order is not None:
        order = list(order)
        L = L[np.ix_(order, order)]
    return np.array(L)


def verify_on_matrices(spectrum, scheme):
    """Residuals of the idempotent identities on the full |X|x|X| matrices."""
    d1 = spectrum.rank
    E = [spectrum.idempotent(j, scheme) for j in range(d1)]
    out = {"eigen": 0.0, "idempotent": 0.0, "orthogonal": 0.0, "sum": 0.0}
    for j, Ej in enumerate(E):
        out["idempotent"] = max(out["idempotent"], float(np.abs(Ej @ Ej - Ej).max()))
        for i in range(d1):
            Ai = scheme.adjacency(i)
            out["eigen"] = max(out["eigen"], float(np.abs(Ai @ Ej - spectrum.P[j, i] * Ej).max()))
        for jj in range(j + 1, d1):
            out["orthogonal"] = max(out["orthogonal"], float(np.abs(Ej @ E[jj]).max()))
    out["sum"] = float(np.abs(sum(E) - np.eye(scheme.size)).max())
    return out


def snap(x, max_denominator=SNAP_MAX_DENOMINATOR):
    """Nearest simple rational, for display only."""
    return Fraction(float(np.real(x))).limit_denominator(max_denominator)


def _tridiagonal_ordering(alg, symmetric):
    if not symmetric:
        return None
    d1 = alg.dim
    u = alg.unit
    if d1 == 1:
        return (u,)
    for g in range(d1):
        if g == u:
            continue
        order = [u, g]
        ok = True
        for t in range(1, d1):
            supp = alg.support(alg.table[g, order[t], :])
            allowed = {order[t - 1], order[t]}
            fresh = supp - set(order)
            if not (supp - fresh) <= allowed:
                ok = False
                break
            if t == d1 - 1:
                ok = not fresh
                break
            if len(fresh) != 1:
                ok = False
                break
            nxt = fresh.pop()
            if not alg.is_separated(alg.table[g, order[t], nxt]):
                ok = False
                break
            order.append(nxt)
        if ok and len(order) == d1:
            return tuple(order)
    return None


def univariate_p_check(tensor):
    """Is there a relation ordering satisfying the three-term recurrence? Returns ``(bool, ordering)``."""
    order = _tridiagonal_ordering(StructureAlgebra.from_tensor(tensor), tensor.symmetric)
    return order is not None, order


def univariate_q_check(spectrum, symmetric=True, tol=None):
    """Dual version over the Krein numbers. ``symmetric`` must describe the underlying scheme."""
    alg = StructureAlgebra.from_spectrum(spectrum, tol)
    order = _tridiagonal_ordering(alg, symmetric)
    return order is not None, order


def spectrum_report(spectrum):
    def enc(a):
        a = np.asarray(a)
        if np.iscomplexobj(a):
            return {"real": a.real.tolist(), "imag": a.imag.tolist()}
        return a.tolist()

    return {
        "P": enc(spectrum.P),
        "Q": enc(spectrum.Q),
        "multiplicities": list(spectrum.multiplicities),
        "valencies": list(spectrum.valencies),
        "tol": spectrum.tol,
        "seed": spectrum.seed,
        "residuals": dict(spectrum.residuals),
    }
