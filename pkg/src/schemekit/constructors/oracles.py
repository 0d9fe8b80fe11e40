"""Closed-form intersection numbers for the structured families, and their comparison with brute force.

Each oracle returns a map ``beta -> coefficient`` for a product A_g A_alpha,
with exterior indices dropped. :func:`oracle_compare` evaluates an oracle over
every in-domain index and reports the first disagreement with the intersection
numbers of the explicitly built scheme.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import itertools

import numpy as np

from ..errors import OracleDomainError
from ..orders import unit_vector
from ..spectrum import compute_spectrum
from .families import Attenuated, Composition, Extension, GeneralizedJohnson, attenuated_domain, build
from .finite_field import q_number


def _shift(alpha, plus=None, minus=None):
    a = list(alpha)
    if plus is not None:
        a[plus] += 1
    if minus is not None:
        a[minus] -= 1
    return tuple(a)


def _accumulate(out, beta, value, inside):
    if value != 0 and inside(beta):
        out[beta] = out.get(beta, 0) + value


def extension_recurrence_oracle(base_tensor, n, i, alpha):
    """Coefficients of A_{e_i} A_alpha in the length-n extension of the base scheme.

    ``i`` is a base relation index (1..d) and alpha counts base relations 1..d.
    The term on alpha - e_{i'} uses the transpose i' of i, which is what the
    counting argument gives for non-symmetric bases.
    """
    p = base_tensor.p
    d = base_tensor.rank - 1
    if base_tensor.identity_index != 0:
        raise OracleDomainError("base scheme must have its identity at index 0")
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != d or any(a < 0 for a in alpha) or sum(alpha) > n:
        raise OracleDomainError(f"{alpha} is outside the extension domain")
    if not 1 <= i <= d:
        raise OracleDomainError(f"generator {i} is not a non-identity base relation")

    def inside(beta):
        return all(b >= 0 for b in beta) and sum(beta) <= n

    c = i - 1
    na = list(alpha)
    out = {}
    _accumulate(out, _shift(alpha, plus=c), na[c] + 1, inside)
    _accumulate(out, alpha, sum(na[j - 1] * int(p[i, j, j]) for j in range(1, d + 1)), inside)
    for s in range(1, d + 1):
        if s == i:
            continue
        _accumulate(out, _shift(alpha, plus=s - 1, minus=c), (na[s - 1] + 1) * int(p[i, i, s]), inside)
        _accumulate(out, _shift(alpha, plus=c, minus=s - 1), (na[c] + 1) * int(p[i, s, i]), inside)
        for t in range(1, d + 1):
            if t in (i, s):
                continue
            _accumulate(out, _shift(alpha, plus=t - 1, minus=s - 1), (na[t - 1] + 1) * int(p[i, s, t]), inside)
    it = base_tensor.transpose_map[i]
    _accumulate(out, _shift(alpha, minus=it - 1), (n - sum(alpha) + 1) * int(p[i, it, 0]), inside)
    return out


def attenuated_recurrence_oracle(q, n, m, l, which, ij):
    """Coefficients of A_10 A_ij (``which='A10'``) or A_01 A_ij (``which='A01'``)."""
    dom = set(attenuated_domain(q, n, m, l))
    i, j = (int(v) for v in ij)
    if (i, j) not in dom:
        raise OracleDomainError(f"{(i, j)} is outside the attenuated domain")

    def Q(k):
        return q_number(k, q) if k >= 0 else 0

    def qp(e):
        return Fraction(q) ** e

    raw = {}
    if which == "A10":
        raw[(i - 1, j)] = qp(2 * i + j + l - 1) * Q(m - i - j + 1) * Q(n - m - i + 1)
        raw[(i + 1, j)] = Q(i + 1) ** 2 * qp(j)
        raw[(i, j - 1)] = Q(m - i - j + 1) * Q(i) * (qp(l) - qp(j - 1)) * qp(i + j)
        raw[(i, j + 1)] = Q(j + 1) * Q(i) * qp(i + j + 1)
        raw[(i + 1, j - 1)] = Q(i + 1) ** 2 * (qp(l) - qp(j - 1))
        raw[(i - 1, j + 1)] = Q(j + 1) * Q(n - m - i + 1) * qp(2 * i + l - 1)
        raw[(i, j)] = Q(i) * (
            Q(n - m - i) * qp(l + 1 + i)
            + Q(m - i - j) * qp(i + 2 * j + 1)
            + Q(j) * (qp(l) - qp(j - 1)) * qp(i + 1)
            + Q(i) * (q - 1) * qp(l)
        )
    elif which == "A01":
        raw[(i, j - 1)] = (qp(l) - qp(j - 1)) * Q(m - i - j + 1) * qp(i + j - 1)
        raw[(i, j + 1)] = Q(j + 1) * qp(i + j)
        raw[(i, j)] = (qp(l) - 1) * Q(i + j) - Q(j) * qp(i + j - 1) + (q - 1) * Q(m - i - j) * Q(j) * qp(i + j)
    else:
        raise OracleDomainError("which must be 'A10' or 'A01'")
    out = {}
    for beta, v in raw.items():
        if beta in dom and v != 0:
            if Fraction(v).denominator != 1:
                raise ArithmeticError(f"non-integral coefficient {v} at {beta}")
            out[beta] = int(v)
    return out


def generalized_johnson_oracle(fiber_tensor, fiber_size, n, h, generator, t_alpha):
    """Coefficients of A_g A_(t, alpha) for g = (1, 0) or g = (0, e_i).

    The (1, 0) cases use the valencies k_i of the fiber. For (0, e_i) the
    coefficients are written with fiber intersection numbers, which reduce
    to the complete-graph values when the fiber is K_q.
    """
    p = fiber_tensor.p
    k = fiber_tensor.valencies
    m = fiber_tensor.rank - 1
    Y = int(fiber_size)
    t, alpha = int(t_alpha[0]), tuple(int(a) for a in t_alpha[1:])
    if fiber_tensor.identity_index != 0:
        raise OracleDomainError("fiber scheme must have its identity at index 0")
    tmax = min(h, n - h)

    def inside(lab):
        u, beta = lab[0], lab[1:]
        return 0 <= u <= tmax and all(b >= 0 for b in beta) and sum(beta) <= h - u

    if len(alpha) != m or not inside((t,) + alpha):
        raise OracleDomainError(f"{(t,) + alpha} is outside the generalized Johnson domain")
    gen = tuple(int(g) for g in generator)
    if len(gen) != m + 1:
        raise OracleDomainError("generator label has the wrong arity")
    a = list(alpha)
    size = sum(alpha)
    out = {}

    def put(u, beta, value):
        _accumulate(out, (u,) + tuple(beta), value, inside)

    if gen == (1,) + (0,) * m:
        put(t + 1, alpha, (t + 1) ** 2)
        for i in range(m):
            put(t + 1, _shift(alpha, minus=i), (t + 1) ** 2 * k[i + 1])
        put(t, alpha, Y * (n - h - t) * t + (h - t - size) * t + sum(a[j] * t * k[j + 1] for j in range(m)))
        for i in range(m):
            put(t, _shift(alpha, minus=i), (h - t + 1 - size) * t * k[i + 1])
            put(t, _shift(alpha, plus=i), (a[i] + 1) * t)
            for j in range(m):
                if j != i:
                    put(t, _shift(_shift(alpha, plus=i), minus=j), (a[i] + 1) * t * k[j + 1])
        put(t - 1, alpha, Y * (n - h - t + 1) * (h - t + 1 - size))
        for i in range(m):
            put(t - 1, _shift(alpha, plus=i), Y * (n - h - t + 1) * (a[i] + 1))
        return out
    ones = [c for c, g in enumerate(gen) if g]
    if gen[0] != 0 or len(ones) != 1 or gen[ones[0]] != 1:
        raise OracleDomainError(f"generator {gen} is neither (1, 0) nor (0, e_i)")
    gi = ones[0]  # fiber relation index
    c = gi - 1
    put(t, _shift(alpha, plus=c), a[c] + 1)
    put(t, alpha, t * k[gi] + sum(a[j - 1] * int(p[gi, j, j]) for j in range(1, m + 1)))
    for j in range(1, m + 1):
        for kk in range(1, m + 1):
            if j != kk:
                put(t, _shift(_shift(alpha, plus=j - 1), minus=kk - 1), (a[j - 1] + 1) * int(p[gi, kk, j]))
    it = fiber_tensor.transpose_map[gi]
    put(t, _shift(alpha, minus=it - 1), (h - t + 1 - size) * int(p[gi, it, 0]))
    return out


def brute_force_coefficients(built, generator, alpha):
    """Intersection numbers p^beta_{generator, alpha} of a built scheme, keyed by label."""
    lab = built.labeling
    row = built.tensor.p[lab.index(generator), lab.index(alpha), :]
    return {built.labels[kk]: int(v) for kk, v in enumerate(row) if v}


@dataclass
class OracleDiff:
    family: str
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.mismatches

    def to_json(self):
        return {
            "family": self.family,
            "checked": self.checked,
            "ok": self.ok,
            "mismatches": [
                {"generator": list(g), "alpha": list(a), "oracle": _enc(o), "brute_force": _enc(b)}
                for g, a, o, b in self.mismatches
            ],
        }


def _enc(d):
    return [[list(k), v] for k, v in sorted(d.items())]


def _compare(diff, built, generator, alpha, predicted, first_only):
    actual = brute_force_coefficients(built, generator, alpha)
    diff.checked += 1
    if predicted != actual:
        diff.mismatches.append((tuple(generator), tuple(alpha), predicted, actual))
        return first_only
    return False


def oracle_compare(spec, first_only=False, built=None):
    """Oracle versus brute force over every generator and in-domain index of ``spec``."""
    built = built if built is not None else build(spec)
    diff = OracleDiff(built.name)
    if isinstance(spec, Extension):
        base = build(spec.base)
        d = base.scheme.class_count
        for i in range(1, d + 1):
            for alpha in built.labels:
                pred = extension_recurrence_oracle(base.tensor, spec.n, i, alpha)
                if _compare(diff, built, unit_vector(d, i - 1), alpha, pred, first_only):
                    return diff
    elif isinstance(spec, Attenuated):
        for which, g in (("A10", (1, 0)), ("A01", (0, 1))):
            for ij in built.labels:
                pred = attenuated_recurrence_oracle(spec.q, spec.n, spec.m, spec.l, which, ij)
                if _compare(diff, built, g, ij, pred, first_only):
                    return diff
    elif isinstance(spec, GeneralizedJohnson):
        fiber = build(spec.fiber)
        m = fiber.scheme.class_count
        gens = [(1,) + (0,) * m] + [(0,) + unit_vector(m, i) for i in range(m)]
        for g in gens:
            for ta in built.labels:
                pred = generalized_johnson_oracle(fiber.tensor, fiber.scheme.size, spec.n, spec.h, g, ta)
                if _compare(diff, built, g, ta, pred, first_only):
                    return diff
    elif isinstance(spec, Composition):
        outer, fiber = build(spec.outer), build(spec.fiber)
        for name, ok in composition_identities(outer, fiber, built):
            diff.checked += 1
            if not ok:
                diff.mismatches.append(((), (), {"identity": name}, {}))
                if first_only:
                    return diff
    else:
        raise OracleDomainError(f"no closed-form oracle for {built.name}")
    return diff


def _expand(built, i, j):
    return built.tensor.p[i, j, :]


def composition_identities(outer, fiber, comp):
    """The product families of the composition, checked exactly against its intersection numbers.

    Returns ``[(name, ok), ...]``; every (i, j) pair is tested, not only the generators.
    """
    p, pf = outer.tensor.p, fiber.tensor.p
    wx, wy = len(outer.labels[0]), len(fiber.labels[0])
    zx, zy = (0,) * wx, (0,) * wy
    Y = fiber.scheme.size
    kf = fiber.tensor.valencies
    lab = comp.labeling
    nx_rel, ny_rel = outer.scheme.rank, fiber.scheme.rank

    def idx_x(i):
        return lab.index(outer.labels[i] + zy)

    def idx_y(j):
        return lab.index(zx + fiber.labels[j])

    results = []
    d1 = comp.scheme.rank

    def vec(pairs):
        v = np.zeros(d1, dtype=np.int64)
        for kk, c in pairs:
            v[kk] += c
        return v

    ok = all(
        np.array_equal(_expand(comp, idx_y(a), idx_y(j)), vec((idx_y(kk), pf[a, j, kk]) for kk in range(ny_rel)))
        for a in range(1, ny_rel) for j in range(ny_rel)
    )
    results.append(("A_0a A_0j = sum_k p'^k_aj A_0k", ok))
    ok = all(
        np.array_equal(_expand(comp, idx_x(i), idx_y(j)), vec([(idx_x(i), kf[j])]))
        for i in range(1, nx_rel) for j in range(ny_rel)
    )
    results.append(("A_i0 A_0j = k'_j A_i0", ok))
    ok = all(
        np.array_equal(_expand(comp, idx_y(j), idx_x(i)), vec([(idx_x(i), kf[j])]))
        for i in range(1, nx_rel) for j in range(1, ny_rel)
    )
    results.append(("A_0j A_i0 = k'_j A_i0", ok))
    for label, same in (("A_i0 A_i0 = |Y|(p^0_ii sum_j A_0j + sum_k p^k_ii A_k0)", True),
                        ("A_a0 A_i0 = |Y| sum_k p^k_ai A_k0 (a != i)", False)):
        ok = True
        for a in range(1, nx_rel):
            for i in range(1, nx_rel):
                if (a == i) != same:
                    continue
                pairs = [(idx_x(kk), Y * p[a, i, kk]) for kk in range(1, nx_rel)]
                pairs += [(idx_y(j), Y * p[a, i, 0]) for j in range(ny_rel)]
                ok &= np.array_equal(_expand(comp, idx_x(a), idx_x(i)), vec(pairs))
        results.append((label, bool(ok)))
    return results


def composition_krein_identities(outer, fiber, comp, tol=1e-8):
    """Hadamard-side counterparts, checked numerically on resolved dual labelings."""
    from ..polycheck import resolve_dual_labeling

    sx = compute_spectrum(outer.tensor)
    sy = compute_spectrum(fiber.tensor)
    sz = compute_spectrum(comp.tensor)
    lx = resolve_dual_labeling(sx, outer.dual_signatures)
    ly = resolve_dual_labeling(sy, fiber.dual_signatures)
    lz = resolve_dual_labeling(sz, comp.dual_signatures)
    wx, wy = lx.ell, ly.ell
    zx, zy = (0,) * wx, (0,) * wy
    X = outer.scheme.size
    qx, qy, qz = sx.krein, sy.krein, sz.krein
    ex = {lx.index(dl): dl for dl in lx.domain}
    ey = {ly.index(dl): dl for dl in ly.domain}

    def iz_outer(i):  # F_{0i}
        return lz.index(zy + ex[i])

    def iz_fiber(j):  # F_{j0}
        return lz.index(ey[j] + zx)

    rx, ry, rz = sx.rank, sy.rank, sz.rank
    scale = max(1.0, float(np.abs(qz).max()))

    def close(vec, pairs):
        target = np.zeros(rz)
        for kk, c in pairs:
            target[kk] += c
        return float(np.abs(vec - target).max()) <= tol * scale

    results = []
    results.append(("F_0a o F_0i = sum_k q^k_ai F_0k", all(
        close(qz[iz_outer(a), iz_outer(i)], [(iz_outer(kk), qx[a, i, kk]) for kk in range(rx)])
        for a in range(1, rx) for i in range(rx))))
    mult_x = sx.multiplicities
    results.append(("F_j0 o F_0i = m_i F_j0", all(
        close(qz[iz_fiber(j), iz_outer(i)], [(iz_fiber(j), mult_x[i])])
        for j in range(1, ry) for i in range(rx))))
    results.append(("F_0i o F_j0 = m_i F_j0", all(
        close(qz[iz_outer(i), iz_fiber(j)], [(iz_fiber(j), mult_x[i])])
        for j in range(1, ry) for i in range(1, rx))))
    for label, same in (("F_j0 o F_j0 = |X|(q'^0_jj sum_i F_0i + sum_k q'^k_jj F_k0)", True),
                        ("F_b0 o F_j0 = |X| sum_k q'^k_bj F_k0 (b != j)", False)):
        ok = True
        for b in range(1, ry):
            for j in range(1, ry):
                if (b == j) != same:
                    continue
                pairs = [(iz_fiber(kk), X * qy[b, j, kk]) for kk in range(1, ry)]
                pairs += [(iz_outer(i), X * qy[b, j, 0]) for i in range(rx)]
                ok &= close(qz[iz_fiber(b), iz_fiber(j)], pairs)
        results.append((label, bool(ok)))
    return results


def all_in_domain(spec):
    """Convenience iterator over (generator, index) pairs an oracle covers."""
    built = build(spec)
    ell = built.labeling.ell
    return list(itertools.product([unit_vector(ell, i) for i in range(ell)], built.labels))
