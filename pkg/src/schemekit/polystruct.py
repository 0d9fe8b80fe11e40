"""Defining polynomials, ideal generators and the staircase of the Bose-Mesner algebra.

Given a passing labeling, each basis element is rewritten as a polynomial in
the generators (``recover_v`` / ``recover_v_star``), each exterior corner of
the domain yields a monic relation ``w`` vanishing on the generators, and
:func:`verify_groebner` re-checks that these relations form a Groebner basis
whose standard monomials are exactly the domain.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import math

from .config import SNAP_MAX_DENOMINATOR
from .errors import NonzeroRemainderAtA, OracleDomainError, SingularSystem, StaircaseGap
from .orders import MonomialOrder, add, dominates, unit_vector
from .structure import StructureAlgebra


class Polynomial:
    """Sparse polynomial: multidegree tuple -> coefficient (Fraction or float)."""

    def __init__(self, terms, arity):
        self.arity = int(arity)
        clean = {}
        for deg, c in dict(terms).items():
            deg = tuple(int(a) for a in deg)
            if len(deg) != self.arity:
                raise ValueError(f"term {deg} does not have arity {self.arity}")
            if c != 0:
                clean[deg] = clean.get(deg, 0) + c
        self.terms = {d: c for d, c in clean.items() if c != 0}

    @classmethod
    def monomial(cls, deg, coeff=1):
        return cls({tuple(deg): coeff}, len(deg))

    @classmethod
    def constant(cls, c, arity):
        return cls({(0,) * arity: c}, arity)

    @property
    def is_exact(self):
        return all(isinstance(c, (int, Fraction)) for c in self.terms.values())

    def is_zero(self):
        return not self.terms

    def multidegree(self, order):
        if not self.terms:
            raise ValueError("the zero polynomial has no multidegree")
        return order.max(self.terms)

    def leading(self, order):
        md = self.multidegree(order)
        return md, self.terms[md]

    def __add__(self, other):
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return Polynomial(out, self.arity)

    def __neg__(self):
        return Polynomial({d: -c for d, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Polynomial({d: c * v for d, v in self.terms.items()}, self.arity)

    def shift(self, deg):
        """Multiply by the monomial x^deg."""
        return Polynomial({add(d, deg): c for d, c in self.terms.items()}, self.arity)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def coefficient(self, deg):
        return self.terms.get(tuple(deg), 0)

    def max_abs_diff(self, other):
        keys = set(self.terms) | set(other.terms)
        return max((abs(float(self.coefficient(k)) - float(other.coefficient(k))) for k in keys), default=0.0)

    def to_sympy(self, symbols):
        import sympy

        expr = sympy.Integer(0)
        for d, c in self.terms.items():
            c = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.sympify(c)
            expr += c * sympy.Mul(*(s**a for s, a in zip(symbols, d)))
        return expr

    def format(self, names=None, order=None):
        names = names or [f"x{i + 1}" for i in range(self.arity)]
        if not self.terms:
            return "0"
        degs = sorted(self.terms, key=order.key if order else None, reverse=True)
        parts = []
        for d in degs:
            c = self.terms[d]
            if not isinstance(c, (int, Fraction)):
                c = Fraction(float(c)).limit_denominator(SNAP_MAX_DENOMINATOR)
            if c == 0:
                continue
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, d) if a)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({self.format()})"

    def to_json(self, residual=None):
        out = []
        for d in sorted(self.terms):
            c = self.terms[d]
            if isinstance(c, (int, Fraction)):
                c = Fraction(c)
                out.append({"deg": list(d), "num": c.numerator, "den": c.denominator})
            else:
                snap = Fraction(float(c)).limit_denominator(SNAP_MAX_DENOMINATOR)
                entry = {"deg": list(d), "value": float(c), "num": snap.numerator, "den": snap.denominator}
                if residual is not None:
                    entry["residual"] = float(residual)
                out.append(entry)
        return out

    @classmethod
    def from_json(cls, items, arity=None):
        terms = {}
        for it in items:
            deg = tuple(it["deg"])
            terms[deg] = float(it["value"]) if "value" in it else Fraction(it["num"], it["den"])
        if arity is None:
            if not items:
                raise ValueError("arity needed for the zero polynomial")
            arity = len(items[0]["deg"])
        return cls(terms, arity)


def _order(order, ell):
    if order is None:
        return MonomialOrder.grlex(ell)
    if isinstance(order, str):
        return MonomialOrder.parse(order, ell)
    return order.with_arity(ell)


def _recover(alg, labeling, order):
    order = _order(order, labeling.ell)
    gens = labeling.generators
    dom = labeling.domain
    out, residuals = {}, {}
    for alpha in order.sorted(dom):
        basis = [b for b in order.sorted(dom) if order.le(b, alpha)]
        cols = [alg.monomial(gens, b) for b in basis]
        coeffs, resid = alg.solve(cols, alg.basis(labeling.index(alpha)))
        poly = Polynomial(dict(zip(basis, coeffs)), labeling.ell)
        if alg.is_zero(poly.coefficient(alpha)):
            raise SingularSystem(f"v_{alpha} does not have multidegree {alpha}")
        out[alpha] = poly
        residuals[alpha] = resid
    return out, residuals


def recover_v(tensor, labeling, order=None):
    """Exact rational polynomials v_alpha with v_alpha(A_e1, ..., A_el) = A_alpha."""
    return _recover(StructureAlgebra.from_tensor(tensor), labeling, order)[0]


def recover_v_star(spectrum, labeling, order=None, tol=None):
    """Hadamard-side polynomials; returns ``(polys, residuals)`` keyed by multidegree."""
    return _recover(StructureAlgebra.from_spectrum(spectrum, tol), labeling, order)


def exterior_corners(domain):
    """Distinct alpha + e_i outside the domain, for alpha in the domain."""
    dom = {tuple(a) for a in domain}
    ell = len(next(iter(dom)))
    out = set()
    for alpha in dom:
        for i in range(ell):
            g = add(alpha, unit_vector(ell, i))
            if g not in dom:
                out.add(g)
    return out


def minimal_corners(points):
    pts = set(points)
    return {p for p in pts if not any(q != p and dominates(p, q) for q in pts)}


def _ideal(alg, labeling, order):
    order = _order(order, labeling.ell)
    gens = labeling.generators
    dom = order.sorted(labeling.domain)
    cols = [alg.monomial(gens, b) for b in dom]
    out = []
    for gamma in order.sorted(exterior_corners(dom)):
        coeffs, _ = alg.solve(cols, alg.monomial(gens, gamma))
        terms = {gamma: 1}
        for b, c in zip(dom, coeffs):
            if alg.is_zero(c):
                continue
            if not order.lt(b, gamma):
                raise SingularSystem(f"x^{gamma} expands through x^{b}, which is not lower in the order")
            terms[b] = -c
        out.append((gamma, Polynomial(terms, labeling.ell)))
    return out


def ideal_generators(tensor, labeling, order=None):
    """Monic generators w_gamma, one per distinct exterior corner gamma, as ``[(gamma, w), ...]``."""
    return _ideal(StructureAlgebra.from_tensor(tensor), labeling, order)


def ideal_generators_star(spectrum, labeling, order=None, tol=None):
    return _ideal(StructureAlgebra.from_spectrum(spectrum, tol), labeling, order)


def divide(f, basis, order):
    """Multivariate division. Returns ``(quotients, remainder)``."""
    lead = [g.leading(order) for g in basis]
    quotients = [Polynomial({}, f.arity) for _ in basis]
    rem = {}
    p = dict(f.terms)
    while p:
        md = order.max(p)
        c = p[md]
        for k, (gmd, gc) in enumerate(lead):
            if dominates(md, gmd):
                shift = tuple(a - b for a, b in zip(md, gmd))
                factor = c / gc
                quotients[k] = quotients[k] + Polynomial.monomial(shift, factor)
                for d, v in basis[k].terms.items():
                    dd = add(d, shift)
                    p[dd] = p.get(dd, 0) - factor * v
                # cancel the leading term exactly, float rounding notwithstanding
                p.pop(md, None)
                p = {d: v for d, v in p.items() if v != 0}
                break
        else:
            rem[md] = c
            del p[md]
    return quotients, Polynomial(rem, f.arity)


def quotient_dim(generators, order=None, arity=None):
    """Number of standard monomials; ``math.inf`` when some variable has no pure-power corner."""
    polys = [g[1] if isinstance(g, tuple) else g for g in generators]
    if arity is None:
        if not polys:
            raise ValueError("arity needed for an empty generator list")
        arity = polys[0].arity
    if arity == 0:
        return 0 if any(not p.is_zero() for p in polys) else 1
    order = _order(order, arity)
    mds = [p.multidegree(order) for p in polys]
    bounds = []
    for i in range(arity):
        pure = [md[i] for md in mds if all(a == 0 for k, a in enumerate(md) if k != i)]
        if not pure:
            return math.inf
        bounds.append(min(pure))
    count = 0
    for pt in itertools.product(*(range(b) for b in bounds)):
        if not any(dominates(pt, md) for md in mds):
            count += 1
    return count


@dataclass
class GroebnerReport:
    ok: bool
    corners: list
    uncovered: list = field(default_factory=list)
    standard_count: int = 0
    expected_count: int = 0
    remainder_failures: list = field(default_factory=list)
    max_remainder: float = 0.0
    max_w_residual: float = 0.0
    buchberger: dict = None

    def to_json(self):
        return {
            "ok": self.ok,
            "corners": [list(c) for c in self.corners],
            "uncovered": [list(c) for c in self.uncovered],
            "standard_count": self.standard_count,
            "expected_count": self.expected_count,
            "remainder_failures": [[g, j] for g, j in self.remainder_failures],
            "max_remainder": self.max_remainder,
            "max_w_residual": self.max_w_residual,
            "buchberger": self.buchberger,
        }


def _residual(_alg, vec):
    return max((abs(float(x)) for x in vec), default=0.0)


def verify_groebner(generators, domain, order=None, alg=None, gens=None, strict=True, buchberger=False):
    """Staircase coverage, standard-monomial count and division checks for ``[(gamma, w)]``.

    ``alg`` and ``gens`` (a StructureAlgebra and generator indices) enable the
    evaluation of remainders at the generator matrices. With ``strict`` the
    first failure raises StaircaseGap or NonzeroRemainderAtA.
    """
    dom = {tuple(a) for a in domain}
    ell = len(next(iter(dom)))
    order = _order(order, ell)
    polys = [g[1] if isinstance(g, tuple) else g for g in generators]
    mds = [p.multidegree(order) for p in polys]
    corners = sorted(minimal_corners(mds), key=order.key)

    box = [1 + max(a[i] for a in dom) for i in range(ell)]
    uncovered = []
    inside_covered = []
    for pt in itertools.product(*(range(b + 1) for b in box)):
        covered = any(dominates(pt, md) for md in mds)
        if pt in dom and covered:
            inside_covered.append(pt)
        elif pt not in dom and not covered:
            uncovered.append(pt)
    if strict and uncovered:
        raise StaircaseGap(uncovered[0])
    standard = quotient_dim(polys, order, ell) if polys else math.inf

    failures = []
    max_rem = 0.0
    max_w = 0.0
    tol = 0 if alg is None else alg.zero_tol
    for k, g in enumerate(polys):
        if alg is not None:
            w_res = _residual(alg, alg.evaluate(g, gens))
            max_w = max(max_w, w_res)
            if w_res > tol * alg.scale:
                failures.append((k, None))
                if strict:
                    raise NonzeroRemainderAtA(g.format(), None)
        for j in range(ell):
            _, rem = divide(g.shift(unit_vector(ell, j)), polys, order)
            bad = any(d not in dom for d in rem.terms)
            size = max((abs(float(c)) for c in rem.terms.values()), default=0.0)
            if alg is not None:
                size = max(size, _residual(alg, alg.evaluate(rem, gens)))
            max_rem = max(max_rem, size)
            if bad or size > tol * max(1.0, float(alg.scale) if alg is not None else 1.0):
                failures.append((k, j))
                if strict:
                    raise NonzeroRemainderAtA(g.format(), j)

    report = GroebnerReport(
        ok=not uncovered and not inside_covered and standard == len(dom) and not failures,
        corners=corners,
        uncovered=uncovered,
        standard_count=standard,
        expected_count=len(dom),
        remainder_failures=failures,
        max_remainder=max_rem,
        max_w_residual=max_w,
    )
    if buchberger:
        report.buchberger = buchberger_oracle(polys, order, corners)
        report.ok = report.ok and report.buchberger["agrees"]
    return report


def buchberger_oracle(polys, order, corners=None, max_arity=3, max_degree=6):
    """Independent check with sympy: reduced Groebner basis leading monomials versus our corners."""
    import sympy

    if order.kind not in ("lex", "grlex"):
        raise OracleDomainError("the Buchberger oracle supports lex and grlex only")
    if not polys:
        raise OracleDomainError("no generators")
    ell = polys[0].arity
    if ell > max_arity or any(sum(p.multidegree(order)) > max_degree for p in polys):
        raise OracleDomainError(f"oracle limited to {max_arity} variables and degree {max_degree}")
    if not all(p.is_exact for p in polys):
        raise OracleDomainError("oracle needs exact rational coefficients")
    syms = sympy.symbols(f"x1:{ell + 1}")
    gb = sympy.groebner([p.to_sympy(syms) for p in polys], *syms, order=order.kind)
    lms = sorted(
        (tuple(int(a) for a in sympy.Poly(g, *syms).monoms(order=order.kind)[0]) for g in gb.exprs),
        key=order.key,
    )
    if corners is None:
        corners = sorted(minimal_corners(p.multidegree(order) for p in polys), key=order.key)
    ours = sorted((tuple(c) for c in corners), key=order.key)
    return {"leading_monomials": [list(m) for m in lms], "agrees": lms == ours}


@dataclass
class PolyStructure:
    v: dict
    G: list
    staircase_corners: list
    residuals: dict = field(default_factory=dict)

    def to_json(self, names=None):
        return {
            "schema": 1,
            "v": [
                {"alpha": list(a), "terms": p.to_json(self.residuals.get(a)), "text": p.format(names)}
                for a, p in sorted(self.v.items())
            ],
            "G": [{"degree": list(g), "terms": w.to_json(), "text": w.format(names)} for g, w in self.G],
            "staircase_corners": [list(c) for c in self.staircase_corners],
        }


def poly_structure(tensor, labeling, order=None):
    alg = StructureAlgebra.from_tensor(tensor)
    v, res = _recover(alg, labeling, order)
    G = _ideal(alg, labeling, order)
    o = _order(order, labeling.ell)
    corners = sorted(minimal_corners(g for g, _ in G), key=o.key)
    return PolyStructure(v, G, corners, {a: float(r) for a, r in res.items()})


def poly_structure_star(spectrum, labeling, order=None, tol=None):
    alg = StructureAlgebra.from_spectrum(spectrum, tol)
    v, res = _recover(alg, labeling, order)
    G = _ideal(alg, labeling, order)
    o = _order(order, labeling.ell)
    corners = sorted(minimal_corners(g for g, _ in G), key=o.key)
    return PolyStructure(v, G, corners, res)


def verify_structure(tensor, labeling, order=None, buchberger=False, strict=True):
    """Convenience: P-side ideal generators checked against the algebra they came from."""
    alg = StructureAlgebra.from_tensor(tensor)
    G = _ideal(alg, labeling, order)
    return verify_groebner(G, labeling.domain, order, alg=alg, gens=labeling.generators, strict=strict, buchberger=buchberger)


def verify_structure_star(spectrum, labeling, order=None, tol=None, strict=True):
    alg = StructureAlgebra.from_spectrum(spectrum, tol)
    G = _ideal(alg, labeling, order)
    return verify_groebner(G, labeling.domain, order, alg=alg, gens=labeling.generators, strict=strict)
