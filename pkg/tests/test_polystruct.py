from fractions import Fraction as F
import math

import pytest

from schemekit.errors import NonzeroRemainderAtA, OracleDomainError, StaircaseGap
from schemekit.orders import MonomialOrder
from schemekit.polycheck import Labeling, resolve_dual_labeling
from schemekit.polystruct import (
    Polynomial,
    buchberger_oracle,
    divide,
    exterior_corners,
    ideal_generators,
    minimal_corners,
    poly_structure,
    quotient_dim,
    recover_v,
    recover_v_star,
    verify_groebner,
    verify_structure,
    verify_structure_star,
)
from schemekit.structure import StructureAlgebra

from conftest import built, spectrum_of

GRLEX1 = MonomialOrder.grlex(1)
GRLEX2 = MonomialOrder.grlex(2)


def poly(terms):
    return Polynomial(terms, len(next(iter(terms))))


def test_arithmetic_and_cancellation():
    p = poly({(1, 0): 1, (0, 0): F(1, 2)})
    q = poly({(1, 0): -1, (0, 1): 2})
    assert (p + q).terms == {(0, 0): F(1, 2), (0, 1): 2}
    assert (p - p).is_zero()
    assert p.shift((0, 2)).terms == {(1, 2): 1, (0, 2): F(1, 2)}
    assert p.scale(2).coefficient((0, 0)) == 1
    with pytest.raises(ValueError):
        Polynomial({(1,): 1}, 2)


def test_leading_term_depends_on_order():
    p = poly({(1, 0): 1, (0, 2): 1})
    assert p.multidegree(MonomialOrder.lex(2)) == (1, 0)
    assert p.multidegree(GRLEX2) == (0, 2)
    with pytest.raises(ValueError):
        Polynomial({}, 2).multidegree(GRLEX2)


def test_format_and_json_round_trip():
    p = poly({(2,): F(1, 2), (0,): F(-3, 2)})
    assert p.format(order=GRLEX1) == "1/2*x1^2 - 3/2"
    assert Polynomial.from_json(p.to_json()) == p
    f = Polynomial({(1,): 0.5, (0,): 1e-15}, 1)
    items = f.to_json(residual=1e-12)
    assert items[1]["residual"] == 1e-12 and "value" in items[1]
    assert f.format() == "1/2*x1"


def test_division_remainder():
    # x^3 divided by x^2 - 1 leaves x
    g = poly({(2,): 1, (0,): -1})
    q, r = divide(poly({(3,): 1}), [g], GRLEX1)
    assert q[0] == poly({(1,): 1}) and r == poly({(1,): 1})


def test_corners_of_square_domain():
    dom = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert exterior_corners(dom) == {(2, 0), (0, 2), (2, 1), (1, 2)}
    assert minimal_corners(exterior_corners(dom)) == {(2, 0), (0, 2)}


def test_quotient_dim():
    G = [poly({(2, 0): 1, (0, 0): -1}), poly({(0, 2): 1, (0, 0): -1})]
    assert quotient_dim(G, GRLEX2) == 4
    assert quotient_dim(G[:1], GRLEX2) == math.inf


def test_hamming_defining_polynomials():
    # A_1^2 = 3I + 2A_2 and A_1 A_2 = 2A_1 + 3A_3 give these by hand
    v = recover_v(built("hamming:3,2").tensor, Labeling(1, {(i,): i for i in range(4)}))
    assert v[(2,)] == Polynomial({(2,): F(1, 2), (0,): F(-3, 2)}, 1)
    assert v[(3,)] == Polynomial({(3,): F(1, 6), (1,): F(-7, 6)}, 1)


def test_hamming_ideal_is_eigenvalue_polynomial():
    lab = Labeling(1, {(i,): i for i in range(4)})
    ((gamma, w),) = ideal_generators(built("hamming:3,2").tensor, lab)
    # eigenvalues 3, 1, -1, -3
    assert gamma == (4,) and w == Polynomial({(4,): 1, (2,): -10, (0,): 9}, 1)


def test_k2_squared_ideal():
    b = built("power(k2,2)")
    ps = poly_structure(b.tensor, b.labeling)
    assert ps.staircase_corners == [(0, 2), (2, 0)]
    by_corner = dict(ps.G)
    assert by_corner[(2, 0)] == poly({(2, 0): 1, (0, 0): -1})
    assert by_corner[(1, 2)] == poly({(1, 2): 1, (1, 0): -1})
    assert verify_structure(b.tensor, b.labeling, buchberger=True).ok


def test_staircase_gap_detected():
    # drop the x2 corner: the box point (0, 2) is left uncovered
    G = [poly({(2, 0): 1, (0, 0): -1})]
    dom = [(0, 0), (1, 0), (0, 1), (1, 1)]
    with pytest.raises(StaircaseGap):
        verify_groebner(G, dom, GRLEX2)
    rep = verify_groebner(G, dom, GRLEX2, strict=False)
    assert not rep.ok and (0, 2) in rep.uncovered


def test_wrong_relation_does_not_vanish():
    b = built("hamming:3,2")
    alg = StructureAlgebra.from_tensor(b.tensor)
    w = Polynomial({(4,): 1, (2,): -10, (0,): 8}, 1)
    with pytest.raises(NonzeroRemainderAtA):
        verify_groebner([w], [(i,) for i in range(4)], GRLEX1, alg=alg, gens=(1,))


def test_buchberger_oracle_domain():
    G = [poly({(2, 0): 1, (0, 0): -1}), poly({(0, 2): 1, (0, 0): -1})]
    assert buchberger_oracle(G, GRLEX2)["agrees"]
    with pytest.raises(OracleDomainError):
        buchberger_oracle(G, MonomialOrder.from_weights([[1, 2]]))
    with pytest.raises(OracleDomainError):
        buchberger_oracle([poly({(7, 0): 1})], GRLEX2)
    with pytest.raises(OracleDomainError):
        buchberger_oracle([poly({(2, 0): 1.0})], GRLEX2)


def test_star_side_on_hamming_is_numeric_but_close():
    b = built("hamming:3,2")
    s = spectrum_of("hamming:3,2")
    lab = resolve_dual_labeling(s, b.dual_signatures)
    v, res = recover_v_star(s, lab)
    # H(3,2) is self-dual, so the Q-side polynomials repeat the P-side ones
    exact = recover_v(b.tensor, Labeling(1, {(i,): i for i in range(4)}))
    assert all(v[a].max_abs_diff(exact[a]) < 1e-9 for a in exact)
    assert max(res.values()) < 1e-9
    assert verify_structure_star(s, lab).ok
