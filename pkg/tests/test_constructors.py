import math

import numpy as np
import pytest

from schemekit.constructors import (
    Attenuated,
    Complete,
    Composition,
    Cycle,
    DirectProduct,
    Extension,
    GeneralizedJohnson,
    Hamming,
    NonbinaryJohnson,
    attenuated_domain,
    build,
    describe,
    expected_size,
    parse_family,
)
from schemekit.constructors.finite_field import gaussian_binomial, q_number, rank_mod, rref_matrices
from schemekit.errors import BoundsExceeded
from schemekit.polycheck import check_P
from schemekit.scheme import fusion

from conftest import built


def test_sizes_match_expected(family):
    b = built(family)
    assert b.scheme.size == expected_size(parse_family(family))


@pytest.mark.parametrize(
    "text, spec",
    [
        ("k3", Complete(3)),
        ("cycle:7", Cycle(7)),
        ("hamming:3,2", Hamming(3, 2)),
        ("extension(k3,2)", Extension(Complete(3), 2)),
        ("power(k2,3)", DirectProduct((Complete(2),) * 3)),
        ("product(k2,c5)", DirectProduct((Complete(2), Cycle(5)))),
        ("composition(k3,c5)", Composition(Complete(3), Cycle(5))),
        ("genjohnson(k3,4,2)", GeneralizedJohnson(Complete(3), 4, 2)),
        ("attenuated:2,3,2,1", Attenuated(2, 3, 2, 1)),
    ],
)
def test_parse_and_describe(text, spec):
    assert parse_family(text) == spec
    assert parse_family(describe(spec)) == spec


@pytest.mark.parametrize("bad", ["", "k", "hamming:3", "extension(k3)", "power(k2,3", "widget:1", "k3 k4"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_family(bad)


def test_parameter_validation():
    with pytest.raises(ValueError):
        build(Cycle(2))
    with pytest.raises(ValueError, match="prime"):
        build(Attenuated(4, 2, 1, 1))
    with pytest.raises(ValueError):
        build(Attenuated(2, 2, 3, 1))


def test_bounds_checked_before_enumeration(monkeypatch):
    monkeypatch.setenv("SCHEMEKIT_MAX_GROUND_SET", "100")
    with pytest.raises(BoundsExceeded):
        build("hamming:10,2")


def test_finite_field_helpers():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 3) == 130
    assert q_number(3, 2) == 7 and q_number(0, 5) == 0
    assert len(rref_matrices(2, 4, 2)) == gaussian_binomial(4, 2, 2)
    assert rank_mod([(1, 1), (2, 2)], 3) == 1
    with pytest.raises(ValueError):
        q_number(-1, 2)


@pytest.mark.parametrize("q, n", [(2, 2), (3, 2), (2, 3), (4, 2)])
def test_extension_of_complete_graph(q, n):
    b = built(f"extension(k{q},{n})")
    # K_q has one class, so the extension is H(n, q) with labels (distance,)
    assert b.scheme.rank == n + 1
    assert b.tensor.valencies == tuple(math.comb(n, i) * (q - 1) ** i for i in range(n + 1))


def test_extension_valencies_are_multinomial():
    base = built("c5")
    b = built("extension(c5,3)")
    k = base.tensor.valencies
    n = 3
    for alpha, kv in zip(b.labels, b.tensor.valencies):
        rest = n - sum(alpha)
        coeff = math.factorial(n) // (math.factorial(rest) * math.prod(math.factorial(a) for a in alpha))
        assert kv == coeff * math.prod(k[i + 1] ** a for i, a in enumerate(alpha))
    assert b.scheme.rank == math.comb(n + 2, 2)


def test_direct_product_valencies_multiply():
    a, c = built("k3"), built("c5")
    b = built("product(k3,c5)")
    for lb, kv in zip(b.labels, b.tensor.valencies):
        assert kv == a.tensor.valencies[lb[0]] * c.tensor.valencies[lb[1]]


def test_composition_is_fusion_of_direct_product():
    prod = built("product(k3,c5)")
    comp = built("composition(k3,c5)")
    # product relation (i, j) goes to (i, 0) when i != 0 and to (0, j) otherwise
    target = {lb: (lb[0], 0) if lb[0] else lb for lb in prod.labels}
    cells = [[k for k, lb in enumerate(prod.labels) if target[lb] == c] for c in comp.labels]
    fused = fusion(prod.scheme, cells)
    assert np.array_equal(fused.relations, comp.scheme.relations)
    assert comp.scheme.class_count == 1 + 2


def test_nonbinary_johnson_equals_generalized_johnson_over_complete():
    for q, n, h in ((2, 3, 2), (3, 3, 2), (2, 4, 2)):
        direct = build(NonbinaryJohnson(q, n, h))
        gj = build(GeneralizedJohnson(Complete(q), n, h))
        assert direct.labels == gj.labels
        assert np.array_equal(direct.scheme.relations, gj.scheme.relations)


def test_attenuated_domain_and_sizes():
    assert attenuated_domain(2, 3, 2, 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    for q, n, m, l in ((2, 2, 1, 1), (2, 3, 1, 1), (2, 3, 2, 1), (3, 2, 1, 1)):
        b = built(f"attenuated:{q},{n},{m},{l}")
        assert b.scheme.size == gaussian_binomial(n, m, q) * q ** (m * l)
        assert sorted(b.labels) == attenuated_domain(q, n, m, l)


@pytest.mark.parametrize("name", ["k4", "c7", "hamming:2,3", "johnson:6,3", "dodecahedron", "nbjohnson:2,3,2"])
def test_canonical_labelings_pass(name):
    b = built(name)
    assert check_P(b.tensor, b.labeling).verdict


def test_dual_signatures_present_where_known():
    assert built("extension(c5,2)").dual_signatures is not None
    assert built("composition(k3,c5)").dual_signatures is not None
    assert built("genjohnson(k3,3,2)").dual_signatures is None
    assert expected_size(NonbinaryJohnson(2, 4, 2)) == 6 * 4
