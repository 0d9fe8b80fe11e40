import itertools

import pytest

from schemekit.errors import AmbiguousLabeling, IncompleteLabeling, MalformedLabeling
from schemekit.orders import MonomialOrder
from schemekit.polycheck import (
    Certificate,
    Labeling,
    check_P,
    check_Q,
    essential_variate_P,
    essential_variate_Q,
    generated_dimension_P,
    infer_dual_labeling,
    infer_labeling,
    resolve_dual_labeling,
    search_P,
    search_Q,
)
from schemekit.spectrum import univariate_p_check

from conftest import built, spectrum_of


def distance_labeling(d):
    return Labeling(1, {(i,): i for i in range(d + 1)})


def test_labeling_validation():
    with pytest.raises(MalformedLabeling, match="injective"):
        Labeling(1, {(0,): 0, (1,): 0})
    with pytest.raises(MalformedLabeling):
        Labeling(2, {(0,): 0})
    with pytest.raises(MalformedLabeling):
        Labeling(1, {(0,): 0}, kind="R")
    lab = Labeling(1, {(0,): 1, (1,): 0})
    with pytest.raises(MalformedLabeling, match="identity"):
        lab.validate(2, 0)
    with pytest.raises(MalformedLabeling, match="bijection"):
        distance_labeling(1).validate(3, 0)
    with pytest.raises(MalformedLabeling, match="e_2"):
        Labeling(2, {(0, 0): 0, (1, 0): 1, (2, 0): 2}).validate(3, 0)


def test_labeling_json_round_trip():
    lab = built("hamming:3,2").labeling
    back = Labeling.from_json(lab.to_json())
    assert back.to_index == lab.to_index and back.kind == "P"
    with pytest.raises(MalformedLabeling):
        Labeling.from_json({"ell": 1})


def test_hamming_passes_distance_labeling():
    cert = check_P(built("hamming:3,2").tensor, distance_labeling(3))
    assert cert.verdict and cert.violations == []
    # leading coefficients are the c_{i+1} of the cube: 1, 2, 3
    assert [cert.leading_coeffs[(0, (i,))] for i in range(3)] == [1, 2, 3]


def test_pentagram_relabeling_of_c5_also_passes():
    assert check_P(built("c5").tensor, Labeling(1, {(0,): 0, (1,): 2, (2,): 1})).verdict


def test_wrong_distance_order_fails_on_leading_term():
    lab = Labeling(1, {(0,): 0, (1,): 2, (2,): 1, (3,): 3})
    cert = check_P(built("hamming:3,2").tensor, lab)
    assert not cert.verdict
    # A_2 A_2 has no A_1 term, so the would-be leading coefficient vanishes
    assert ("leading", 0, (1,), (2,)) in cert.violations
    assert isinstance(cert.to_json()["violations"], list)


def test_non_lower_set_is_reported():
    lab = Labeling(2, {(0, 0): 0, (1, 0): 1, (0, 1): 2, (2, 1): 3})
    cert = check_P(built("power(k2,2)").tensor, lab)
    assert any(v[0] == "lower_set" for v in cert.violations)


def test_product_labeling_of_k2_squared():
    b = built("power(k2,2)")
    assert check_P(b.tensor, b.labeling).verdict
    assert check_P(b.tensor, b.labeling, "lex").verdict
    # the diagonal relation alone does not generate
    assert generated_dimension_P(b.tensor, [3]) == 2


def test_check_kind_guard():
    b = built("c5")
    with pytest.raises(MalformedLabeling):
        check_Q(spectrum_of("c5"), b.labeling)
    with pytest.raises(MalformedLabeling):
        check_P(b.tensor, Labeling(1, {(0,): 0, (1,): 1, (2,): 2}, "Q"))


def test_infer_labeling_recovers_distance_order():
    lab = infer_labeling(built("hamming:3,2").tensor, [1])
    assert lab.to_index == {(0,): 0, (1,): 1, (2,): 2, (3,): 3}


def test_infer_labeling_incomplete_and_ambiguous():
    with pytest.raises(IncompleteLabeling):
        infer_labeling(built("hamming:3,2").tensor, [2])
    # A_2 A_2 of the dodecahedron reaches several new relations at once
    with pytest.raises(AmbiguousLabeling) as e:
        infer_labeling(built("dodecahedron").tensor, [2])
    assert len(e.value.candidates) > 1


def test_infer_labeling_argument_checks():
    t = built("c5").tensor
    with pytest.raises(ValueError):
        infer_labeling(t, [1, 1])
    with pytest.raises(ValueError):
        infer_labeling(t, [0])
    with pytest.raises(ValueError):
        infer_labeling(t, [7])


def test_search_results_pass_and_are_sorted():
    t = built("extension(k3,2)").tensor
    hits = search_P(t, 2)
    assert [h[0] for h in hits] == sorted(h[0] for h in hits)
    assert all(isinstance(c, Certificate) and c.verdict for _, _, c in hits)
    assert hits and search_P(t, 2, first_hit=True)[0][0] == hits[0][0]
    with pytest.raises(ValueError):
        search_P(t, 9)


def test_essential_variate():
    assert essential_variate_P(built("c5").tensor) == 1
    assert essential_variate_P(built("power(k2,2)").tensor) == 2
    assert essential_variate_P(built("power(k2,2)").tensor, ell_max=1) is None
    assert essential_variate_Q(spectrum_of("power(k2,2)")) == 2


def test_dual_labeling_of_hamming():
    b = built("hamming:3,2")
    s = spectrum_of("hamming:3,2")
    lab = resolve_dual_labeling(s, b.dual_signatures)
    assert check_Q(s, lab).verdict
    inferred = infer_dual_labeling(s, lab.generators)
    assert inferred.to_index == lab.to_index
    assert search_Q(s, 1)


def test_resolve_rejects_unknown_signature():
    s = spectrum_of("k3")
    with pytest.raises(MalformedLabeling):
        resolve_dual_labeling(s, {(0,): (1, 2), (1,): (1, 5)})


@pytest.mark.parametrize("name", ["k3", "c5", "c6", "dodecahedron", "hamming:3,2", "johnson:6,3", "power(k2,2)", "power(k3,2)"])
def test_univariate_equivalence_on_symmetric_schemes(name):
    t = built(name).tensor
    ok, _ = univariate_p_check(t)
    assert ok == bool(search_P(t, 1, MonomialOrder.grlex(1), first_hit=True))


def test_every_permuted_generator_pair_of_k2_cubed_fails():
    t = built("power(k2,3)").tensor
    for gens in itertools.permutations(range(1, 8), 2):
        assert generated_dimension_P(t, gens) <= 4
    assert search_P(t, 2) == []


def test_generalized_johnson_admits_dual_labeling_on_primal_domain():
    # numerical observation only, no dual signatures are known for this family
    b = built("genjohnson(k3,3,2)")
    hits = search_Q(spectrum_of("genjohnson(k3,3,2)"), 2, MonomialOrder.grlex(2))
    assert hits
    assert any(lab.domain == b.labeling.domain for _, lab, _ in hits)
