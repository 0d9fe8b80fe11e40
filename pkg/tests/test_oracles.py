import pytest

from schemekit.constructors import BuiltScheme, build, parse_family
from schemekit.constructors.finite_field import q_number
from schemekit.constructors.oracles import (
    attenuated_recurrence_oracle,
    brute_force_coefficients,
    composition_identities,
    composition_krein_identities,
    extension_recurrence_oracle,
    generalized_johnson_oracle,
    oracle_compare,
)
from schemekit.errors import OracleDomainError
from schemekit.polycheck import Labeling

from conftest import built


def test_extension_leading_coefficient_on_binary_base():
    t = built("k2").tensor
    for n in (2, 3, 4):
        for a in range(n):
            assert extension_recurrence_oracle(t, n, 1, (a,))[(a + 1,)] == a + 1


def test_extension_k3_square_example():
    coeffs = extension_recurrence_oracle(built("k3").tensor, 2, 1, (1,))
    assert coeffs[(2,)] == 2
    assert coeffs == brute_force_coefficients(built("extension(k3,2)"), (1,), (1,))


def test_extension_at_origin():
    assert extension_recurrence_oracle(built("c5").tensor, 3, 2, (0, 0)) == {(0, 1): 1}


def test_extension_rejects_out_of_domain():
    with pytest.raises(ValueError):
        extension_recurrence_oracle(built("k3").tensor, 2, 1, (3,))


def test_extension_reverse_term_uses_transpose_for_nonsymmetric_base():
    # for Z_3 the generator A_1 reaches the identity only through its transpose A_2,
    # so the alpha - e_i term has to sit on alpha - e_{i'}
    b = built("extension(z3,2)")
    pred = extension_recurrence_oracle(built("z3").tensor, 2, 1, (0, 1))
    assert pred == brute_force_coefficients(b, (1, 0), (0, 1))
    assert (0, 0) in pred and pred[(0, 0)] == 2


def test_attenuated_leading_coefficients():
    q, n, m, l = 2, 3, 2, 1
    for i, j in [(0, 0), (0, 1)]:
        a10 = attenuated_recurrence_oracle(q, n, m, l, "A10", (i, j))
        assert a10[(i + 1, j)] == q_number(i + 1, q) ** 2 * q**j
    for i, j in [(0, 0), (1, 0)]:
        a01 = attenuated_recurrence_oracle(q, n, m, l, "A01", (i, j))
        assert a01[(i, j + 1)] == q_number(j + 1, q) * q ** (i + j)


def test_attenuated_a01_at_origin():
    assert attenuated_recurrence_oracle(2, 2, 1, 1, "A01", (0, 0)) == {(0, 1): 1}


def test_attenuated_errors():
    with pytest.raises(ValueError):
        attenuated_recurrence_oracle(2, 2, 1, 1, "A01", (1, 1))
    with pytest.raises(ValueError):
        attenuated_recurrence_oracle(2, 2, 1, 1, "A11", (0, 0))


def test_generalized_johnson_case_formulas():
    fiber = built("k3")
    Y, n, h = 3, 4, 2
    t, alpha = 1, (0,)
    pred = generalized_johnson_oracle(fiber.tensor, Y, n, h, (1, 0), (t,) + alpha)
    assert pred[(t + 1,) + alpha] == (t + 1) ** 2
    assert pred[(t - 1,) + alpha] == Y * (n - h - t + 1) * (h - t + 1 - sum(alpha))


def test_generalized_johnson_fiber_step_example():
    pred = generalized_johnson_oracle(built("k3").tensor, 3, 3, 2, (0, 1), (0, 0))
    assert pred[(0, 1)] == 1
    assert pred == brute_force_coefficients(built("genjohnson(k3,3,2)"), (0, 1), (0, 0))


def test_generalized_johnson_errors():
    with pytest.raises(ValueError):
        generalized_johnson_oracle(built("k3").tensor, 3, 3, 2, (0, 1), (3, 0))
    with pytest.raises(ValueError):
        generalized_johnson_oracle(built("k3").tensor, 3, 3, 2, (1, 1), (0, 0))


@pytest.mark.parametrize(
    "spec",
    ["extension(k2,3)", "extension(c5,2)", "extension(z3,2)", "attenuated:2,2,1,1", "attenuated:3,2,1,1",
     "genjohnson(k3,3,2)", "genjohnson(c5,3,2)", "genjohnson(z3,3,2)", "composition(k3,c5)"],
)
def test_oracle_compare_empty_diff(spec):
    diff = oracle_compare(parse_family(spec))
    assert diff.ok and diff.checked > 0
    assert diff.to_json()["mismatches"] == []


def test_oracle_compare_reports_mismatch():
    spec = parse_family("extension(k3,2)")
    b = build(spec)
    # a relabeled scheme must disagree with the oracle somewhere
    swapped = {(0,): 0, (1,): 2, (2,): 1}
    fake = BuiltScheme(b.scheme, b.labels, Labeling(1, swapped), None, "grlex", "swapped")
    diff = oracle_compare(spec, first_only=True, built=fake)
    assert not diff.ok and len(diff.mismatches) == 1


def test_oracle_compare_unsupported_family():
    with pytest.raises(OracleDomainError):
        oracle_compare(parse_family("c5"))


def test_composition_identities_k3_c5():
    outer, fiber, comp = built("k3"), built("c5"), built("composition(k3,c5)")
    assert all(ok for _, ok in composition_identities(outer, fiber, comp))
    assert all(ok for _, ok in composition_krein_identities(outer, fiber, comp))


def test_composition_identities_with_multiclass_outer():
    outer, fiber = built("c5"), built("k2")
    comp = build("composition(c5,k2)")
    assert all(ok for _, ok in composition_identities(outer, fiber, comp))
    assert all(ok for _, ok in composition_krein_identities(outer, fiber, comp))
