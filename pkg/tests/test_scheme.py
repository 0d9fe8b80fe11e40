import json

import numpy as np
import pytest

from schemekit.errors import AxiomViolation, BoundsExceeded, NonCommutative, NotAScheme
from schemekit.scheme import (
    adjacency_product_coeffs,
    from_relation_matrix,
    fusion,
    intersection_tensor,
    read_scheme,
    scheme_from_json,
    write_scheme,
)

from conftest import adjacency_stack, built


def cycle_matrix(n):
    x = np.arange(n)
    d = np.abs(x[:, None] - x[None, :])
    return np.minimum(d, n - d)


def test_complete_graph_intersection_numbers():
    R = 1 - np.eye(4, dtype=int)
    t = from_relation_matrix(4, R).tensor
    assert t.valencies == (1, 3)
    # p^1_{11} = q - 2 for K_q
    assert t.p[1, 1, 1] == 2
    assert t.p[1, 1, 0] == 3


def test_c5_tensor_matches_matrix_products():
    s = from_relation_matrix(5, cycle_matrix(5))
    A = adjacency_stack(s)
    for i in range(s.rank):
        for j in range(s.rank):
            assert np.array_equal(A[i] @ A[j], np.tensordot(s.tensor.p[i, j], A, axes=1))
    assert np.array_equal(adjacency_product_coeffs(s, 1, 1), s.tensor.p[1, 1])


def test_full_and_witness_verification_agree():
    s = built("dodecahedron").scheme
    assert np.array_equal(intersection_tensor(s, full=True).p, s.tensor.p)


def test_bad_shape_is_a1():
    with pytest.raises(AxiomViolation) as e:
        from_relation_matrix(3, np.zeros((2, 2), dtype=int))
    assert e.value.axiom == "A1"


def test_gap_in_relation_indices_is_a1():
    R = 2 * (1 - np.eye(3, dtype=int))
    with pytest.raises(AxiomViolation, match="surjective"):
        from_relation_matrix(3, R)


def test_identity_off_diagonal_is_a2():
    R = np.zeros((3, 3), dtype=int)
    R[0, 1] = R[1, 0] = 1
    with pytest.raises(AxiomViolation) as e:
        from_relation_matrix(3, R)
    assert e.value.axiom == "A2"


def test_transpose_not_a_relation_is_a3():
    R = np.array([[0, 1, 1], [2, 0, 1], [1, 2, 0]])
    with pytest.raises(AxiomViolation) as e:
        from_relation_matrix(3, R)
    assert e.value.axiom == "A3"


def test_path_graph_is_not_a_scheme():
    # distances in a path on 3 vertices: not regular, so A4 fails
    R = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    with pytest.raises(NotAScheme):
        from_relation_matrix(3, R)


def test_nonabelian_group_scheme_is_noncommutative():
    # S_3 acting on itself: relation index = x^{-1} y
    import itertools

    perms = list(itertools.permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}

    def inv(p):
        out = [0] * 3
        for a, b in enumerate(p):
            out[b] = a
        return tuple(out)

    def mul(p, q):
        return tuple(p[q[a]] for a in range(3))

    R = np.array([[index[mul(inv(x), y)] for y in perms] for x in perms])
    with pytest.raises(NonCommutative):
        from_relation_matrix(6, R)


def test_non_symmetric_scheme_transpose_map():
    s = built("z3").scheme
    assert not s.is_symmetric
    assert s.transpose_map == (0, 2, 1)
    assert s.tensor.p[1, 2, 0] == 1


def test_json_round_trip(tmp_path):
    s = built("c5").scheme
    path = tmp_path / "c5.json"
    write_scheme(path, s, family="c5")
    doc = json.loads(path.read_text())
    assert doc["schema"] == 1 and doc["family"] == "c5"
    back = read_scheme(path)
    assert np.array_equal(back.relations, s.relations)
    assert np.array_equal(back.tensor.p, s.tensor.p)


def test_json_rejects_missing_fields():
    with pytest.raises(ValueError):
        scheme_from_json({"size": 3})
    with pytest.raises(ValueError, match="schema"):
        scheme_from_json({"schema": 2, "size": 1, "relations": [[0]]})


def test_fusion_of_c5_distance_classes():
    s = built("z4").scheme
    # {1, 3} is closed under transpose; fusing gives the 4-cycle
    fused = fusion(s, [[0], [1, 3], [2]])
    assert fused.class_count == 2 and fused.is_symmetric


def test_fusion_rejects_non_scheme_partition():
    s = built("c5").scheme
    with pytest.raises(ValueError):
        fusion(s, [[0], [1, 2, 9]])


def test_ground_set_cap(monkeypatch):
    monkeypatch.setenv("SCHEMEKIT_MAX_GROUND_SET", "4")
    with pytest.raises(BoundsExceeded):
        from_relation_matrix(5, cycle_matrix(5))
