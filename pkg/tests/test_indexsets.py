from fractions import Fraction

import pytest

from lattika.indexsets import (
    build_index_set,
    classify_nodes,
    congruence_classes,
    delta_grid,
    hat_map,
    hex_h_set,
    hom_congruent,
    k_dagger_set,
    k_set,
    k_star_cardinality,
    rr_fold,
    stage2_weights,
    upsilon,
    upsilon_dagger,
    xi_square,
    xi_square_cardinality,
    xi_triangle,
)
from lattika.lattice import CASE_TAGS, LatticeCase, det_n


def test_open_cardinality_equals_det():
    for tag in CASE_TAGS:
        for n in range(1, 9):
            case = LatticeCase(tag, n)
            assert len(build_index_set(case, "open")) == det_n(case), (tag, n)
            assert len(build_index_set(case, "dagger_open")) == det_n(case), (tag, n)


def test_square_rhombus_cardinality():
    for n in (1, 2, 3, 5):
        assert len(build_index_set(LatticeCase("SquareRhombus", n), "open")) == 2 * n * n


def test_hex_families_match_explicit_inequalities():
    for n in (1, 2, 3, 5):
        hh = LatticeCase("HexHex", n)
        assert sorted(build_index_set(hh, "open").coords()) == sorted(hex_h_set(n))
        assert sorted(build_index_set(hh, "closed").coords()) == sorted(hex_h_set(n, True))
        ht = LatticeCase("HexHexTranspose", n)
        assert sorted(build_index_set(ht, "open").coords()) == sorted(k_set(n))
        assert sorted(build_index_set(ht, "closed").coords()) == sorted(k_set(n, True))
        assert sorted(build_index_set(ht, "dagger_open").coords()) == sorted(k_dagger_set(n))
        assert sorted(build_index_set(ht, "dagger_closed").coords()) == sorted(
            k_dagger_set(n, True)
        )


def test_k_star_cardinality_formula():
    for n in range(1, 13):
        assert len(k_set(n, closed=True)) == k_star_cardinality(n)
        assert len(k_dagger_set(n, closed=True)) == k_star_cardinality(n)
    assert len(k_set(3, closed=True)) == 13  # 9 + 3 + 1


def test_xstar_classification_example():
    s = classify_nodes(build_index_set(LatticeCase("SquareRhombus", 2), "closed"))
    by_label = {(m.cart[0] + m.cart[1], m.cart[1] - m.cart[0]): m.cls for m in s}
    assert by_label[(2, 2)] == "vertex"
    assert by_label[(0, 2)] == "edge"
    assert by_label[(0, 0)] == "interior"
    assert by_label[(1, 1)] == "interior"


def test_vertex_counts():
    hexstar = classify_nodes(build_index_set(LatticeCase("HexHex", 3), "closed"))
    assert sum(1 for m in hexstar if m.cls == "vertex") == 6
    srstar = classify_nodes(build_index_set(LatticeCase("SquareRhombus", 3), "closed"))
    assert sum(1 for m in srstar if m.cls == "vertex") == 4
    # open square-square family is interior-only
    open_ss = classify_nodes(build_index_set(LatticeCase("SquareSquare", 2), "open"))
    assert all(m.cls == "interior" for m in open_ss)


def test_stage2_weights_are_inverse_multiplicities():
    for tag in CASE_TAGS:
        for n in (1, 2, 3, 4):
            case = LatticeCase(tag, n)
            s = build_index_set(case, "closed")
            _, w = stage2_weights(s)
            assert sum(w) == det_n(case), (tag, n)
            by_cart = dict(zip([m.cart for m in s], w))
            for cls in congruence_classes(s):
                assert sum(by_cart[m.cart] for m in cls) == 1, (tag, n)


def test_hat_map():
    assert hat_map((0, 0, 0)) == (0, 0, 0)
    assert hat_map((1, 0, -1)) == (-1, 2, -1)
    with pytest.raises(ValueError):
        hat_map((1, 0, 0))
    for n in (3, 6):
        ks, kds = k_set(n, True), k_dagger_set(n, True)
        for k in ks:
            h = hat_map(k)
            assert all(c % 3 == 0 for c in h)
            assert tuple(c // 3 for c in h) in kds
        for k in kds:
            assert hat_map(k) in ks
            assert hat_map(hat_map(k)) == tuple(-3 * c for c in k)


def test_hom_congruence():
    assert hom_congruent((3, 0, -3), (3, 0, -3), 9)
    assert hom_congruent((1, 1, -2), (-1, -1, 2), 6)  # difference (2,2,-4) = 2 mod 6... all equal
    assert not hom_congruent((3, 0, -3), (0, 0, 0), 9)


def test_upsilon_and_xi_sets():
    assert set(upsilon(3)) == {(0, 0, 0), (3, 0, -3), (0, 3, -3), (1, 1, -2)}
    assert upsilon(3, interior=True) == ((1, 1, -2),)
    for n in (3, 6, 9):
        for j in upsilon(n):
            assert sum(j) == 0
            assert (j[0] - j[1]) % 3 == 0 and (j[1] - j[2]) % 3 == 0
    assert set(xi_square(2)) == {(0, 0), (0, 2), (2, 0), (2, 2), (1, 1)}
    for n in range(1, 12):
        assert len(xi_square(n)) == xi_square_cardinality(n)
    assert len(xi_triangle(3)) == 10


def test_upsilon_dagger_counts():
    # sine-admissible frequencies match interior node counts at every n
    for n in range(2, 13):
        assert len(upsilon(n, interior=True)) == len(upsilon_dagger(n, sine=True)), n
    # the cosine side has one extra orbit except at n = 1, 3 (known paper gap)
    assert len(upsilon(3)) == len(upsilon_dagger(3)) == 4
    assert len(upsilon(6)) == 10 and len(upsilon_dagger(6)) == 11


def test_rr_fold():
    assert set(rr_fold(3)) == {(0, 0), (1, 1), (2, 0), (0, 2)}
    with pytest.raises(ValueError):
        rr_fold(4)


def test_delta_grid():
    assert len(delta_grid(4)) == 15
    assert len(delta_grid(4, interior=True)) == 3
