import math
from fractions import Fraction

import numpy as np
import pytest

from lattika.field import QSqrt3, SQRT3
from lattika.geometry import polygon_area
from lattika.lattice import (
    CASE_TAGS,
    LatticeCase,
    contains_many,
    det_n,
    domain_contains,
    domain_polygon,
    generator_matrices,
    hom_to_cartesian,
    reduce_mod_lattice,
    to_homogeneous,
    verify_tiling,
)


def test_generator_matrices_examples():
    # square-square: A = I, B = 2nI
    _, _, N = generator_matrices(LatticeCase("SquareSquare", 3))
    assert N.as_int_tuple() == (6, 0, 0, 6)
    assert det_n(LatticeCase("SquareSquare", 3)) == 36
    # transpose pair: N = n I
    _, _, N = generator_matrices(LatticeCase("HexHexTranspose", 5))
    assert N.as_int_tuple() == (5, 0, 0, 5)
    # hexagon pair: N = [[2n, -n], [-n, 2n]], det 3 n^2
    _, _, N = generator_matrices(LatticeCase("HexHex", 4))
    assert N.as_int_tuple() == (8, -4, -4, 8)
    assert det_n(LatticeCase("HexHex", 4)) == 48


def test_n_is_integral_everywhere():
    for tag in CASE_TAGS:
        for n in range(1, 9):
            _, _, N = generator_matrices(LatticeCase(tag, n))
            assert N.is_integer()


def test_domain_polygon_area_matches_det_a():
    for tag in CASE_TAGS:
        case = LatticeCase(tag, 2)
        A, _, _ = generator_matrices(case)
        area = abs(float(polygon_area(domain_polygon(case))))
        assert area == pytest.approx(abs(float(A.det())), rel=1e-12)


def test_to_homogeneous_examples():
    assert np.allclose(to_homogeneous((0.0, 0.0)), [0, 0, 0])
    assert np.allclose(to_homogeneous((2 / math.sqrt(3), 0.0)), [1, 0, -1])
    assert np.allclose(to_homogeneous((0.0, 1.0)), [-0.5, 1, -0.5])
    exact = to_homogeneous((QSqrt3(2) / SQRT3, 0))
    assert [v.as_fraction() for v in exact] == [1, 0, -1]


def test_hom_roundtrip():
    rng = np.random.default_rng(2)
    x = rng.uniform(-1, 1, (40, 2))
    t = np.stack([to_homogeneous(xi) for xi in x])
    assert np.abs(t.sum(axis=1)).max() < 1e-14
    back = hom_to_cartesian(t)
    assert np.abs(back - x).max() < 1e-14


def test_domain_membership_examples():
    hh = LatticeCase("HexHex", 1)
    assert domain_contains(hh, (0, 0, 0))
    assert domain_contains(hh, (-1, 0, 1))
    assert not domain_contains(hh, (1, 0, -1))
    ss = LatticeCase("SquareSquare", 1)
    assert not domain_contains(ss, (Fraction(1, 2), 0))
    assert domain_contains(ss, (Fraction(-1, 2), Fraction(-1, 2)))


def test_reduce_examples():
    ss = LatticeCase("SquareSquare", 2)
    r = reduce_mod_lattice(ss, (0.7, -0.6))
    assert np.allclose(r, (-0.3, 0.4))
    hh = LatticeCase("HexHex", 1)
    r = reduce_mod_lattice(hh, (1, 0, -1))
    assert tuple(v.as_fraction() for v in r) == (0, -1, 1)


def test_reduce_idempotent_and_lattice_difference():
    rng = np.random.default_rng(5)
    for tag in CASE_TAGS:
        case = LatticeCase(tag, 1)
        A, _, _ = generator_matrices(case)
        Af = np.array(A.to_float())
        for x in rng.uniform(-3, 3, (25, 2)):
            red = np.array(reduce_mod_lattice(case, tuple(x)))
            red2 = np.array(reduce_mod_lattice(case, tuple(red)))
            assert np.allclose(red, red2), (tag, x)
            k = np.linalg.solve(Af, x - red)
            assert np.abs(k - np.rint(k)).max() < 1e-9, (tag, x)


def test_hom_reduce_idempotent():
    hh = LatticeCase("HexHex", 1)
    rng = np.random.default_rng(8)
    for _ in range(25):
        a = rng.uniform(-3, 3, 2)
        t = (a[0], a[1], -a[0] - a[1])
        red = reduce_mod_lattice(hh, t)
        assert domain_contains(hh, red)
        d = np.array(t) - np.array(red)
        # difference must be an integer combination of the homogeneous generators
        assert np.abs(d - np.rint(d)).max() < 1e-9
        r = np.rint(d).astype(int)
        assert (r[0] - r[1]) % 3 == 0 and (r[1] - r[2]) % 3 == 0


def test_partition_property_sampled():
    rng = np.random.default_rng(11)
    for tag in CASE_TAGS:
        case = LatticeCase(tag, 1)
        A, _, _ = generator_matrices(case)
        Af = np.array(A.to_float())
        pts = rng.uniform(-2.5, 2.5, (2000, 2))
        base = np.rint(pts @ np.linalg.inv(Af).T)
        counts = np.zeros(len(pts), dtype=int)
        for d1 in range(-3, 4):
            for d2 in range(-3, 4):
                shift = (base + [d1, d2]) @ Af.T
                counts += contains_many(case, pts - shift)
        assert (counts == 1).all(), tag


def test_tiling_report_and_shrink_hook():
    rep = verify_tiling(LatticeCase("SquareSquare", 1), 2000, seed=3)
    assert rep.max_cover_deviation == 0
    rep = verify_tiling(LatticeCase("HexH1", 1), 2000, seed=3)
    assert rep.max_cover_deviation == 0
    broken = verify_tiling(LatticeCase("SquareSquare", 1), 1000, seed=3, scale=0.9)
    assert broken.max_cover_deviation == 1
