import random
from fractions import Fraction

import pytest

from lattika.field import Mat2, Q0, Q1, QSqrt3, SQRT3, mat2_identity
from lattika.geometry import HalfPlane, clip_polygon, convex_polygon, polygon_area, voronoi_cell


def rand_frac(rng):
    return Fraction(rng.randint(-50, 50), rng.randint(1, 20))


def test_conjugate_norm_identity():
    # (p + q sqrt3)(p - q sqrt3) = p^2 - 3 q^2, exactly, 100 random pairs
    rng = random.Random(7)
    for _ in range(100):
        p, q = rand_frac(rng), rand_frac(rng)
        z = QSqrt3(p, q)
        assert (z * z.conjugate()) == QSqrt3(p * p - 3 * q * q)


def test_field_operations_exact():
    rng = random.Random(1)
    for _ in range(50):
        a = QSqrt3(rand_frac(rng), rand_frac(rng))
        b = QSqrt3(rand_frac(rng), rand_frac(rng))
        if b:
            assert (a / b) * b == a
        assert a + b - b == a
    with pytest.raises(ZeroDivisionError):
        Q1 / Q0


def test_exact_order_matches_float():
    rng = random.Random(3)
    for _ in range(200):
        a = QSqrt3(rand_frac(rng), rand_frac(rng))
        b = QSqrt3(rand_frac(rng), rand_frac(rng))
        if a == b:
            continue
        assert (a < b) == (float(a) < float(b))


def test_sqrt3_is_irrational_and_squares():
    assert SQRT3 * SQRT3 == QSqrt3(3)
    assert not SQRT3.is_rational()
    with pytest.raises(ValueError):
        SQRT3.as_fraction()


def test_mat2_algebra():
    m = Mat2(1, SQRT3, Fraction(1, 2), 2)
    assert m.transpose().transpose() == m
    inv = m.inverse()
    prod = m @ inv
    assert prod == mat2_identity()
    assert m.det() == QSqrt3(2) - SQRT3 * Fraction(1, 2)


def test_clip_and_area():
    square = [(QSqrt3(1), QSqrt3(1)), (QSqrt3(-1), QSqrt3(1)),
              (QSqrt3(-1), QSqrt3(-1)), (QSqrt3(1), QSqrt3(-1))]
    clipped = clip_polygon(square, HalfPlane(1, 0, 0))  # keep x <= 0
    assert polygon_area(clipped).sign() != 0
    assert abs(float(polygon_area(clipped))) == pytest.approx(2.0)


def test_voronoi_cell_area_is_det():
    A = Mat2(1, 1, -2, 1)  # det 3
    cell = voronoi_cell(A)
    assert float(polygon_area(cell)) == pytest.approx(3.0)
    assert len(cell) == 6


def test_convex_polygon_empty_interior():
    with pytest.raises(ValueError):
        convex_polygon([HalfPlane(1, 0, 0), HalfPlane(-1, 0, -1)])
