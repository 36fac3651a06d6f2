import math

import numpy as np
import pytest

from lattika.quadrature import (
    integrate_exponentials,
    integrate_function,
    polygon_rule,
    triangle_rule,
)

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


def test_triangle_monomials_closed_form():
    # int_T x^a y^b = a! b! / (a+b+2)!
    pts, w = triangle_rule(TRIANGLE, 14)
    for a in range(5):
        for b in range(5):
            got = np.sum(w * pts[:, 0] ** a * pts[:, 1] ** b)
            want = math.factorial(a) * math.factorial(b) / math.factorial(a + b + 2)
            assert got == pytest.approx(want, abs=1e-14)


def test_polygon_rule_square_polynomials():
    pts, w = polygon_rule(SQUARE, 10)
    assert np.sum(w) == pytest.approx(1.0, abs=1e-13)
    got = np.sum(w * pts[:, 0] ** 3 * pts[:, 1] ** 2)
    assert got == pytest.approx(1.0 / 12.0, abs=1e-13)


def test_exponential_against_separable_closed_form():
    waves = np.array([[2.0, 0.0], [3.0, 4.0], [40.0, -25.0], [0.0, 0.0]])

    def one_axis(w):
        if w == 0:
            return 1.0 + 0.0j
        return (np.exp(1j * w) - 1.0) / (1j * w)

    got = integrate_exponentials(SQUARE, waves)
    want = np.array([one_axis(w[0]) * one_axis(w[1]) for w in waves])
    assert np.abs(got - want).max() < 1e-13


def test_integrate_function_matches_exponential_path():
    w = np.array([17.0, -9.0])
    got = integrate_function(SQUARE, lambda p: np.exp(1j * (p @ w)), cycles=4.0)
    want = integrate_exponentials(SQUARE, w[None, :])[0]
    assert abs(got - want) < 1e-12


def test_riemann_sum_cross_check():
    # independent dense-grid Riemann sum at loose tolerance
    w = np.array([5.5, 2.25])
    m = 1500
    u = (np.arange(m) + 0.5) / m
    X, Y = np.meshgrid(u, u, indexing="ij")
    riemann = np.exp(1j * (w[0] * X + w[1] * Y)).mean()
    got = integrate_exponentials(SQUARE, w[None, :])[0]
    assert abs(got - riemann) < 1e-6
