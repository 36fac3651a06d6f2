import math

import numpy as np
import pytest

from lattika.fourier import phi
from lattika.lattice import LatticeCase
from lattika.quadrature import integrate_function
from lattika.triangle import (
    A2_ELEMENTS,
    IndexOutsideCone,
    NegativeBracket,
    apply_a2,
    bracket,
    generalized_chebyshev,
    project_pm,
    steiner_jacobian,
    steiner_map,
    tc,
    ts,
    w_alpha,
)

T_POLY = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


def rand_hom(rng, m):
    a = rng.uniform(-1, 1, (m, 2))
    return np.concatenate([a, -a.sum(axis=1, keepdims=True)], axis=1)


def hom_of(pts2):
    return np.stack([pts2[:, 0], pts2[:, 1], -pts2[:, 0] - pts2[:, 1]], axis=-1)


def test_group_structure():
    elems = set()
    for p1, s1 in A2_ELEMENTS:
        for p2, s2 in A2_ELEMENTS:
            comp = tuple(p1[p2[i]] for i in range(3))
            elems.add((comp, s1 * s2))
    assert elems == set(A2_ELEMENTS)
    # reflections fix their wall: -(t3, t2, t1) fixes t2 = 0
    t = np.array([0.4, 0.0, -0.4])
    refl = ((2, 1, 0), -1)
    assert np.allclose(apply_a2(t, refl), t)


def test_invariance_and_anti_invariance():
    rng = np.random.default_rng(42)
    T = rand_hom(rng, 50)
    for _ in range(50):
        k1, k2 = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        k = (k1, k2, -k1 - k2)
        for e in A2_ELEMENTS:
            Ts = apply_a2(T, e)
            assert np.abs(tc(k, Ts) - tc(k, T)).max() < 1e-12
            assert np.abs(ts(k, Ts) - e[1] * ts(k, T)).max() < 1e-12


def test_cone_checks_and_special_values():
    rng = np.random.default_rng(1)
    T = rand_hom(rng, 30)
    assert np.abs(tc((0, 0, 0), T) - 1).max() < 1e-14
    zero = np.zeros(3)
    for k in ((1, 0, -1), (2, 3, -5), (0, 4, -4)):
        assert tc(k, zero) == pytest.approx(1.0)
    assert ts((1, 1, -2), zero) == pytest.approx(0.0)
    # sines vanish on the wall t1 = 0
    wall = np.array([[0.0, 0.3, -0.3], [0.0, -0.7, 0.7]])
    assert np.abs(ts((2, 1, -3), wall)).max() < 1e-13
    with pytest.raises(IndexOutsideCone):
        tc((-1, 0, 1), zero)
    with pytest.raises(IndexOutsideCone):
        ts((0, 1, -1), zero)
    with pytest.raises(IndexOutsideCone):
        tc((1, 1, -3), zero)


def test_frozen_value_tc01():
    assert tc((0, 1, -1), np.array([0.5, 0.5, -1.0])) == pytest.approx(-1.0 / 3.0)


def test_projection_constants():
    rng = np.random.default_rng(7)
    case = LatticeCase("HexHex", 1)
    T = rand_hom(rng, 40)
    const = project_pm(lambda t: np.ones(t.shape[:-1]), -1)(T)
    assert np.abs(const).max() < 1e-14
    for _ in range(6):
        k1, k2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        k = (k1, k2, -k1 - k2)
        f = lambda t, k=k: phi(case, k, t)
        assert np.abs(project_pm(f, +1)(T) - 6 * tc(k, T)).max() < 1e-11
        assert np.abs(project_pm(f, -1)(T) - 6j * ts(k, T)).max() < 1e-11
        # P+ P+ = 6 P+ (group-sum idempotence up to |A2|)
        pf = project_pm(f, +1)
        assert np.abs(project_pm(pf, +1)(T) - 6 * pf(T)).max() < 1e-10


def test_steiner_map_frozen_values():
    assert np.allclose(steiner_map(np.array([0.0, 0.0, 0.0])), [1, 0])
    assert np.allclose(steiner_map(np.array([1.0, 1.0, -2.0])), [1, 0])
    assert np.allclose(steiner_map(np.array([0.5, 0.5, -1.0])), [-1 / 3, 0])


def test_steiner_jacobian_vs_finite_differences():
    t = np.array([0.21, 0.33, -0.54])
    h = 1e-6

    def m2(t1, t2):
        return steiner_map(np.array([t1, t2, -t1 - t2]))

    J = np.zeros((2, 2))
    J[:, 0] = (m2(t[0] + h, t[1]) - m2(t[0] - h, t[1])) / (2 * h)
    J[:, 1] = (m2(t[0], t[1] + h) - m2(t[0], t[1] - h)) / (2 * h)
    assert np.linalg.det(J) == pytest.approx(steiner_jacobian(t), abs=1e-6)


def test_bracket_values_and_identity():
    assert bracket(1.0, 0.0) == pytest.approx(0.0, abs=1e-14)
    assert bracket(0.0, 0.0) == pytest.approx(1.0)
    rng = np.random.default_rng(3)
    T = rand_hom(rng, 200)
    xy = steiner_map(T)
    prod = np.prod(np.sin(np.pi * T), axis=-1)
    assert np.abs(bracket(xy[:, 0], xy[:, 1]) - (64.0 / 27.0) * prod**2).max() < 1e-11


def test_triangle_maps_into_hypocycloid_region():
    rng = np.random.default_rng(4)
    u = rng.uniform(0, 1, (10_000, 2))
    u = u[u.sum(axis=1) <= 1.0]
    xy = steiner_map(hom_of(u))
    assert bracket(xy[:, 0], xy[:, 1]).min() > -1e-12


def test_w_alpha():
    assert w_alpha(0.0, 0.0, 0.5) == pytest.approx(math.sqrt(4 / 27) * math.pi**2)
    with pytest.raises(NegativeBracket):
        w_alpha(2.0, 2.0, -0.5)


def test_tc_orthogonality_over_delta():
    cone = [(k1, k2, -k1 - k2) for k1 in range(4) for k2 in range(4 - k1)]
    gram = np.zeros((len(cone), len(cone)), dtype=complex)
    for i, ki in enumerate(cone):
        for j, kj in enumerate(cone):
            if j < i:
                gram[i, j] = np.conj(gram[j, i])
                continue
            gram[i, j] = integrate_function(
                T_POLY,
                lambda p, ki=ki, kj=kj: tc(ki, hom_of(p)) * np.conj(tc(kj, hom_of(p))),
                cycles=8.0,
            )
    off = gram - np.diag(np.diag(gram))
    assert np.abs(off).max() < 1e-10


def test_generalized_chebyshev_basics():
    rng = np.random.default_rng(6)
    T = rand_hom(rng, 60)
    assert np.abs(generalized_chebyshev("first", 0, 0, T) - 1).max() < 1e-14
    assert np.abs(generalized_chebyshev("second", 0, 0, T) - 1).max() < 1e-8
    xy = steiner_map(T)
    z = generalized_chebyshev("first", 0, 1, T)
    assert np.abs(z - (xy[:, 0] + 1j * xy[:, 1])).max() < 1e-13
    with pytest.raises(ValueError):
        generalized_chebyshev("first", 3, 2, T)


def _fit_residual(vals, xy, degree):
    cols = [
        xy[:, 0] ** a * xy[:, 1] ** b
        for a in range(degree + 1)
        for b in range(degree + 1 - a)
    ]
    V = np.stack(cols, axis=1)
    resid_re = np.linalg.lstsq(V, vals.real, rcond=None)[1]
    resid_im = np.linalg.lstsq(V, vals.imag, rcond=None)[1]
    total = 0.0
    for r in (resid_re, resid_im):
        total += float(r[0]) if len(r) else 0.0
    return math.sqrt(total)


def test_polynomiality_of_generalized_chebyshev():
    rng = np.random.default_rng(8)
    u = rng.uniform(0.02, 0.95, (400, 2))
    u = u[u.sum(axis=1) <= 0.97]
    T = hom_of(u)
    xy = steiner_map(T)
    for m in range(1, 6):
        for k in range(m + 1):
            for kind in ("first", "second"):
                vals = generalized_chebyshev(kind, k, m, T)
                assert _fit_residual(vals, xy, m) < 1e-9, (kind, k, m)


def test_u_quotient_limit_on_wall():
    base = np.array([0.0, 0.37, -0.37])
    d = np.array([1.0, math.e / 10, -1 - math.e / 10])
    lim = generalized_chebyshev("second", 1, 2, base)
    ladder = [
        ts((2, 2, -4), base + eps * d) / ts((1, 1, -2), base + eps * d)
        for eps in (1e-3, 1e-4, 1e-5)
    ]
    assert abs(ladder[-1] - lim) < 1e-4
    assert abs(ladder[-1] - lim) < abs(ladder[0] - lim)


def test_chebyshev_orthogonality_with_weights():
    # T_k^m under w_{-1/2} and U_k^m under w_{1/2}, by pullback to the triangle:
    # the w_{1/2} pairing of U's is c0 * int_T TS_a conj(TS_b) (walls cancel)
    pairs = [(k, m) for m in range(3) for k in range(m + 1)]
    gram_t = np.zeros((len(pairs), len(pairs)), dtype=complex)
    gram_u = np.zeros_like(gram_t)
    c0 = (16.0 / 81.0) * math.pi**4
    for i, (ki, mi) in enumerate(pairs):
        for j, (kj, mj) in enumerate(pairs):
            gram_t[i, j] = integrate_function(
                T_POLY,
                lambda p, a=(ki, mi - ki, -mi), b=(kj, mj - kj, -mj): tc(a, hom_of(p))
                * np.conj(tc(b, hom_of(p))),
                cycles=6.0,
            )
            na = (ki + 1, mi - ki + 1, -mi - 2)
            nb = (kj + 1, mj - kj + 1, -mj - 2)
            gram_u[i, j] = c0 * integrate_function(
                T_POLY,
                lambda p, na=na, nb=nb: ts(na, hom_of(p)) * np.conj(ts(nb, hom_of(p))),
                cycles=6.0,
            )
    for g in (gram_t, gram_u):
        off = g - np.diag(np.diag(g))
        assert np.abs(off).max() < 1e-8
        assert np.abs(np.diag(g)).min() > 1e-6
