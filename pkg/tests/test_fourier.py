import numpy as np
import pytest

from lattika.fourier import (
    DomainOracle,
    TrigPoly,
    continuous_gram,
    continuous_inner_oracle,
    discrete_gram,
    discrete_inner,
    phi,
    random_trig_poly,
)
from lattika.indexsets import build_index_set, hat_map, hom_congruent, node_points_float
from lattika.lattice import CASE_TAGS, LatticeCase, reduce_mod_lattice


def test_phi_examples():
    case = LatticeCase("HexHex", 2)
    assert phi(case, (0, 0, 0), (0.37, -0.12, -0.25)) == pytest.approx(1.0)
    assert phi(case, (1, 0, -1), (1.0, 1.0, -2.0)) == pytest.approx(1.0)
    assert abs(phi(case, (2, -1, -1), (0.3, 0.1, -0.4))) == pytest.approx(1.0)


def test_phi_lattice_periodicity():
    rng = np.random.default_rng(0)
    for tag in ("SquareSquare", "RhombicSquare", "HexH2"):
        case = LatticeCase(tag, 2)
        for _ in range(25):
            x = tuple(rng.uniform(-2, 2, 2))
            red = reduce_mod_lattice(case, x)
            for k in ((1, 0), (2, -3)):
                assert phi(case, k, np.array(x)) == pytest.approx(
                    complex(phi(case, k, np.array(red, dtype=float))), abs=1e-12
                )
    case = LatticeCase("HexHex", 2)
    for _ in range(25):
        a = rng.uniform(-2, 2, 2)
        t = np.array([a[0], a[1], -a.sum()])
        red = np.array(reduce_mod_lattice(case, tuple(t)), dtype=float)
        assert phi(case, (1, 2, -3), t) == pytest.approx(
            complex(phi(case, (1, 2, -3), red)), abs=1e-12
        )


def test_discrete_gram_identity_sample():
    for tag in CASE_TAGS:
        rep = discrete_gram(LatticeCase(tag, 3), "open")
        assert max(rep.max_offdiag, rep.max_diag_deviation) < 1e-12, tag
    rep = discrete_gram(LatticeCase("HexHexTranspose", 5), "starred")
    assert max(rep.max_offdiag, rep.max_diag_deviation) < 1e-12


def test_inner_product_normalization_and_symmetry():
    rng = np.random.default_rng(4)
    case = LatticeCase("HexHexTranspose", 4)
    one = TrigPoly(case, {(0, 0, 0): 1.0})
    assert discrete_inner(case, one, one, "open") == pytest.approx(1.0)
    assert discrete_inner(case, one, one, "starred") == pytest.approx(1.0)
    f = random_trig_poly(case, rng)
    g = random_trig_poly(case, rng)
    assert discrete_inner(case, f, g) == pytest.approx(
        np.conj(discrete_inner(case, g, f)), abs=1e-14
    )


def test_starred_inner_equals_open_for_periodic_functions():
    rng = np.random.default_rng(9)
    for tag in ("HexHex", "HexHexTranspose", "SquareRhombus"):
        case = LatticeCase(tag, 3)
        f = random_trig_poly(case, rng)
        g = random_trig_poly(case, rng)
        a = discrete_inner(case, f, g, "open")
        b = discrete_inner(case, f, g, "starred")
        assert a == pytest.approx(b, abs=1e-11)


def test_transpose_starred_delta_is_mod_3n_congruence():
    n = 3
    case = LatticeCase("HexHexTranspose", n)
    nodesK = build_index_set(case, "open").coords()  # K_n labels
    for j in nodesK:
        for k in nodesK:
            val = discrete_inner(
                case, TrigPoly(case, {j: 1.0}), TrigPoly(case, {k: 1.0}), "starred"
            )
            expect = 1.0 if hom_congruent(hat_map(j), hat_map(k), 3 * n) else 0.0
            assert val == pytest.approx(expect, abs=1e-12), (j, k)


def test_continuous_oracle_normalization_and_fuglede():
    for tag in CASE_TAGS:
        case = LatticeCase(tag, 1)
        one = TrigPoly(case, {((0, 0, 0) if case.is_hex else (0, 0)): 1.0})
        assert continuous_inner_oracle(case, one, one) == pytest.approx(1.0, abs=1e-12)
        rep = continuous_gram(case)
        assert max(rep.max_offdiag, rep.max_diag_deviation) < 1e-10, tag


def test_continuous_discrete_agreement():
    rng = np.random.default_rng(21)
    for tag in ("SquareSquare", "HexHex", "HexH1"):
        case = LatticeCase(tag, 2)
        for _ in range(5):
            f = random_trig_poly(case, rng)
            g = random_trig_poly(case, rng)
            cd = continuous_inner_oracle(case, f, g)
            dd = discrete_inner(case, f, g)
            assert abs(cd - dd) < 1e-10, tag


def test_oracle_against_dense_riemann_sum():
    # non-lattice frequency pair on the unit square domain
    case = LatticeCase("SquareSquare", 1)
    oracle = DomainOracle(case)
    val = oracle.exp_mean((3, -2))
    m = 1200
    u = (np.arange(m) + 0.5) / m - 0.5
    X, Y = np.meshgrid(u, u, indexing="ij")
    riemann = np.exp(2j * np.pi * (3 * X - 2 * Y)).mean()
    assert abs(val - riemann) < 1e-6


def test_trigpoly_evaluation_matches_node_sampling():
    rng = np.random.default_rng(2)
    case = LatticeCase("HexHex", 3)
    f = random_trig_poly(case, rng)
    s = build_index_set(case, "open")
    pts = node_points_float(case, s)
    direct = f(pts)
    inner_with_one = [
        discrete_inner(case, f, TrigPoly(case, {k: 1.0})) for k in f.coeffs
    ]
    # coefficient recovery: <f, phi_k>_N = c_k
    assert np.abs(np.array(inner_with_one) - f.coeff_array()).max() < 1e-12
    assert direct.shape == (len(s),)
