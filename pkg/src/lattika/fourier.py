"""Exponential bases, discrete inner products, and the continuous oracle.

The discrete inner product of Theorem-2.2 type is evaluated through exact
integer phases: at a node B^-tr j and frequency k the exponent is
2 pi i (k^tr N^-1 j), and N^-1 j is rational with denominator det N, so
every sample of phi is a root of unity computed from integers.  The
continuous side integrates over the fundamental domain with the
Gauss-Legendre polygon oracle and caches one integral per frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .geometry import polygon_floats
from .indexsets import IndexSet, build_index_set, node_points_float, stage2_weights
from .lattice import LatticeCase, domain_polygon, generator_matrices

TWO_PI = 2.0 * math.pi

# the hexagon Omega in the (t1, t2) parameter plane has integer corners
HEX_T_POLYGON = np.array(
    [[1.0, 0.0], [0.0, 1.0], [-1.0, 1.0], [-1.0, 0.0], [0.0, -1.0], [1.0, -1.0]]
)
DELTA_T_POLYGON = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


def _freq_cart(case: LatticeCase, k) -> tuple:
    """Underlying Z^2 label of a frequency given in the case's convention."""
    if len(k) == 3:
        if sum(k) != 0:
            raise ValueError("homogeneous frequency must sum to zero")
        return (k[0], k[1])
    return tuple(k)


def wave_vector(case: LatticeCase, k) -> np.ndarray:
    """Cartesian wave vector w with phi_k(x) = e^{i w.x}."""
    A, _, _ = generator_matrices(case)
    At = np.array(A.inv_transpose().to_float())
    return TWO_PI * (At @ np.asarray(_freq_cart(case, k), dtype=float))


def phi(case: LatticeCase, k, p):
    """The exponential phi_k at p (hexagonal cases accept homogeneous p)."""
    p = np.asarray(p, dtype=float)
    if case.is_hex and p.shape[-1] == 3:
        if len(k) != 3:
            k = (k[0], k[1], -k[0] - k[1])
        return np.exp((2j * math.pi / 3.0) * (p @ np.asarray(k, dtype=float)))
    w = wave_vector(case, k)
    return np.exp(1j * (p @ w))


@dataclass
class TrigPoly:
    """A finite exponential sum sum_k c_k phi_k in a case's convention."""

    case: LatticeCase
    coeffs: dict

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[:-1], dtype=complex)
        for k, c in self.coeffs.items():
            out = out + c * phi(self.case, k, pts)
        return out

    def conjugate(self) -> "TrigPoly":
        return TrigPoly(
            self.case,
            {tuple(-x for x in k): np.conj(c) for k, c in self.coeffs.items()},
        )

    def freq_array(self):
        return np.array([_freq_cart(self.case, k) for k in self.coeffs], dtype=np.int64)

    def coeff_array(self):
        return np.array(list(self.coeffs.values()), dtype=complex)


def random_trig_poly(case: LatticeCase, rng, variant: str = "dagger_open") -> TrigPoly:
    """Random member of H_N (unit-scale complex Gaussian coefficients)."""
    freqs = build_index_set(case, variant).coords()
    vals = rng.standard_normal(len(freqs)) + 1j * rng.standard_normal(len(freqs))
    return TrigPoly(case, dict(zip(freqs, vals)))


# -- exact node phases ---------------------------------------------------------


def _adjugate_det(case: LatticeCase):
    _, _, N = generator_matrices(case)
    a, b, c, d = N.as_int_tuple()
    det = a * d - b * c
    adj = np.array([[d, -b], [-c, a]], dtype=np.int64)
    return adj, det


def phi_node_matrix(case: LatticeCase, freqs, nodes_cart):
    """Matrix phi_k(B^-tr j) over frequency rows and node columns, exact phases."""
    adj, det = _adjugate_det(case)
    K = np.asarray(freqs, dtype=np.int64)
    J = np.asarray(nodes_cart, dtype=np.int64)
    m = (K @ adj @ J.T) % det
    return np.exp((2j * math.pi / det) * m)


def node_set(case: LatticeCase, variant: str = "open") -> IndexSet:
    if variant == "starred":
        variant = "closed"
    return build_index_set(case, variant)


def _node_weights(case: LatticeCase, variant: str):
    s = node_set(case, variant)
    if variant in ("open", "dagger_open"):
        return s, np.ones(len(s))
    _, w = stage2_weights(s)
    return s, np.array([float(x) for x in w])


def discrete_inner(case: LatticeCase, f, g, variant: str = "open") -> complex:
    """<f, g>_N = (1/det N) sum_j w_j f(x_j) conj(g(x_j)).

    ``variant='open'`` sums over Lambda_N; ``'starred'`` uses the closed set
    with the 1, 1/2, 1/4-or-1/3 boundary weights.  f and g may be TrigPoly
    (sampled through exact phases) or any callables on node coordinates.
    """
    s, w = _node_weights(case, variant)
    det = abs(np.prod([])) if False else None
    _, detn = _adjugate_det(case)
    carts = s.carts()

    def samples(h):
        if isinstance(h, TrigPoly):
            ph = phi_node_matrix(case, h.freq_array(), carts)
            return h.coeff_array() @ ph
        pts = node_points_float(case, s)
        return np.asarray(h(pts), dtype=complex)

    fv, gv = samples(f), samples(g)
    return complex(np.sum(w * fv * np.conj(gv)) / detn)


@dataclass
class InnerProductReport:
    gram: np.ndarray
    max_offdiag: float
    max_diag_deviation: float


def discrete_gram(case: LatticeCase, variant: str = "open") -> InnerProductReport:
    """Gram matrix of {phi_k : k in Lambda_N-dagger} under the discrete product."""
    freqs = build_index_set(case, "dagger_open").coords()
    K = np.array([_freq_cart(case, k) for k in freqs], dtype=np.int64)
    s, w = _node_weights(case, variant)
    _, detn = _adjugate_det(case)
    ph = phi_node_matrix(case, K, s.carts())
    gram = (ph * w[None, :]) @ np.conj(ph.T) / detn
    return _report(gram)


def _report(gram: np.ndarray) -> InnerProductReport:
    off = gram - np.diag(np.diag(gram))
    return InnerProductReport(
        gram=gram,
        max_offdiag=float(np.abs(off).max()) if gram.size > 1 else 0.0,
        max_diag_deviation=float(np.abs(np.diag(gram) - 1.0).max()),
    )


# -- continuous oracle ---------------------------------------------------------


class DomainOracle:
    """Normalized integrals over Omega_A, one cached value per frequency.

    For hexagonal cases the integration runs in the (t1, t2) plane, where
    the hexagon has integer corners and phi_k is the plane wave with
    w = (2 pi / 3) (k1 - k3, k2 - k3).
    """

    def __init__(self, case: LatticeCase):
        self.case = case
        if case.is_hex:
            self.polygon = HEX_T_POLYGON
        else:
            self.polygon = np.array(polygon_floats(domain_polygon(case)))
        self.area = abs(quadrature._polygon_area(self.polygon))
        self._cache = {}

    def _wave(self, k) -> np.ndarray:
        if self.case.is_hex:
            k3 = k[2] if len(k) == 3 else -k[0] - k[1]
            return (TWO_PI / 3.0) * np.array([k[0] - k3, k[1] - k3], dtype=float)
        return wave_vector(self.case, k)

    def prefill(self, freqs):
        missing = [tuple(k) for k in freqs if tuple(k) not in self._cache]
        if not missing:
            return
        waves = np.array([self._wave(k) for k in missing])
        vals = quadrature.integrate_exponentials(self.polygon, waves) / self.area
        self._cache.update(dict(zip(missing, vals)))

    def exp_mean(self, k) -> complex:
        k = tuple(k)
        if k not in self._cache:
            self.prefill([k])
        return self._cache[k]

    def inner(self, f: TrigPoly, g: TrigPoly) -> complex:
        """<f, g>_Omega = (1/mes Omega) int f conj(g)."""
        diffs = set()
        for kf in f.coeffs:
            for kg in g.coeffs:
                diffs.add(tuple(a - b for a, b in zip(kf, kg)))
        self.prefill(diffs)
        total = 0.0 + 0.0j
        for kf, cf in f.coeffs.items():
            for kg, cg in g.coeffs.items():
                d = tuple(a - b for a, b in zip(kf, kg))
                total += cf * np.conj(cg) * self._cache[d]
        return complex(total)


_oracles: dict = {}


def continuous_inner_oracle(case: LatticeCase, f: TrigPoly, g: TrigPoly) -> complex:
    key = (case.tag, case.n)
    if key not in _oracles:
        _oracles[key] = DomainOracle(case)
    return _oracles[key].inner(f, g)


def continuous_gram(case: LatticeCase) -> InnerProductReport:
    freqs = build_index_set(case, "dagger_open").coords()
    oracle = DomainOracle(case)
    diffs = {tuple(a - b for a, b in zip(kf, kg)) for kf in freqs for kg in freqs}
    oracle.prefill(diffs)
    m = len(freqs)
    gram = np.empty((m, m), dtype=complex)
    for i, kf in enumerate(freqs):
        for j, kg in enumerate(freqs):
            gram[i, j] = oracle.exp_mean(tuple(a - b for a, b in zip(kf, kg)))
    return _report(gram)
