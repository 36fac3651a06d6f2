"""Interpolation operators on the hexagon and the triangle.

The generic operator reproduces samples on B^-tr Lambda_N exactly.  On the
transpose-hexagon pair, the symmetric node family K_n* only admits a
*near* interpolant: its kernel Phi_n takes the value 1 on each node
congruent to the base node mod 3n (homogeneous congruence) and 0 on every
other node, so interior nodes interpolate while boundary values come out
as the sum over the congruent copies S_j.

Phi_n has a compact trigonometric form when 3 | n; both the compact and
the plain-sum evaluations are provided and tested against each other.
Folding Phi_n with the group projections yields the triangle interpolants
(sine flavor on interior nodes, cosine flavor on all of Upsilon_n), whose
kernels are implemented from their weight displays:

  l*_j(t)  = (lambda_j / n^2) sum_k lhat_k TC_k(t) conj(TC_k(j/n))
  l o_j(t) = (6 / n^2)        sum_k lhat_k TS_k(t) conj(TS_k(j/n))

with lhat_k = 6 interior of the quadrilateral, 3 on its edges, 2 at
(n/3, n/3, -2n/3), 3/2 at (n/2, 0, -n/2) and (0, n/2, -n/2), 1 at 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fourier import phi_node_matrix
from .indexsets import (
    build_index_set,
    classify_against,
    delta_forms,
    hat_map,
    hom_congruent,
    k_dagger_set,
    k_set,
    upsilon,
    upsilon_dagger,
)
from .lattice import LatticeCase, generator_matrices
from .triangle import tc_matrix, ts_matrix

PI = math.pi


class SampleCountMismatch(ValueError):
    pass


class NotMultipleOf3(ValueError):
    pass


# -- generic interpolation (any lattice pair) -----------------------------------


def interp_generic(case: LatticeCase, samples):
    """Coefficients of the unique member of H_N matching samples on Lambda_N.

    ``samples`` follows the node order of build_index_set(case, 'open')
    (sorted by the underlying Z^2 index).  Returns a TrigPoly.
    """
    from .fourier import TrigPoly

    nodes = build_index_set(case, "open")
    samples = np.asarray(samples, dtype=complex)
    if samples.shape != (len(nodes),):
        raise SampleCountMismatch(f"expected {len(nodes)} samples, got {samples.shape}")
    freqs = build_index_set(case, "dagger_open")
    K = np.array([m.cart for m in freqs], dtype=np.int64)
    J = np.array([m.cart for m in nodes], dtype=np.int64)
    _, _, N = generator_matrices(case)
    a, b, c, d = N.as_int_tuple()
    det = abs(a * d - b * c)
    coeffs = np.conj(phi_node_matrix(case, K, J)) @ samples / det
    return TrigPoly(case, dict(zip(freqs.coords(), coeffs)))


def nodal_residual(case: LatticeCase, samples) -> float:
    """Max |I_N f - f| over the nodes (the Thm-2.3 delta property)."""
    from .indexsets import node_points_float

    p = interp_generic(case, samples)
    nodes = build_index_set(case, "open")
    vals = p(node_points_float(case, nodes))
    return float(np.abs(vals - np.asarray(samples)).max())


# -- the kernel Phi_n -------------------------------------------------------------


def _c_hat_weights(n: int):
    """Weights c_{hat k} over K_n-dagger*: class of hat(k) in the K_n* hexagon."""
    freqs = k_dagger_set(n, closed=True)
    hexagon_forms = [((1, 0, 0), -n, n), ((0, 1, 0), -n, n), ((0, 0, -1), -n, n)]
    hats = [hat_map(k) for k in freqs]
    classes = classify_against(hats, hexagon_forms)
    table = {"interior": 1.0, "edge": 0.5, "vertex": 1.0 / 3.0}
    return np.array(freqs, dtype=np.int64), np.array([table[c] for c in classes])


def phi_n_direct(t, n: int):
    """Phi_n(t) by plain summation over K_n-dagger* (any n)."""
    K, c = _c_hat_weights(n)
    t = np.asarray(t, dtype=float)
    phases = np.tensordot(t, K.T, axes=([-1], [0]))  # t . k
    return np.exp((2j * PI / 3.0) * phases) @ c / (n * n)


_DIR1 = np.array([1.0, 2.0, -3.0])
_DIR2 = np.array([-3.0, 1.0, 2.0])


def _phi_compact_raw(t, n: int):
    t = np.asarray(t, dtype=float)
    s = (np.roll(t, 1, axis=-1) - np.roll(t, 2, axis=-1)) / 3.0  # s_i = (t_{i+2}-t_{i+1})/3
    sint = np.sin(PI * t)
    cosn = np.cos((2.0 * PI * n / 3.0) * t)
    num = (cosn * sint * (np.cos(PI * t) + 2.0 * np.cos(PI * s))).sum(axis=-1)
    prod = np.prod(sint, axis=-1)
    return (-num / (2.0 * prod) - cosn.sum(axis=-1) / 3.0) / (n * n)


def phi_n_compact(t, n: int, wall_tol: float = 1e-8):
    """The closed trigonometric form of Phi_n, for n a multiple of 3.

    Points within ``wall_tol`` of a zero of sin(pi t_i) are evaluated by
    averaging the formula at four nearby points, which removes the
    removable singularity to about 1e-9.
    """
    if n % 3 != 0:
        raise NotMultipleOf3("the compact kernel formula requires 3 | n")
    t = np.asarray(t, dtype=float)
    vals = np.empty(t.shape[:-1], dtype=float)
    sing = (np.abs(np.sin(PI * t)) < wall_tol).any(axis=-1)
    if np.any(~sing):
        vals[~sing] = _phi_compact_raw(t[~sing], n)
    if np.any(sing):
        ts = t[sing]
        eps = 1e-5
        acc = np.zeros(ts.shape[:-1])
        for d in (_DIR1, -_DIR1, _DIR2, -_DIR2):
            acc += _phi_compact_raw(ts + eps * d, n)
        vals[sing] = acc / 4.0
    return vals if vals.shape else float(vals)


def phi_n_kernel(t, n: int, method: str = "auto"):
    """Phi_n(t); ``method`` picks 'compact', 'direct_sum', or 'auto'."""
    if method == "direct_sum":
        return phi_n_direct(t, n)
    if method == "compact":
        return phi_n_compact(t, n)
    if method == "auto":
        return phi_n_compact(t, n) if n % 3 == 0 else phi_n_direct(t, n).real
    raise ValueError(f"unknown method {method!r}")


def dirichlet_theta(t, n: int):
    """The Dirichlet kernel over K_n-dagger*: plain exponential sum."""
    K = np.array(k_dagger_set(n, closed=True), dtype=np.int64)
    t = np.asarray(t, dtype=float)
    phases = np.tensordot(t, K.T, axes=([-1], [0]))
    return np.exp((2j * PI / 3.0) * phases).sum(axis=-1)


# -- the near interpolant on K_n* ---------------------------------------------------


@dataclass
class HexNearInterpolant:
    """I_n*: reproduces interior node samples, aliases boundary ones over S_j."""

    n: int

    def __post_init__(self):
        self.nodes = k_set(self.n, closed=True)
        self.interior = k_set(self.n, closed=False)

    def alias_set(self, j):
        """S_j: closed-family nodes congruent to j mod 3n."""
        return [k for k in self.nodes if hom_congruent(k, j, 3 * self.n)]

    def kernel_matrix(self) -> np.ndarray:
        """Phi_n((l - j)/n) over node rows l and node columns j, exact phases."""
        K, c = _c_hat_weights(self.n)
        L = np.array(self.nodes, dtype=np.int64)
        n = self.n
        phases = np.einsum("fi,lji->flj", K, L[:, None, :] - L[None, :, :])
        return np.tensordot(c, np.exp((2j * PI / (3 * n)) * (phases % (3 * n))), axes=1) / (n * n)

    def __call__(self, samples, t):
        samples = np.asarray(samples, dtype=complex)
        if samples.shape != (len(self.nodes),):
            raise SampleCountMismatch(f"need {len(self.nodes)} samples on K_n*")
        t = np.asarray(t, dtype=float)
        nodes = np.array(self.nodes, dtype=float) / self.n
        out = np.zeros(t.shape[:-1], dtype=complex)
        for f, j in zip(samples, nodes):
            out = out + f * phi_n_direct(t - j, self.n)
        return out


# -- triangle interpolation ----------------------------------------------------------


def lambda_hat(k, n: int) -> Fraction:
    """Quadrilateral weights of the triangle kernels (Upsilon-dagger classes)."""
    k1, k2 = k[0], k[1]
    if k1 == k2 == 0:
        return Fraction(1)
    if 3 * k1 == n and 3 * k2 == n:
        return Fraction(2)
    if (2 * k1 == n and k2 == 0) or (k1 == 0 and 2 * k2 == n):
        return Fraction(3, 2)
    if k1 > 0 and k2 > 0 and 2 * k1 + k2 < n and k1 + 2 * k2 < n:
        return Fraction(6)
    return Fraction(3)


def _lambda_nodes(labels, n: int):
    classes = classify_against(labels, delta_forms(n))
    table = {"interior": 6.0, "edge": 3.0, "vertex": 1.0}
    return np.array([table[c] for c in classes])


@dataclass
class TriangleInterpolant:
    """A member of TC_n or TS_n determined by its node samples."""

    flavor: str
    n: int
    freqs: tuple
    coeffs: np.ndarray

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        basis = tc_matrix(self.freqs, t) if self.flavor == "cosine" else ts_matrix(self.freqs, t)
        return np.tensordot(self.coeffs, basis, axes=1)


def interp_triangle(flavor: str, n: int, samples) -> TriangleInterpolant:
    """Triangle interpolant from samples on Upsilon_n (cosine) or its interior (sine)."""
    samples = np.asarray(samples, dtype=complex)
    if flavor == "cosine":
        nodes = upsilon(n)
        freqs = upsilon_dagger(n)
        if samples.shape != (len(nodes),):
            raise SampleCountMismatch(f"need {len(nodes)} samples on Upsilon_n")
        lam = _lambda_nodes(nodes, n)
        basis_at_nodes = tc_matrix(freqs, np.array(nodes, dtype=float) / n)
        lhat = np.array([float(lambda_hat(k, n)) for k in freqs])
        coeffs = lhat * (np.conj(basis_at_nodes) @ (lam * samples)) / (n * n)
    elif flavor == "sine":
        nodes = upsilon(n, interior=True)
        freqs = upsilon_dagger(n, sine=True)
        if samples.shape != (len(nodes),):
            raise SampleCountMismatch(f"need {len(nodes)} samples on the interior of Upsilon_n")
        basis_at_nodes = ts_matrix(freqs, np.array(nodes, dtype=float) / n)
        lhat = np.array([float(lambda_hat(k, n)) for k in freqs])
        coeffs = 6.0 * lhat * (np.conj(basis_at_nodes) @ samples) / (n * n)
    else:
        raise ValueError("flavor must be 'cosine' or 'sine'")
    return TriangleInterpolant(flavor=flavor, n=n, freqs=tuple(freqs), coeffs=coeffs)


# -- Lebesgue constants ----------------------------------------------------------------


def _hex_grid(density: int) -> np.ndarray:
    u = np.arange(-density, density + 1) / density
    T1, T2 = np.meshgrid(u, u, indexing="ij")
    keep = (np.abs(T1 + T2) <= 1.0) & (np.abs(T1) <= 1.0) & (np.abs(T2) <= 1.0)
    t1, t2 = T1[keep], T2[keep]
    return np.stack([t1, t2, -t1 - t2], axis=-1)


def _delta_grid_points(density: int) -> np.ndarray:
    u = np.arange(density + 1) / density
    T1, T2 = np.meshgrid(u, u, indexing="ij")
    keep = T1 + T2 <= 1.0
    t1, t2 = T1[keep], T2[keep]
    return np.stack([t1, t2, -t1 - t2], axis=-1)


@dataclass
class LebesgueReport:
    n_values: list
    constants: list
    fitted_ratio: float


def lebesgue_estimate(operator: str, n: int, grid_density: int = 128) -> float:
    """Grid estimate of the uniform operator norm.

    ``operator`` is 'hex_near' (I_n*), 'triangle_cosine' (L_n*), or
    'triangle_sine' (L_n); the norm is the max over the grid of the sum of
    kernel magnitudes.
    """
    if operator == "hex_near":
        grid = _hex_grid(grid_density)
        nodes = np.array(k_set(n, closed=True), dtype=float) / n
        total = np.zeros(len(grid))
        kernel = phi_n_compact if n % 3 == 0 else (lambda t, m: phi_n_direct(t, m).real)
        for j in nodes:
            total += np.abs(kernel(grid - j, n))
        return float(total.max())
    if operator == "triangle_cosine":
        grid = _delta_grid_points(grid_density)
        nodes = upsilon(n)
        freqs = upsilon_dagger(n)
        lam = _lambda_nodes(nodes, n)
        lhat = np.array([float(lambda_hat(k, n)) for k in freqs])
        tc_grid = tc_matrix(freqs, grid)
        tc_nodes = tc_matrix(freqs, np.array(nodes, dtype=float) / n)
        kernels = np.einsum("fp,f,fj->jp", tc_grid, lhat, np.conj(tc_nodes)) * (
            lam[:, None] / (n * n)
        )
        return float(np.abs(kernels).sum(axis=0).max())
    if operator == "triangle_sine":
        grid = _delta_grid_points(grid_density)
        nodes = upsilon(n, interior=True)
        freqs = upsilon_dagger(n, sine=True)
        lhat = np.array([float(lambda_hat(k, n)) for k in freqs])
        ts_grid = ts_matrix(freqs, grid)
        ts_nodes = ts_matrix(freqs, np.array(nodes, dtype=float) / n)
        kernels = np.einsum("fp,f,fj->jp", ts_grid, lhat, np.conj(ts_nodes)) * (6.0 / (n * n))
        return float(np.abs(kernels).sum(axis=0).max())
    raise ValueError(f"unknown operator {operator!r}")


def lebesgue_scan(operator: str, n_values, grid_density: int = 64) -> LebesgueReport:
    constants = [lebesgue_estimate(operator, n, grid_density) for n in n_values]
    ratios = [c / math.log(n) ** 2 for c, n in zip(constants, n_values) if n > 1]
    return LebesgueReport(
        n_values=list(n_values), constants=constants, fitted_ratio=max(ratios)
    )
