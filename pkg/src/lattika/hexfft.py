"""Discrete Fourier transform on the hexagon via rectangular reordering.

Sampling an H-periodic function at the homogeneous points of H j / n for
j in [0, n)^2 enumerates the n^2 hexagon nodes once modulo periodicity,
and the transform coefficients

    fhat_k = (1/n^2) sum_j f(node(j)) e^{-2 pi i (k1 j1 + k2 j2) / n}

coincide with the classical DFT of the reordered samples, relabeled to
the frequency hexagon.  The FFT core here is self-contained: radix-2
splits while the length is even, Bluestein's chirp transform for odd
lengths, so any n works and the naive O(n^4) sum stays an independent
oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .indexsets import k_dagger_set
from .lattice import LatticeCase, reduce_mod_lattice


class IndexOutOfRange(ValueError):
    pass


# -- FFT core -------------------------------------------------------------------


def _fft_last_axis(a: np.ndarray) -> np.ndarray:
    """Unnormalized DFT along the last axis, e^{-2 pi i j k / N} convention."""
    n = a.shape[-1]
    if n == 1:
        return a.astype(complex, copy=True)
    if n % 2 == 0:
        even = _fft_last_axis(a[..., 0::2])
        odd = _fft_last_axis(a[..., 1::2])
        tw = np.exp(-2j * np.pi * np.arange(n // 2) / n)
        return np.concatenate([even + tw * odd, even - tw * odd], axis=-1)
    return _bluestein(a)


def _bluestein(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    j = np.arange(n)
    # chirp e^{-i pi j^2 / n}; reduce j^2 mod 2n to keep the phase accurate
    chirp = np.exp(-1j * np.pi * ((j * j) % (2 * n)) / n)
    m = 1 << (2 * n - 1).bit_length()
    fa = np.zeros(a.shape[:-1] + (m,), dtype=complex)
    fa[..., :n] = a * chirp
    fb = np.zeros(m, dtype=complex)
    fb[:n] = np.conj(chirp)
    fb[m - n + 1 :] = np.conj(chirp[1:])[::-1]
    conv = _ifft_pow2(_fft_last_axis(fa) * _fft_last_axis(fb))
    return chirp * conv[..., :n]


def _ifft_pow2(a: np.ndarray) -> np.ndarray:
    return np.conj(_fft_last_axis(np.conj(a))) / a.shape[-1]


def fft2(a: np.ndarray) -> np.ndarray:
    """Unnormalized 2-D DFT (own core; numpy is used only for array math)."""
    step = _fft_last_axis(np.asarray(a, dtype=complex))
    return np.swapaxes(_fft_last_axis(np.swapaxes(step, -1, -2)), -1, -2)


def ifft2(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    return np.conj(fft2(np.conj(a))) / (a.shape[-1] * a.shape[-2])


# -- reordering ------------------------------------------------------------------


def node_map(n: int, j1, j2):
    """Homogeneous coordinates of H j / n (before reduction into Omega)."""
    return (
        Fraction(2 * j1 - j2, n),
        Fraction(2 * j2 - j1, n),
        Fraction(-j1 - j2, n),
    )


def reorder_index(n: int, j) -> tuple:
    """Node of the rectangular index j in [0, n)^2, reduced into the hexagon."""
    j1, j2 = j
    if not (0 <= j1 < n and 0 <= j2 < n):
        raise IndexOutOfRange(f"rectangular index {j} outside [0, {n})^2")
    t = node_map(n, j1, j2)
    red = reduce_mod_lattice(LatticeCase("HexHex", 1), t)
    return tuple(v.as_fraction() for v in red)


@lru_cache(maxsize=None)
def frequency_order(n: int):
    """K_n-dagger frequencies sorted by their rectangular label (k mod n)."""
    freqs = k_dagger_set(n)
    labeled = [((k[0] % n, k[1] % n), k) for k in freqs]
    labels = [lab for lab, _ in labeled]
    if len(set(labels)) != len(labels):
        raise RuntimeError("frequency relabeling is not a bijection")
    labeled.sort()
    return tuple(k for _, k in labeled)


# -- transform objects -------------------------------------------------------------


@dataclass
class HexSampleGrid:
    """Samples on the hexagonal nodes, stored on the rectangular [0,n)^2 grid."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape == (self.n * self.n,):
            v = v.reshape(self.n, self.n)
        if v.shape != (self.n, self.n):
            raise ValueError(f"values must have shape ({self.n}, {self.n})")
        self.values = v

    def nodes(self) -> np.ndarray:
        """Homogeneous node coordinates (n^2, 3), row-major in (j1, j2)."""
        j1, j2 = np.meshgrid(np.arange(self.n), np.arange(self.n), indexing="ij")
        t = np.stack([2 * j1 - j2, 2 * j2 - j1, -j1 - j2], axis=-1) / self.n
        return t.reshape(-1, 3)


@dataclass
class HexSpectrum:
    """Coefficients over the frequency hexagon, in frequency_order(n)."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if c.shape != (self.n * self.n,):
            raise ValueError(f"need {self.n * self.n} coefficients")
        self.coeffs = c

    def frequencies(self):
        return frequency_order(self.n)

    def as_dict(self):
        return dict(zip(self.frequencies(), self.coeffs))


def sample(n: int, f) -> HexSampleGrid:
    """Sample a function of homogeneous coordinates on the n^2 nodes."""
    grid = HexSampleGrid(n, np.zeros((n, n)))
    vals = np.asarray(f(grid.nodes()), dtype=complex).reshape(n, n)
    return HexSampleGrid(n, vals)


def forward(grid: HexSampleGrid) -> HexSpectrum:
    """fhat_k = <f, phi_k>_n via a rectangular FFT; O(n^2 log n)."""
    n = grid.n
    dft = fft2(grid.values) / (n * n)
    coeffs = np.array([dft[k[0] % n, k[1] % n] for k in frequency_order(n)])
    return HexSpectrum(n, coeffs)


def inverse(spec: HexSpectrum) -> HexSampleGrid:
    """Samples of sum_k fhat_k phi_k on the node grid (inverse transform)."""
    n = spec.n
    c = np.zeros((n, n), dtype=complex)
    for k, v in zip(frequency_order(n), spec.coeffs):
        c[k[0] % n, k[1] % n] = v
    vals = ifft2(c) * (n * n)
    return HexSampleGrid(n, vals)


def naive_dft(grid: HexSampleGrid) -> HexSpectrum:
    """Direct O(n^4) summation; the correctness reference for forward()."""
    n = grid.n
    if n > 64:
        raise ValueError("the naive oracle is limited to n <= 64")
    j1, j2 = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    J = np.stack([j1.ravel(), j2.ravel()], axis=-1)
    flat = grid.values.ravel()
    out = np.empty(n * n, dtype=complex)
    freqs = frequency_order(n)
    K = np.array([(k[0], k[1]) for k in freqs], dtype=np.int64)
    for i in range(0, len(K), 256):
        block = K[i : i + 256]
        phases = (block @ J.T) % n
        out[i : i + 256] = np.exp(-2j * np.pi * phases / n) @ flat / (n * n)
    return HexSpectrum(n, out)


def parseval_gap(grid: HexSampleGrid) -> float:
    """| (1/n^2) sum |f|^2 - sum |fhat|^2 | (unitarity of the transform)."""
    spec = forward(grid)
    lhs = float(np.sum(np.abs(grid.values) ** 2)) / (grid.n**2)
    rhs = float(np.sum(np.abs(spec.coeffs) ** 2))
    return abs(lhs - rhs)
