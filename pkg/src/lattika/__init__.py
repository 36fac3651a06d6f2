"""Discrete Fourier analysis with lattices on planar domains.

Exact index sets and cubature rules for square, rhombic and hexagonal
lattice pairs, trigonometric interpolation on the hexagon and the
equilateral triangle, generalized Chebyshev polynomials on the region
bounded by Steiner's hypocycloid, and a hexagonal FFT.
"""

from .lattice import (
    CASE_TAGS,
    LatticeCase,
    NoReduction,
    NonIntegerN,
    det_n,
    domain_contains,
    generator_matrices,
    hom_to_cartesian,
    reduce_mod_lattice,
    to_homogeneous,
    verify_tiling,
)

__all__ = [
    "CASE_TAGS",
    "LatticeCase",
    "NonIntegerN",
    "NoReduction",
    "det_n",
    "domain_contains",
    "generator_matrices",
    "hom_to_cartesian",
    "reduce_mod_lattice",
    "to_homogeneous",
    "verify_tiling",
]

__version__ = "0.1.0"
