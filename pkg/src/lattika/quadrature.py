"""High-order Gauss-Legendre integration over convex polygons.

This is the independent oracle the cubature and orthogonality tests are
verified against: fan-triangulate the polygon, put a collapsed tensor
Gauss-Legendre rule on each triangle, pick the order from the integrand's
oscillation, and confirm stability under an order increase before
trusting a value.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


class OracleAccuracy(RuntimeError):
    """Raised when refinement fails to stabilize an oracle integral."""


@lru_cache(maxsize=None)
def gauss_legendre(m: int):
    x, w = np.polynomial.legendre.leggauss(m)
    return x, w


@lru_cache(maxsize=None)
def _unit_square(m: int):
    x, w = gauss_legendre(m)
    u = (x + 1.0) / 2.0
    wu = w / 2.0
    U, V = np.meshgrid(u, u, indexing="ij")
    W = np.outer(wu, wu)
    return U.ravel(), V.ravel(), W.ravel()


def triangle_rule(tri, m: int):
    """Tensor rule collapsed onto a triangle (Duffy map from the square)."""
    u, v, w = _unit_square(m)
    v0, v1, v2 = (np.asarray(p, dtype=float) for p in tri)
    # x = v0 + u (v1 - v0) + u v (v2 - v1); |J| = u * |2 area|
    pts = v0 + np.outer(u, v1 - v0) + np.outer(u * v, v2 - v1)
    e1, e2 = v1 - v0, v2 - v1
    area2 = abs(e1[0] * e2[1] - e1[1] * e2[0])
    return pts, w * u * area2


def polygon_rule(vertices, m: int):
    """Fan triangulation of a convex polygon with an m x m rule per triangle."""
    verts = np.asarray(vertices, dtype=float)
    centroid = verts.mean(axis=0)
    pts, wts = [], []
    for i in range(len(verts)):
        tri = (centroid, verts[i], verts[(i + 1) % len(verts)])
        p, w = triangle_rule(tri, m)
        pts.append(p)
        wts.append(w)
    return np.concatenate(pts), np.concatenate(wts)


def polygon_diameter(vertices) -> float:
    verts = np.asarray(vertices, dtype=float)
    d = verts[:, None, :] - verts[None, :, :]
    return float(np.sqrt((d**2).sum(-1)).max())


def _order_for(cycles: float) -> int:
    return 12 + int(math.ceil(2.2 * cycles))


def integrate_exponentials(vertices, waves, tol: float = 5e-13):
    """Integrals of e^{i w.x} over the polygon, one per row of ``waves``.

    The order follows the largest |w|; a higher-order pass must agree to
    ``tol`` times the polygon area or OracleAccuracy is raised.
    """
    waves = np.atleast_2d(np.asarray(waves, dtype=float))
    diam = polygon_diameter(vertices)
    cycles = float(np.sqrt((waves**2).sum(-1)).max()) * diam / (2.0 * math.pi)
    m = _order_for(cycles)

    def run(order):
        pts, w = polygon_rule(vertices, order)
        out = np.empty(len(waves), dtype=complex)
        chunk = max(1, 4_000_000 // max(len(w), 1))
        for i in range(0, len(waves), chunk):
            phases = pts @ waves[i : i + chunk].T
            out[i : i + chunk] = (w[:, None] * np.exp(1j * phases)).sum(axis=0)
        return out

    area = abs(_polygon_area(vertices))
    coarse = run(m)
    for _ in range(3):
        m2 = int(math.ceil(1.4 * m)) + 4
        fine = run(m2)
        if np.abs(fine - coarse).max() <= tol * area:
            return fine
        coarse, m = fine, m2
    raise OracleAccuracy("exponential integrals failed to stabilize")


def integrate_function(vertices, fn, cycles: float = 8.0, tol: float = 5e-13):
    """Integral of a smooth (possibly complex) integrand over a polygon.

    ``fn`` maps an (m, 2) point array to m values; ``cycles`` bounds how
    many oscillations the integrand makes across the domain.
    """
    m = _order_for(cycles * polygon_diameter(vertices))

    def run(order):
        pts, w = polygon_rule(vertices, order)
        return complex(np.sum(w * np.asarray(fn(pts))))

    area = abs(_polygon_area(vertices))
    coarse = run(m)
    for _ in range(3):
        m2 = int(math.ceil(1.4 * m)) + 4
        fine = run(m2)
        if abs(fine - coarse) <= tol * max(area, 1.0):
            return fine
        coarse, m = fine, m2
    raise OracleAccuracy("oracle integral failed to stabilize")


def _polygon_area(vertices) -> float:
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
