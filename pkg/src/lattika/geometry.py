"""Exact convex-polygon construction by half-plane clipping.

Used to build fundamental-domain outlines (squares, rhombi, hexagons,
Voronoi cells of the integer hexagonal lattices) with vertices in
Q(sqrt(3)), so that oracle integration and SVG output start from exact
corner coordinates.
"""

from __future__ import annotations

from .field import Mat2, Q0, QSqrt3


class HalfPlane:
    """The set a*x + b*y <= c with exact coefficients."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        self.a = QSqrt3.coerce(a)
        self.b = QSqrt3.coerce(b)
        self.c = QSqrt3.coerce(c)

    def value(self, pt):
        return self.a * pt[0] + self.b * pt[1] - self.c

    def __repr__(self):
        return f"HalfPlane({self.a!r}, {self.b!r}, {self.c!r})"


def _edge_intersection(p, q, hp: HalfPlane):
    """Intersection of segment p-q with the boundary line of hp."""
    vp = hp.value(p)
    vq = hp.value(q)
    denom = vp - vq
    if not denom:
        raise ZeroDivisionError("segment parallel to clipping line")
    t = vp / denom
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def clip_polygon(poly, hp: HalfPlane):
    """Sutherland-Hodgman clip of a convex polygon against one half-plane."""
    out = []
    m = len(poly)
    for i in range(m):
        p, q = poly[i], poly[(i + 1) % m]
        pin = hp.value(p).sign() <= 0
        qin = hp.value(q).sign() <= 0
        if pin:
            out.append(p)
            if not qin:
                out.append(_edge_intersection(p, q, hp))
        elif qin:
            out.append(_edge_intersection(p, q, hp))
    # drop duplicate vertices produced when a corner lies on the line
    dedup = []
    for v in out:
        if not dedup or v != dedup[-1]:
            dedup.append(v)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def convex_polygon(halfplanes, bound=64):
    """Intersect half-planes, starting from a large bounding square."""
    b = QSqrt3.coerce(bound)
    poly = [(b, b), (-b, b), (-b, -b), (b, -b)]
    for hp in halfplanes:
        poly = clip_polygon(poly, hp)
        if len(poly) < 3:
            raise ValueError("half-planes have empty interior")
    return poly


def polygon_area(poly):
    """Signed area (exact) of a polygon with QSqrt3 vertices."""
    s = Q0
    m = len(poly)
    for i in range(m):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % m]
        s = s + (x1 * y2 - x2 * y1)
    return s / 2


def polygon_floats(poly):
    return [(float(x), float(y)) for x, y in poly]


def voronoi_cell(A: Mat2, window=2):
    """Voronoi cell of the lattice A*Z^2 about the origin, as an exact polygon.

    All lattice vectors v = A*u with u in [-window, window]^2 \\ {0} are used
    as cut vectors 2 x.v <= v.v; for the small lattices handled here that
    window is far beyond the covering radius, so the result is the true cell.
    """
    hps = []
    for u1 in range(-window, window + 1):
        for u2 in range(-window, window + 1):
            if u1 == 0 and u2 == 0:
                continue
            vx, vy = A @ (QSqrt3.coerce(u1), QSqrt3.coerce(u2))
            hps.append(HalfPlane(2 * vx, 2 * vy, vx * vx + vy * vy))
    return convex_polygon(hps)
