"""Lattice pairs, fundamental domains, and half-open membership.

Each case fixes two generator matrices A (integration lattice) and B
(frequency lattice) with N = B^tr A integral.  Fundamental domains follow
the half-open convention: lower bounds inclusive, upper bounds strict, so
translates partition the plane pointwise.  All boundary decisions are made
in exact Q(sqrt(3)) arithmetic when the point is exact; float points take
the same comparisons in float.

Hexagonal domains are handled in homogeneous coordinates t = E x with
t1 + t2 + t3 = 0; the hexagon |t_i| bounds give the unambiguous form of
the membership test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import Mat2, Q1, QSqrt3, SQRT3, mat2_identity
from .geometry import HalfPlane, convex_polygon, voronoi_cell

CASE_TAGS = (
    "SquareSquare",
    "SquareRhombus",
    "RhombicSquare",
    "RhombicRhombic",
    "HexHex",
    "HexHexTranspose",
    "HexH1",
    "HexH2",
)

HEX_CASES = ("HexHex", "HexHexTranspose")
VORONOI_CASES = ("HexH1", "HexH2")


class NonIntegerN(ValueError):
    """Raised when B^tr A fails to be an integer matrix."""


class NoReduction(RuntimeError):
    """Raised when the translate search for reduce_mod_lattice is exhausted."""


@dataclass(frozen=True)
class LatticeCase:
    tag: str
    n: int

    def __post_init__(self):
        if self.tag not in CASE_TAGS:
            raise ValueError(f"unknown lattice case {self.tag!r}")
        if self.n < 1:
            raise ValueError("scale n must be >= 1")

    @property
    def is_hex(self) -> bool:
        return self.tag in HEX_CASES

    @property
    def is_voronoi(self) -> bool:
        return self.tag in VORONOI_CASES


R_MAT = Mat2(1, 1, -1, 1)
H_MAT = Mat2(SQRT3, 0, -1, 2)
H1_MAT = Mat2(1, 1, -2, 1)
H2_MAT = Mat2(1, 2, -1, 1)

# homogeneous embedding t = E x (3x2), rows of E
E_ROWS = (
    (SQRT3 / 2, QSqrt3(Fraction(-1, 2))),
    (QSqrt3(0), Q1),
    (-(SQRT3 / 2), QSqrt3(Fraction(-1, 2))),
)
E_FLOAT = np.array([[float(a), float(b)] for a, b in E_ROWS])

# generators of the H-lattice in homogeneous coordinates
HOM_GEN_1 = (2, -1, -1)
HOM_GEN_2 = (-1, 2, -1)


def generator_matrices(case: LatticeCase):
    """Return (A, B, N) with N = B^tr A checked to be an integer matrix."""
    n = case.n
    half_n = Fraction(n, 2)
    if case.tag == "SquareSquare":
        A, B = mat2_identity(), mat2_identity() * (2 * n)
    elif case.tag == "SquareRhombus":
        A, B = mat2_identity(), R_MAT * n
    elif case.tag == "RhombicSquare":
        A, B = R_MAT, mat2_identity() * n
    elif case.tag == "RhombicRhombic":
        A, B = R_MAT, R_MAT * half_n
    elif case.tag == "HexHex":
        A, B = H_MAT, H_MAT * half_n
    elif case.tag == "HexHexTranspose":
        A, B = H_MAT, H_MAT.inv_transpose() * n
    elif case.tag == "HexH1":
        A, B = H1_MAT, mat2_identity() * n
    else:  # HexH2
        A, B = H2_MAT, mat2_identity() * n
    N = B.transpose() @ A
    if not N.is_integer():
        raise NonIntegerN(f"B^tr A is not integral for {case}")
    return A, B, N


def det_n(case: LatticeCase) -> int:
    _, _, N = generator_matrices(case)
    a, b, c, d = N.as_int_tuple()
    return abs(a * d - b * c)


# -- homogeneous coordinates -------------------------------------------------


def to_homogeneous(x):
    """Map a Cartesian point to (t1, t2, t3) with zero sum."""
    if _is_exact_pair(x):
        xe = (QSqrt3.coerce(x[0]), QSqrt3.coerce(x[1]))
        return tuple(r[0] * xe[0] + r[1] * xe[1] for r in E_ROWS)
    x = np.asarray(x, dtype=float)
    return E_FLOAT @ x


def hom_to_cartesian(t):
    """Inverse of to_homogeneous on the plane t1+t2+t3 = 0."""
    if _is_exact_triple(t):
        t1 = QSqrt3.coerce(t[0])
        t3 = QSqrt3.coerce(t[2])
        return ((t1 - t3) / SQRT3, QSqrt3.coerce(t[1]))
    t = np.asarray(t, dtype=float)
    return np.stack([(t[..., 0] - t[..., 2]) / math.sqrt(3.0), t[..., 1]], axis=-1)


def _is_exact_scalar(v) -> bool:
    return isinstance(v, (int, Fraction, QSqrt3))

def _is_exact_pair(x) -> bool:
    return len(x) == 2 and all(_is_exact_scalar(v) for v in x)

def _is_exact_triple(t) -> bool:
    return len(t) == 3 and all(_is_exact_scalar(v) for v in t)


# -- membership --------------------------------------------------------------
#
# A domain is stored as a list of (a, b, lo, hi): the slab lo <= a x + b y < hi.
# Voronoi domains instead carry cut vectors with a symbolic perturbation rule.

_PERTURB_DIR = (Q1, SQRT3 - 1)  # generic direction; v . dir != 0 for lattice v


def _slabs_omega_a(case: LatticeCase):
    one = Fraction(1)
    half = Fraction(1, 2)
    if case.tag in ("SquareSquare", "SquareRhombus"):
        return [(1, 0, -half, half), (0, 1, -half, half)]
    if case.tag in ("RhombicSquare", "RhombicRhombic"):
        return [(1, 1, -one, one), (-1, 1, -one, one)]
    raise ValueError(f"no slab form for {case.tag}")


def _slabs_omega_b(case: LatticeCase):
    n = case.n
    half_n = Fraction(n, 2)
    if case.tag == "SquareSquare":
        return [(1, 0, -n, n), (0, 1, -n, n)]
    if case.tag == "SquareRhombus":
        return [(1, 1, -n, n), (-1, 1, -n, n)]
    if case.tag in ("RhombicSquare", "HexH1", "HexH2"):
        return [(1, 0, -half_n, half_n), (0, 1, -half_n, half_n)]
    if case.tag == "RhombicRhombic":
        return [(1, 1, -half_n, half_n), (-1, 1, -half_n, half_n)]
    raise ValueError(f"no slab form for {case.tag}")


def _hom_slab_bound(case: LatticeCase, which: str):
    # hexagons in homogeneous coordinates: -c <= t1, t2, -t3 < c (HexHex family)
    # or -c <= t1-t3, t2-t3, t2-t1 < c (the 90-degree rotated hexagon)
    if case.tag == "HexHex":
        return Fraction(1) if which == "A" else Fraction(case.n, 2)
    if case.tag == "HexHexTranspose":
        return Fraction(1) if which == "A" else Fraction(case.n, 2)
    raise ValueError(case.tag)


def _hom_forms(case: LatticeCase, which: str):
    if which == "A" or case.tag == "HexHex":
        # t1, t2, -t3
        return ((1, 0, 0), (0, 1, 0), (0, 0, -1))
    # rotated hexagon: t1-t3, t2-t3, t2-t1
    return ((1, 0, -1), (0, 1, -1), (-1, 1, 0))


def _contains_slabs(slabs, x, closed: bool) -> bool:
    exact = _is_exact_pair(x)
    for a, b, lo, hi in slabs:
        if exact:
            v = QSqrt3.coerce(a) * QSqrt3.coerce(x[0]) + QSqrt3.coerce(b) * QSqrt3.coerce(x[1])
            lov, hiv = (v - lo).sign(), (v - hi).sign()
            if lov < 0 or (hiv > 0 if closed else hiv >= 0):
                return False
        else:
            v = a * x[0] + b * x[1]
            if v < lo or (v > hi if closed else v >= hi):
                return False
    return True


def _contains_hom_hex(case, which, t, closed: bool) -> bool:
    c = _hom_slab_bound(case, which)
    exact = _is_exact_triple(t)
    for f in _hom_forms(case, which):
        if exact:
            v = sum((QSqrt3.coerce(fi) * QSqrt3.coerce(ti) for fi, ti in zip(f, t)),
                    QSqrt3.coerce(0))
            lov, hiv = (v + c).sign(), (v - c).sign()
        else:
            v = f[0] * t[0] + f[1] * t[1] + f[2] * t[2]
            lov = -1 if v < -c else (0 if v == -c else 1)
            hiv = -1 if v < c else (0 if v == c else 1)
        if lov < 0 or (hiv > 0 if closed else hiv >= 0):
            return False
    return True


def _voronoi_vectors(case: LatticeCase):
    A, _, _ = generator_matrices(case)
    vecs = []
    for u1 in range(-2, 3):
        for u2 in range(-2, 3):
            if (u1, u2) == (0, 0):
                continue
            vecs.append(A @ (QSqrt3.coerce(u1), QSqrt3.coerce(u2)))
    return vecs


def _contains_voronoi(case, x, closed: bool) -> bool:
    # x in cell iff for every lattice vector v: 2 x.v < v.v, ties broken by
    # nudging x along a fixed generic direction (keeps the tiling pointwise).
    exact = _is_exact_pair(x)
    if exact:
        xe = (QSqrt3.coerce(x[0]), QSqrt3.coerce(x[1]))
    for vx, vy in _voronoi_vectors(case):
        if exact:
            s = (vx * vx + vy * vy - 2 * (vx * xe[0] + vy * xe[1])).sign()
        else:
            sv = float(vx) ** 2 + float(vy) ** 2 - 2 * (float(vx) * x[0] + float(vy) * x[1])
            s = -1 if sv < 0 else (0 if sv == 0 else 1)
        if s < 0:
            return False
        if s == 0 and not closed:
            tie = (vx * _PERTURB_DIR[0] + vy * _PERTURB_DIR[1]).sign()
            if tie > 0:
                return False
    return True


def domain_contains(case: LatticeCase, p, closed: bool = False, scale=1) -> bool:
    """Half-open membership of p in the fundamental domain Omega_A.

    p is a Cartesian pair, or a homogeneous triple for the hexagonal cases.
    ``closed`` switches every strict upper bound to inclusive (the closure).
    ``scale`` shrinks the domain about the origin (test hook for tiling).
    """
    p = _rescale(p, scale)
    if len(p) == 3:
        if not case.is_hex:
            raise ValueError("homogeneous points only make sense for hexagonal cases")
        return _contains_hom_hex(case, "A", p, closed)
    if case.is_hex:
        return _contains_hom_hex(case, "A", to_homogeneous(p), closed)
    if case.is_voronoi:
        return _contains_voronoi(case, p, closed)
    return _contains_slabs(_slabs_omega_a(case), p, closed)


def _rescale(p, scale):
    if scale == 1:
        return p
    if all(_is_exact_scalar(v) for v in p):
        s = QSqrt3.coerce(scale).inverse()
        return tuple(QSqrt3.coerce(v) * s for v in p)
    return tuple(v / scale for v in p)


def omega_b_contains(case: LatticeCase, x, closed: bool = False) -> bool:
    """Membership of a Cartesian point in Omega_B (frequency-side domain)."""
    if case.tag in ("HexHex", "HexHexTranspose"):
        return _contains_hom_hex(case, "B", to_homogeneous(x), closed)
    return _contains_slabs(_slabs_omega_b(case), x, closed)


def domain_polygon(case: LatticeCase):
    """Closed outline of Omega_A as an exact polygon in Cartesian x."""
    half = Fraction(1, 2)
    if case.tag in ("SquareSquare", "SquareRhombus"):
        return [( QSqrt3.coerce(half), QSqrt3.coerce(half)),
                (QSqrt3.coerce(-half), QSqrt3.coerce(half)),
                (QSqrt3.coerce(-half), QSqrt3.coerce(-half)),
                (QSqrt3.coerce(half), QSqrt3.coerce(-half))]
    if case.tag in ("RhombicSquare", "RhombicRhombic"):
        return [(QSqrt3.coerce(1), QSqrt3.coerce(0)), (QSqrt3.coerce(0), QSqrt3.coerce(1)),
                (QSqrt3.coerce(-1), QSqrt3.coerce(0)), (QSqrt3.coerce(0), QSqrt3.coerce(-1))]
    if case.is_hex:
        hps = []
        for f in _hom_forms(case, "A"):
            # f . E x within [-1, 1]
            a = sum((QSqrt3.coerce(fi) * r[0] for fi, r in zip(f, E_ROWS)), QSqrt3.coerce(0))
            b = sum((QSqrt3.coerce(fi) * r[1] for fi, r in zip(f, E_ROWS)), QSqrt3.coerce(0))
            hps.append(HalfPlane(a, b, 1))
            hps.append(HalfPlane(-a, -b, 1))
        return convex_polygon(hps)
    return voronoi_cell(generator_matrices(case)[0])


# -- reduction modulo the A-lattice ------------------------------------------


def reduce_mod_lattice(case: LatticeCase, p, radius: int = 4):
    """Translate p by an A-lattice vector into the fundamental domain.

    Idempotent; the returned point differs from p by exactly A k for an
    integer vector k.  Works on Cartesian pairs and (for hexagonal cases)
    homogeneous triples, exact or float.
    """
    if len(p) == 3:
        return _reduce_hom(case, p, radius)
    A, _, _ = generator_matrices(case)
    Af = np.array(A.to_float())
    Ainv = np.linalg.inv(Af)
    xf = np.array([float(v) for v in p])
    base = np.rint(Ainv @ xf).astype(int)
    exact = _is_exact_pair(p)
    for du1, du2 in _spiral(radius):
        u = (int(base[0]) + du1, int(base[1]) + du2)
        if exact:
            sx, sy = A @ (QSqrt3.coerce(u[0]), QSqrt3.coerce(u[1]))
            cand = (QSqrt3.coerce(p[0]) - sx, QSqrt3.coerce(p[1]) - sy)
        else:
            shift = Af @ np.array(u, dtype=float)
            cand = (p[0] - shift[0], p[1] - shift[1])
        if domain_contains(case, cand):
            return cand
    raise NoReduction(f"no reduction of {p} found within radius {radius}")


def _reduce_hom(case: LatticeCase, t, radius: int = 4):
    if not case.is_hex:
        raise ValueError("homogeneous reduction only for hexagonal cases")
    tf = [float(v) for v in t]
    a0 = round((2 * tf[0] + tf[1]) / 3.0)
    b0 = round((tf[0] + 2 * tf[1]) / 3.0)
    exact = _is_exact_triple(t)
    for da, db in _spiral(radius):
        a, b = a0 + da, b0 + db
        shift = tuple(a * g1 + b * g2 for g1, g2 in zip(HOM_GEN_1, HOM_GEN_2))
        if exact:
            cand = tuple(QSqrt3.coerce(ti) - si for ti, si in zip(t, shift))
        else:
            cand = tuple(ti - si for ti, si in zip(tf, shift))
        if domain_contains(case, cand):
            return cand
    raise NoReduction(f"no homogeneous reduction of {t} within radius {radius}")


def _spiral(radius: int):
    for r in range(radius + 1):
        for du1 in range(-r, r + 1):
            for du2 in range(-r, r + 1):
                if max(abs(du1), abs(du2)) == r:
                    yield du1, du2


# -- vectorized float membership ----------------------------------------------


def contains_many(case: LatticeCase, pts, closed: bool = False, scale: float = 1.0):
    """Vectorized domain_contains for an (m, 2) float array of Cartesian points."""
    pts = np.asarray(pts, dtype=float) / scale
    if case.is_hex:
        t = pts @ E_FLOAT.T
        forms = np.array(_hom_forms(case, "A"), dtype=float)
        vals = t @ forms.T
        c = float(_hom_slab_bound(case, "A"))
        upper = vals <= c if closed else vals < c
        return np.all((vals >= -c) & upper, axis=-1)
    if case.is_voronoi:
        vecs = np.array([[float(vx), float(vy)] for vx, vy in _voronoi_vectors(case)])
        s = (vecs**2).sum(axis=1)[None, :] - 2.0 * pts @ vecs.T
        if closed:
            return np.all(s >= 0.0, axis=-1)
        tie_keep = np.array(
            [(vx * _PERTURB_DIR[0] + vy * _PERTURB_DIR[1]).sign() < 0
             for vx, vy in _voronoi_vectors(case)]
        )
        return np.all((s > 0.0) | ((s == 0.0) & tie_keep[None, :]), axis=-1)
    ok = np.ones(pts.shape[0], dtype=bool)
    for a, b, lo, hi in _slabs_omega_a(case):
        v = a * pts[:, 0] + b * pts[:, 1]
        upper = v <= float(hi) if closed else v < float(hi)
        ok &= (v >= float(lo)) & upper
    return ok


# -- tiling verification -------------------------------------------------------


@dataclass
class TilingReport:
    case: LatticeCase
    sample_count: int
    max_cover_deviation: int


def verify_tiling(case: LatticeCase, sample_count: int = 10_000, seed: int = 0,
                  scale: float = 1.0) -> TilingReport:
    """Count, per random point, translates of Omega_A that cover it.

    A correct half-open fundamental domain covers every point exactly once;
    the report carries max |count - 1| over the sample.  ``scale`` shrinks
    the tested domain (deliberately breaking the tiling) for sanity checks.
    """
    A, _, _ = generator_matrices(case)
    Af = np.array(A.to_float())
    Ainv = np.linalg.inv(Af)
    rng = np.random.default_rng(seed)
    ext = 2.0 * max(abs(float(v)) for row in A.to_float() for v in row)
    pts = rng.uniform(-ext, ext, size=(sample_count, 2))
    base = np.rint(pts @ Ainv.T)
    counts = np.zeros(sample_count, dtype=int)
    for du1 in range(-3, 4):
        for du2 in range(-3, 4):
            shift = (base + [du1, du2]) @ Af.T
            counts += contains_many(case, pts - shift, scale=scale)
    worst = int(np.abs(counts - 1).max())
    return TilingReport(case=case, sample_count=sample_count, max_cover_deviation=worst)
