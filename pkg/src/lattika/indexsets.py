"""Frequency and node index sets for each lattice pair.

The open sets come straight from the membership definition
Lambda_N = {k : B^-tr k in Omega_A} and its dagger twin; closed variants
replace every strict upper bound by an inclusive one.  Members carry both
the underlying Z^2 index and the paper-facing label (homogeneous triples
for the hexagonal cases).

Classification (interior / edge / vertex) counts saturated facet
inequalities of the closed domain at the member's node point; the Stage-2
weights 1, 1/2, 1/4 (four-sided domains) and 1, 1/2, 1/3 (hexagons) are
keyed on that class.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .field import QSqrt3
from .lattice import (
    LatticeCase,
    _hom_forms,
    _hom_slab_bound,
    _slabs_omega_a,
    _slabs_omega_b,
    _voronoi_vectors,
    domain_contains,
    domain_polygon,
    generator_matrices,
    omega_b_contains,
    to_homogeneous,
)

VARIANTS = ("open", "closed", "dagger_open", "dagger_closed")


@dataclass(frozen=True)
class IndexPoint:
    """One frequency/node index: Z^2 index plus its display label."""

    coords: tuple
    cart: tuple
    cls: str | None = None


@dataclass(frozen=True)
class IndexSet:
    case: LatticeCase
    variant: str
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def coords(self):
        return [m.coords for m in self.members]

    def carts(self):
        return [m.cart for m in self.members]


def _hom_label(case: LatticeCase, variant: str, k):
    if case.tag == "HexHex":
        return (k[0], k[1], -k[0] - k[1])
    # HexHexTranspose
    if variant.startswith("dagger"):
        return (k[0], k[1], -k[0] - k[1])
    return (2 * k[0] - k[1], 2 * k[1] - k[0], -k[0] - k[1])


def _scan_bound(case: LatticeCase, which: str) -> int:
    A, B, _ = generator_matrices(case)
    M = B.transpose() if which == "A" else A.transpose()
    if which == "A":
        poly = domain_polygon(case)
    else:
        poly = _omega_b_polygon(case)
    worst = 0.0
    for v in poly:
        kx, ky = M @ v
        worst = max(worst, abs(float(kx)), abs(float(ky)))
    return int(np.ceil(worst)) + 2


def _omega_b_polygon(case: LatticeCase):
    from .geometry import HalfPlane, convex_polygon

    if case.tag in ("HexHex", "HexHexTranspose"):
        from .lattice import E_ROWS

        c = _hom_slab_bound(case, "B")
        hps = []
        for f in _hom_forms(case, "B"):
            a = sum((QSqrt3.coerce(fi) * r[0] for fi, r in zip(f, E_ROWS)), QSqrt3.coerce(0))
            b = sum((QSqrt3.coerce(fi) * r[1] for fi, r in zip(f, E_ROWS)), QSqrt3.coerce(0))
            hps.append(HalfPlane(a, b, c))
            hps.append(HalfPlane(-a, -b, c))
        return convex_polygon(hps, bound=4 * case.n)
    hps = []
    for a, b, lo, hi in _slabs_omega_b(case):
        hps.append(HalfPlane(a, b, hi))
        hps.append(HalfPlane(-a, -b, -lo))
    return convex_polygon(hps, bound=8 * case.n)


@lru_cache(maxsize=None)
def _build(tag: str, n: int, variant: str):
    case = LatticeCase(tag, n)
    dagger = variant.startswith("dagger")
    closed = variant.endswith("closed")
    _, B, _ = generator_matrices(case)
    A, _, _ = generator_matrices(case)
    M = (B if not dagger else A).inv_transpose()
    bound = _scan_bound(case, "B" if dagger else "A")
    members = []
    for k1 in range(-bound, bound + 1):
        for k2 in range(-bound, bound + 1):
            pt = M @ (QSqrt3.coerce(k1), QSqrt3.coerce(k2))
            if dagger:
                inside = omega_b_contains(case, pt, closed=closed)
            else:
                inside = domain_contains(case, pt, closed=closed)
            if inside:
                k = (k1, k2)
                label = _hom_label(case, variant, k) if case.is_hex else k
                members.append(IndexPoint(coords=label, cart=k))
    members.sort(key=lambda m: m.cart)
    return IndexSet(case=case, variant=variant, members=tuple(members))


def build_index_set(case: LatticeCase, variant: str = "open") -> IndexSet:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    return _build(case.tag, case.n, variant)


# -- node coordinates ----------------------------------------------------------


def node_point_exact(case: LatticeCase, member: IndexPoint):
    """Exact node coordinate B^-tr k; homogeneous triple for hexagonal cases."""
    if case.is_hex:
        return tuple(Fraction(c, case.n) for c in member.coords)
    _, B, _ = generator_matrices(case)
    x, y = B.inv_transpose() @ (QSqrt3.coerce(member.cart[0]), QSqrt3.coerce(member.cart[1]))
    return (x.as_fraction(), y.as_fraction())


def node_points_float(case: LatticeCase, index_set: IndexSet) -> np.ndarray:
    pts = [node_point_exact(case, m) for m in index_set]
    return np.array([[float(c) for c in p] for p in pts])


# -- classification ------------------------------------------------------------


def _saturation_count(case: LatticeCase, variant: str, member: IndexPoint) -> int:
    dagger = variant.startswith("dagger")
    A, B, _ = generator_matrices(case)
    M = (A if dagger else B).inv_transpose()
    pt = M @ (QSqrt3.coerce(member.cart[0]), QSqrt3.coerce(member.cart[1]))
    count = 0
    if case.is_hex:
        t = to_homogeneous(pt)
        which = "B" if dagger else "A"
        c = _hom_slab_bound(case, which)
        for f in _hom_forms(case, which):
            v = sum((QSqrt3.coerce(fi) * ti for fi, ti in zip(f, t)), QSqrt3.coerce(0))
            if (v - c).sign() == 0 or (v + c).sign() == 0:
                count += 1
        return count
    if case.is_voronoi and not dagger:
        for vx, vy in _voronoi_vectors(case):
            if (vx * vx + vy * vy - 2 * (vx * pt[0] + vy * pt[1])).sign() == 0:
                count += 1
        return count
    slabs = _slabs_omega_b(case) if dagger else _slabs_omega_a(case)
    for a, b, lo, hi in slabs:
        v = QSqrt3.coerce(a) * pt[0] + QSqrt3.coerce(b) * pt[1]
        if (v - lo).sign() == 0 or (v - hi).sign() == 0:
            count += 1
    return count


def class_of_count(count: int) -> str:
    if count == 0:
        return "interior"
    if count == 1:
        return "edge"
    return "vertex"


def classify_nodes(index_set: IndexSet) -> IndexSet:
    """Return a copy with every member tagged interior/edge/vertex."""
    tagged = tuple(
        replace(m, cls=class_of_count(_saturation_count(index_set.case, index_set.variant, m)))
        for m in index_set
    )
    return IndexSet(case=index_set.case, variant=index_set.variant, members=tagged)


def vertex_weight(case: LatticeCase) -> Fraction:
    """Stage-2 weight of a corner node: 1/4 on four-sided domains, 1/3 on hexagons."""
    return Fraction(1, 3) if (case.is_hex or case.is_voronoi) else Fraction(1, 4)


def stage2_weights(index_set: IndexSet):
    """The c-weights (1, 1/2, corner weight) of the symmetric Stage-2 rules."""
    classified = classify_nodes(index_set)
    table = {
        "interior": Fraction(1),
        "edge": Fraction(1, 2),
        "vertex": vertex_weight(index_set.case),
    }
    return classified, [table[m.cls] for m in classified]


# -- congruence modulo the frequency lattice ------------------------------------


def congruence_classes(index_set: IndexSet):
    """Partition members into classes of indices naming the same torus point.

    Node indices j, j' are congruent iff B^-tr (j - j') lies in the A-lattice,
    i.e. j - j' in N^tr Z^2.  Frequency (dagger) indices use N Z^2.
    """
    _, _, N = generator_matrices(index_set.case)
    a, b, c, d = N.as_int_tuple()
    if index_set.variant.startswith("dagger"):
        a, b, c, d = a, c, b, d  # transpose of N^tr is N
    det = a * d - b * c

    def congruent(m1, m2):
        dx = m1.cart[0] - m2.cart[0]
        dy = m1.cart[1] - m2.cart[1]
        # solve (a c; b d) u = (dx, dy) over the integers
        u1 = d * dx - c * dy
        u2 = -b * dx + a * dy
        return u1 % det == 0 and u2 % det == 0

    classes = []
    for m in index_set:
        for cl in classes:
            if congruent(m, cl[0]):
                cl.append(m)
                break
        else:
            classes.append([m])
    return classes


def hom_congruent(a, b, modulus: int) -> bool:
    """Homogeneous congruence: all components of a-b share one residue mod m."""
    d = [ai - bi for ai, bi in zip(a, b)]
    return (d[0] - d[1]) % modulus == 0 and (d[1] - d[2]) % modulus == 0


# -- the hat map (Prop. relating the two hexagonal index families) --------------


def hat_map(k):
    """k -> (k3 - k2, k1 - k3, k2 - k1); a rotation by 90 degrees scaled by sqrt(3)."""
    if sum(k) != 0:
        raise ValueError("hat map needs a zero-sum homogeneous index")
    return (k[2] - k[1], k[0] - k[2], k[1] - k[0])


# -- hexagonal index families in homogeneous form -------------------------------


def hex_h_set(n: int, closed: bool = False):
    """H_n = {j : -n <= j1, j2, -j3 < n} (closed variant with <=)."""
    out = []
    hi = n + 1 if closed else n
    for j1 in range(-n, hi):
        for j2 in range(-n, hi):
            j3 = -j1 - j2
            if closed:
                if -n <= -j3 <= n:
                    out.append((j1, j2, j3))
            else:
                if -n <= -j3 < n:
                    out.append((j1, j2, j3))
    return tuple(sorted(out))


def _mod3_zero(j) -> bool:
    return (j[0] - j[1]) % 3 == 0 and (j[1] - j[2]) % 3 == 0


def k_set(n: int, closed: bool = False):
    """K_n: the hexagonal node family with the mod-3 congruence."""
    return tuple(j for j in hex_h_set(n, closed) if _mod3_zero(j))


def k_dagger_set(n: int, closed: bool = False):
    """K_n-dagger: -n <= j2-j1, j1-j3, j2-j3 < n (closed with <=)."""
    out = []
    for j1 in range(-2 * n, 2 * n + 1):
        for j2 in range(-2 * n, 2 * n + 1):
            j3 = -j1 - j2
            forms = (j2 - j1, j1 - j3, j2 - j3)
            if closed:
                ok = all(-n <= f <= n for f in forms)
            else:
                ok = all(-n <= f < n for f in forms)
            if ok:
                out.append((j1, j2, j3))
    return tuple(sorted(out))


def k_star_cardinality(n: int) -> int:
    """|K_n*| = n^2+n+1 unless n = 1 mod 3, where it is n^2+n-1."""
    return n * n + n - 1 if n % 3 == 1 else n * n + n + 1


# -- triangle and fold index sets -----------------------------------------------


def delta_grid(n: int, interior: bool = False):
    """Grid points of the triangle Delta scaled by n: j1, j2 >= 0, j1+j2 <= n."""
    lo = 1 if interior else 0
    hi = n - 1 if interior else n
    return tuple(
        (j1, j2, -j1 - j2)
        for j1 in range(lo, hi + 1)
        for j2 in range(lo, hi + 1 - j1)
        if j1 + j2 <= hi
    )


def upsilon(n: int, interior: bool = False):
    """Upsilon_n: Delta grid points with the mod-3 congruence."""
    return tuple(j for j in delta_grid(n, interior) if _mod3_zero(j))


def upsilon_dagger(n: int, sine: bool = False):
    """Upsilon_n-dagger: the quadrilateral 2j1+j2 <= n, j1+2j2 <= n, j >= 0.

    With ``sine=True`` the reflection walls j1 = 0 and j2 = 0 are removed
    (where every generalized sine vanishes); the outer boundary stays.
    """
    lo = 1 if sine else 0
    out = []
    for j1 in range(lo, n + 1):
        for j2 in range(lo, n + 1):
            if 2 * j1 + j2 <= n and j1 + 2 * j2 <= n:
                out.append((j1, j2, -j1 - j2))
    return tuple(out)


def xi_square(n: int):
    """Xi_n of the Square-Rhombus program: even points of [0,n]^2 plus odd points."""
    pts = [(2 * k1, 2 * k2) for k1 in range(n // 2 + 1) for k2 in range(n // 2 + 1)]
    pts += [
        (2 * k1 + 1, 2 * k2 + 1)
        for k1 in range((n - 1) // 2 + 1)
        for k2 in range((n - 1) // 2 + 1)
    ]
    return tuple(sorted(pts))


def xi_square_cardinality(n: int) -> int:
    return n * (n + 1) // 2 + n // 2 + 1


def xi_triangle(n: int):
    """Xi_n of the Rhombic-Square program: 0 <= k1, k2, k1 + k2 <= n."""
    return tuple((k1, k2) for k1 in range(n + 1) for k2 in range(n + 1 - k1))


def rr_fold(n: int):
    """Folded node labels of the Rhombic-Rhombic triangle rule (odd n).

    Labels (a, b) with a, b >= 0, a = b mod 2, a + b <= n-1; the node is
    (a/n, b/n) and the fold multiplicity is 4 / 2 / 1 as 2, 1, 0 of the
    coordinates are positive.
    """
    if n % 2 == 0:
        raise ValueError("the Rhombic-Rhombic fold is defined for odd n only")
    return tuple(
        (a, b)
        for a in range(n)
        for b in range(n - a)
        if (a - b) % 2 == 0
    )


def classify_against(points, forms):
    """Classify points against linear facet forms (coeffs, lo, hi).

    Each form saturated at the point counts once; 0 saturations is interior,
    1 an edge, 2 or more a vertex.  Points and coefficients are integer
    sequences of equal length.
    """
    out = []
    for p in points:
        sat = 0
        for coeffs, lo, hi in forms:
            v = sum(c * x for c, x in zip(coeffs, p))
            if v == lo or v == hi:
                sat += 1
        out.append(class_of_count(sat))
    return out


def delta_forms(n: int):
    """Facet forms of the closed triangle Delta scaled by n (homogeneous labels)."""
    return [((1, 0, 0), 0, n), ((0, 1, 0), 0, n), ((0, 0, -1), 0, n)]


def box_forms(n: int, lo: int = None):
    lo = -n if lo is None else lo
    return [((1, 0), lo, n), ((0, 1), lo, n)]


def quad_forms(n: int):
    """Facets of the quadrilateral holding Upsilon_n-dagger."""
    return [
        ((1, 0, 0), 0, n + 1),  # j1 >= 0 (upper bound inactive)
        ((0, 1, 0), 0, n + 1),  # j2 >= 0
        ((2, 1, 0), -1, n),  # 2j1+j2 <= n
        ((1, 2, 0), -1, n),  # j1+2j2 <= n
    ]
