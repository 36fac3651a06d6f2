"""Every cubature rule of the lattice program, with oracle verification.

Trigonometric rules keep exact rational nodes and weights; their oracle
side reduces to cached exponential means over the fundamental polygon.
Algebraic rules (Chebyshev images, the product W0/W1 rules, and the
Gaussian rule for the hypocycloid weight w_{1/2}) are verified on monomial
bases by pulling the weighted integral back to a flat polygon:

  (1/pi^2) int f W0 over the square   ->  int_{[0,1]^2} f(cos pi x)
  (1/pi^2) int f W0 over T_S          ->  int_{T_R} f(cos pi x)
  (1/pi^2) int f W1 over the square   ->  int_{[0,1]^2} f(cos pi x) sin^2 prod
  int f w_{+-1/2} over the hypocycloid -> int_T f(steiner(t)) |J(t)|^(1 +- 1)

with |J| = (16 pi^2 / 27) |sin pi t1 sin pi t2 sin pi t3| the Jacobian of
the Steiner map.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import quadrature
from .config import max_threads
from .indexsets import (
    build_index_set,
    class_of_count,
    classify_against,
    classify_nodes,
    delta_forms,
    delta_grid,
    hex_h_set,
    k_dagger_set,
    rr_fold,
    stage2_weights,
    upsilon,
    upsilon_dagger,
    xi_square,
    xi_triangle,
)
from .lattice import LatticeCase, reduce_mod_lattice
from .triangle import JACOBIAN_SCALE, act_index

PI = math.pi

RULE_TAGS = (
    "SS1", "SS2a", "SS2b", "SS3", "SS4",
    "SR-cuba1", "SR-cubaT",
    "RS", "RS2", "RR", "RR2",
    "HH", "HH2", "HH3a1", "HH3a2",
    "HHD", "HHT2",
    "HH-W1", "Gauss-W1/2",
)

_ALGEBRAIC_IMAGE = {
    "SS3": "SS4",
    "SR-cuba1": "SR-cubaT",
    "RS2": "RS2-alg",
    "RR2": "RR2-alg",
    "HH2": "HH2-alg",
    "HHT2": "HHT2-alg",
}


class UnknownTag(ValueError):
    pass


class UnsupportedN(ValueError):
    pass


class NoSubstitution(ValueError):
    """Rule has no Stage-4 algebraic image."""


# basis items: ("exp", coeff_list, wave_list) rows evaluated on frame nodes,
# or ("fn", callable, cycles_per_unit) for weighted-monomial oracles
@dataclass
class CubatureRule:
    tag: str
    n: int
    nodes: np.ndarray          # frame coordinates, shape (m, 2)
    weights: np.ndarray
    normalization: Fraction
    domain: str                # frame polygon key
    exactness: dict
    nodes_exact: list | None = None   # rational labels (hom triples / pairs)
    weights_exact: list | None = None
    classes: list | None = None
    mass: Fraction | float = 1

    def apply(self, values) -> complex:
        return complex(float(self.normalization) * np.sum(self.weights * values))

    def node_count(self) -> int:
        return len(self.weights)


@dataclass
class ExactnessReport:
    tested_space: str
    max_error: float
    worst_function: str

    def passed(self, tol: float = 1e-9) -> bool:
        return self.max_error < tol


# -- frames ---------------------------------------------------------------------

_FRAMES = {
    "square-unit": np.array([[0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5], [0.5, -0.5]]),
    "square-quarter": np.array([[0.0, 0.0], [0.5, 0.0], [0.5, 0.5], [0.0, 0.5]]),
    "rhombus": np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]),
    "hex-t": np.array(
        [[1.0, 0.0], [0.0, 1.0], [-1.0, 1.0], [-1.0, 0.0], [0.0, -1.0], [1.0, -1.0]]
    ),
    "delta-t": np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
    "tr": np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
    "unit-square": np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]),
}

# algebraic domains keep their pullback polygon alongside
_PULLBACK = {
    "w0-square": ("unit-square", "cos-pi", None),
    "w0-ts": ("tr", "cos-pi", None),
    "w1-square": ("unit-square", "cos-pi", "sin2"),
    "wm half-delta": ("delta-t", "steiner", None),
    "w half-delta": ("delta-t", "steiner", "jac2"),
}


def _steiner_xy(pts):
    from .triangle import steiner_map

    t = np.stack([pts[:, 0], pts[:, 1], -pts[:, 0] - pts[:, 1]], axis=-1)
    return steiner_map(t)


def _pullback_map(kind, pts):
    if kind == "cos-pi":
        return np.cos(PI * pts)
    if kind == "steiner":
        return _steiner_xy(pts)
    raise KeyError(kind)


def _pullback_density(kind, pts):
    if kind is None:
        return 1.0
    if kind == "sin2":
        return np.sin(PI * pts[:, 0]) ** 2 * np.sin(PI * pts[:, 1]) ** 2
    if kind == "jac2":
        prod = np.sin(PI * pts[:, 0]) * np.sin(PI * pts[:, 1]) * np.sin(PI * (pts[:, 0] + pts[:, 1]))
        return (JACOBIAN_SCALE * prod) ** 2
    raise KeyError(kind)


# -- basis construction -----------------------------------------------------------


def _exp_basis_square(limit, scale):
    """Single exponentials e^{i scale (k.x)} for k in [-limit, limit]^2."""
    items = []
    for k1 in range(-limit, limit + 1):
        for k2 in range(-limit, limit + 1):
            items.append((f"e({k1},{k2})", [1.0], [np.array([k1, k2], float) * scale]))
    return items


def _exp_basis_sr(limit):
    """phi_k with |k2 +- k1| <= limit (Square-Rhombus symmetric family)."""
    items = []
    for k1 in range(-limit, limit + 1):
        for k2 in range(-limit, limit + 1):
            if abs(k2 + k1) <= limit and abs(k2 - k1) <= limit:
                items.append(
                    (f"e({k1},{k2})", [1.0], [2.0 * PI * np.array([k1, k2], float)])
                )
    return items


def _exp_basis_rhombus(limit, half_bound=False):
    """e^{i pi ((k1+k2) x1 + (k2-k1) x2)}; half_bound caps |k_i| <= limit/2."""
    items = []
    b = limit // 2 if half_bound else limit
    for k1 in range(-b, b + 1):
        for k2 in range(-b, b + 1):
            if not half_bound and max(abs(k2 + k1), abs(k2 - k1)) > limit:
                continue
            items.append(
                (f"e({k1},{k2})", [1.0], [PI * np.array([k1 + k2, k2 - k1], float)])
            )
    return items


def _hex_wave(k):
    return (2.0 * PI / 3.0) * np.array([k[0] - k[2], k[1] - k[2]], dtype=float)


def _exp_basis_hex(freqs):
    return [(f"e{k}", [1.0], [_hex_wave(k)]) for k in freqs]


def _cos_basis(pairs, scale, congruent_mod2=False):
    """cos(scale a x1) cos(scale b x2) as 4-term exponential combos."""
    items = []
    for a, b in pairs:
        if congruent_mod2 and (a - b) % 2 != 0:
            continue
        waves = [np.array([sa * a, sb * b], float) * scale for sa in (1, -1) for sb in (1, -1)]
        items.append((f"cc({a},{b})", [0.25] * 4, waves))
    return items


def _tc_basis(freqs):
    """TC_k as the 6-term orbit mean of exponentials, in the (t1, t2) frame."""
    from .triangle import A2_ELEMENTS

    items = []
    for k in freqs:
        orbit = [act_index(k, e) for e in A2_ELEMENTS]
        items.append((f"tc{k}", [1.0 / 6.0] * 6, [_hex_wave(o) for o in orbit]))
    return items


def _monomial_basis(limit, total_degree=True, congruent_mod2=False):
    items = []
    for a in range(limit + 1):
        for b in range(limit + 1):
            if total_degree and a + b > limit:
                continue
            if congruent_mod2 and (a - b) % 2 != 0:
                continue
            items.append((f"y^({a},{b})", a, b))
    return items


# -- rule constructors -------------------------------------------------------------


def _hom_nodes(labels, n, shift=None):
    exact = []
    for j in labels:
        pt = tuple(Fraction(c, n) for c in j)
        if shift is not None:
            pt = tuple(p + s for p, s in zip(pt, shift))
        exact.append(pt)
    arr = np.array([[float(c) for c in p] for p in exact])
    return exact, arr[:, :2]


def _classes_from(labels, forms):
    return classify_against(labels, forms)


def _class_weights(classes, table):
    return [table[c] for c in classes]


def build_rule(tag: str, n: int) -> CubatureRule:
    """Construct a rule by tag; n is the lattice scale of its derivation."""
    if tag in ("SS1", "SS2a", "SS2b", "SS3"):
        return _build_square_square(tag, n)
    if tag == "SS4":
        return chebyshev_image(_build_square_square("SS3", n))
    if tag == "SR-cuba1":
        return _build_sr_cuba1(n)
    if tag == "SR-cubaT":
        return chebyshev_image(_build_sr_cuba1(n))
    if tag == "RS":
        return _build_rs(n)
    if tag == "RS2":
        return _build_rs2(n)
    if tag == "RR":
        return _build_rr(n)
    if tag == "RR2":
        return _build_rr2(n)
    if tag in ("HH", "HH3a1", "HH3a2"):
        return _build_hh(tag, n)
    if tag == "HH2":
        return _build_hh2(n)
    if tag == "HHD":
        return _build_hhd(n)
    if tag == "HHT2":
        return _build_hht2(n)
    if tag == "HH-W1":
        return _build_w1(n)
    if tag in ("Gauss-W1/2", "Gauss-W½"):
        return gaussian_rule_w_half(n)
    raise UnknownTag(f"unknown rule tag {tag!r}")


def _build_square_square(tag, n):
    norm = Fraction(1, 4 * n * n)
    if tag == "SS1":
        labels = [(k1, k2) for k1 in range(-n, n) for k2 in range(-n, n)]
        w = [Fraction(1)] * len(labels)
        classes = None
    elif tag == "SS2a":
        labels = [(k1, k2) for k1 in range(-n, n + 1) for k2 in range(-n, n + 1)]
        classes = classify_against(labels, [((1, 0), -n, n), ((0, 1), -n, n)])
        w = _class_weights(classes, {"interior": Fraction(1), "edge": Fraction(1, 2), "vertex": Fraction(1, 4)})
    elif tag == "SS2b":
        labels = [(k1, k2) for k1 in range(-n, n) for k2 in range(-n, n)]
        w = [Fraction(1)] * len(labels)
        classes = None
    else:  # SS3
        labels = [(k1, k2) for k1 in range(n) for k2 in range(n)]
        w = [Fraction(1)] * len(labels)
        classes = None
    if tag in ("SS2b", "SS3"):
        exact = [(Fraction(2 * k1 + 1, 4 * n), Fraction(2 * k2 + 1, 4 * n)) for k1, k2 in labels]
    else:
        exact = [(Fraction(k1, 2 * n), Fraction(k2, 2 * n)) for k1, k2 in labels]
    nodes = np.array([[float(a), float(b)] for a, b in exact])
    limit = 2 * n - 1
    if tag == "SS3":
        dom = "square-quarter"
        basis = ("cos2pi", limit)
        space = f"TC_{limit} (product cosines)"
        mass = Fraction(1, 4)
    else:
        dom = "square-unit"
        basis = ("exp-square", limit)
        space = f"H*_{limit} on the square"
        mass = Fraction(1)
    return CubatureRule(
        tag=tag, n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=norm, domain=dom,
        exactness={"space": space, "limit": limit, "basis": basis},
        nodes_exact=exact, weights_exact=w, classes=classes, mass=mass,
    )


def _build_sr_cuba1(n):
    if n < 2:
        raise UnsupportedN("the symmetric Square-Rhombus rule needs n >= 2")
    case = LatticeCase("SquareRhombus", n)
    s = build_index_set(case, "closed")
    labels = [(m.cart[0] + m.cart[1], m.cart[1] - m.cart[0]) for m in s]
    classes = classify_against(labels, [((1, 0), -n, n), ((0, 1), -n, n)])
    w = _class_weights(classes, {"interior": Fraction(1), "edge": Fraction(1, 2), "vertex": Fraction(1, 4)})
    exact = [(Fraction(k1, 2 * n), Fraction(k2, 2 * n)) for k1, k2 in labels]
    nodes = np.array([[float(a), float(b)] for a, b in exact])
    limit = 2 * n - 1
    return CubatureRule(
        tag="SR-cuba1", n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=Fraction(1, 2 * n * n), domain="square-unit",
        exactness={"space": f"T*_{limit} (rhombic frequency family)", "limit": limit,
                   "basis": ("exp-sr", limit)},
        nodes_exact=exact, weights_exact=w, classes=classes,
    )


def _sign_orbit(k1, k2) -> int:
    return len({(s1 * k1, s2 * k2) for s1 in (1, -1) for s2 in (1, -1)})


def _build_rs(n):
    case = LatticeCase("RhombicSquare", n)
    s, w = stage2_weights(build_index_set(case, "closed"))
    labels = [m.cart for m in s]
    classes = [m.cls for m in s]
    exact = [(Fraction(k1, n), Fraction(k2, n)) for k1, k2 in labels]
    nodes = np.array([[float(a), float(b)] for a, b in exact])
    limit = 2 * n - 1
    return CubatureRule(
        tag="RS", n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=Fraction(1, 2 * n * n), domain="rhombus",
        exactness={"space": f"H*_{limit} (rhombic exponentials)", "limit": limit,
                   "basis": ("exp-rhombus", limit)},
        nodes_exact=exact, weights_exact=w, classes=classes,
    )


def _build_rs2(n):
    labels = xi_triangle(n)
    rhombus_forms = [((1, 1), -n, n), ((-1, 1), -n, n)]
    w, classes = [], []
    for k in labels:
        cls = classify_against([k], rhombus_forms)[0]
        c = {"interior": Fraction(1), "edge": Fraction(1, 2), "vertex": Fraction(1, 4)}[cls]
        w.append(c * _sign_orbit(*k))
        classes.append(cls)
    exact = [(Fraction(k1, n), Fraction(k2, n)) for k1, k2 in labels]
    nodes = np.array([[float(a), float(b)] for a, b in exact])
    limit = 2 * n - 1
    return CubatureRule(
        tag="RS2", n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=Fraction(1, 2 * n * n), domain="tr",
        exactness={"space": f"T_{limit} (even rhombic cosines)", "limit": limit,
                   "basis": ("cospi-mod2", limit)},
        nodes_exact=exact, weights_exact=w, classes=classes,
    )


def _build_rr(n):
    if n % 2 == 0:
        raise UnsupportedN("the Rhombic-Rhombic rules take odd n only")
    case = LatticeCase("RhombicRhombic", n)
    s = build_index_set(case, "open")
    labels = [m.cart for m in s]
    exact = [(Fraction(k1 + k2, n), Fraction(k2 - k1, n)) for k1, k2 in labels]
    nodes = np.array([[float(a), float(b)] for a, b in exact])
    w = [Fraction(1)] * len(labels)
    limit = 2 * n - 1
    return CubatureRule(
        tag="RR", n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=Fraction(1, n * n), domain="rhombus",
        exactness={"space": f"H*_{limit} (rhombic exponentials, half bound)",
                   "limit": limit, "basis": ("exp-rhombus-half", limit)},
        nodes_exact=exact, weights_exact=w, classes=None,
    )


def _build_rr2(n):
    if n % 2 == 0:
        raise UnsupportedN("the Rhombic-Rhombic rules take odd n only")
    labels = rr_fold(n)
    w = []
    for a, b in labels:
        w.append(Fraction(4 if a and b else (1 if a == b == 0 else 2)))
    exact = [(Fraction(a, n), Fraction(b, n)) for a, b in labels]
    nodes = np.array([[float(x), float(y)] for x, y in exact])
    # the Stage-1 frequency box has the half bound |k_i| <= (2n-1)/2, so the
    # even-even restriction carries j1 + j2 <= 2n-2, not the full T_{2n-1}
    limit = 2 * n - 2
    classes = classify_against(
        labels, [((1, 0), 0, n - 1), ((0, 1), 0, n - 1), ((1, 1), 0, n - 1)]
    )
    return CubatureRule(
        tag="RR2", n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=Fraction(1, n * n), domain="tr",
        exactness={"space": f"even rhombic cosines with j1+j2 <= {limit}", "limit": limit,
                   "basis": ("cospi-mod2-total", limit)},
        nodes_exact=exact, weights_exact=w, classes=classes,
    )


_HEX_SHIFTS = {
    "HH3a1": (Fraction(1, 3), Fraction(1, 3), Fraction(-2, 3)),
    "HH3a2": (Fraction(-1, 3), Fraction(-1, 3), Fraction(2, 3)),
}


def _build_hh(tag, n):
    case = LatticeCase("HexHex", n)
    limit = 2 * n - 1
    if tag == "HH":
        s, w = stage2_weights(build_index_set(case, "closed"))
        labels = [m.coords for m in s]
        classes = [m.cls for m in s]
        exact, nodes = _hom_nodes(labels, n)
    else:
        shift = tuple(sh / n for sh in _HEX_SHIFTS[tag])
        labels = hex_h_set(n)
        raw, _ = _hom_nodes(labels, n, shift=shift)
        exact = []
        for pt in raw:
            red = reduce_mod_lattice(case, pt)
            exact.append(tuple(v.as_fraction() for v in red))
        nodes = np.array([[float(c) for c in p] for p in exact])[:, :2]
        w = [Fraction(1)] * len(labels)
        classes = None
    basis_freqs = hex_h_set(limit, closed=True)
    return CubatureRule(
        tag=tag, n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=Fraction(1, 3 * n * n), domain="hex-t",
        exactness={"space": f"H*_{limit} on the hexagon", "limit": limit,
                   "basis": ("exp-hex", tuple(basis_freqs))},
        nodes_exact=exact, weights_exact=list(w), classes=classes,
    )


def _build_hh2(n):
    labels = delta_grid(n)
    classes = classify_against(labels, delta_forms(n))
    w = _class_weights(classes, {"interior": Fraction(6), "edge": Fraction(3), "vertex": Fraction(1)})
    exact, nodes = _hom_nodes(labels, n)
    limit = 2 * n - 1
    return CubatureRule(
        tag="HH2", n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=Fraction(1, 3 * n * n), domain="delta-t",
        exactness={"space": f"TC_{limit} (triangle cosines over the Delta cone)",
                   "limit": limit, "basis": ("tc-cone", limit)},
        nodes_exact=exact, weights_exact=w, classes=classes,
    )


def _build_hhd(n):
    case = LatticeCase("HexHexTranspose", n)
    s, w = stage2_weights(build_index_set(case, "closed"))
    labels = [m.coords for m in s]
    classes = [m.cls for m in s]
    exact, nodes = _hom_nodes(labels, n)
    limit = 2 * n - 1
    freqs = k_dagger_set(limit, closed=True)
    return CubatureRule(
        tag="HHD", n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=Fraction(1, n * n), domain="hex-t",
        exactness={"space": f"K*_{limit} (transpose frequency hexagon)", "limit": limit,
                   "basis": ("exp-hex", tuple(freqs))},
        nodes_exact=exact, weights_exact=list(w), classes=classes,
    )


def _build_hht2(n):
    labels = upsilon(n)
    classes = classify_against(labels, delta_forms(n))
    w = _class_weights(classes, {"interior": Fraction(6), "edge": Fraction(3), "vertex": Fraction(1)})
    exact, nodes = _hom_nodes(labels, n)
    limit = 2 * n - 1
    return CubatureRule(
        tag="HHT2", n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
        normalization=Fraction(1, n * n), domain="delta-t",
        exactness={"space": f"TC_{limit} over Upsilon-dagger", "limit": limit,
                   "basis": ("tc-upsilon", limit)},
        nodes_exact=exact, weights_exact=w, classes=classes,
    )


def _build_w1(n):
    m = n + 1
    angles = PI * np.arange(1, m) / m
    s2 = np.sin(angles) ** 2
    nodes = np.array([[math.cos(a1), math.cos(a2)] for a1 in angles for a2 in angles])
    weights = np.array([w1 * w2 for w1 in s2 for w2 in s2])
    limit = 2 * n - 1
    return CubatureRule(
        tag="HH-W1", n=n, nodes=nodes, weights=weights,
        normalization=Fraction(1, m * m), domain="w1-square",
        exactness={"space": f"Pi_{limit} x Pi_{limit} (product W1 weight)",
                   "limit": limit, "basis": ("monomials-product", limit)},
        nodes_exact=None, weights_exact=None, classes=None,
        mass=float(np.sum(weights)) / (m * m),
    )


def gaussian_rule_w_half(n: int) -> CubatureRule:
    """Gaussian rule for w_{1/2}: n(n+1)/2 nodes, exact to degree 2n-1."""
    if n < 2:
        raise UnsupportedN("the Gaussian w_{1/2} rule needs n >= 2")
    m = n + 2
    labels = delta_grid(m, interior=True)
    t = np.array([[j1 / m, j2 / m, j3 / m] for j1, j2, j3 in labels])
    from .triangle import steiner_map

    nodes = steiner_map(t)
    prod = np.prod(np.sin(PI * t), axis=-1)
    weights = (256.0 * PI**4 / 729.0) * prod**2
    limit = 2 * n - 1
    return CubatureRule(
        tag="Gauss-W1/2", n=n, nodes=nodes, weights=weights,
        normalization=Fraction(1, m * m), domain="w half-delta",
        exactness={"space": f"Pi^2_{limit} (hypocycloid, weight w_1/2)",
                   "limit": limit, "basis": ("monomials-total", limit)},
        nodes_exact=None, weights_exact=None, classes=None,
        mass=float(np.sum(weights)) / (m * m),
    )


# -- Stage-4 Chebyshev images ------------------------------------------------------


def chebyshev_image(rule: CubatureRule) -> CubatureRule:
    """Map a trigonometric rule through its cosine substitution."""
    if rule.tag not in _ALGEBRAIC_IMAGE:
        raise NoSubstitution(f"{rule.tag} has no Stage-4 algebraic image")
    n = rule.n
    limit = 2 * n - 1
    if rule.tag == "SS3":
        nodes = np.cos(2.0 * PI * rule.nodes)
        return CubatureRule(
            tag="SS4", n=n, nodes=nodes, weights=rule.weights.copy(),
            normalization=Fraction(1, n * n), domain="w0-square",
            exactness={"space": f"Pi_{limit} x Pi_{limit} (product W0 weight)",
                       "limit": limit, "basis": ("monomials-product", limit)},
            classes=rule.classes,
        )
    if rule.tag == "SR-cuba1":
        # nodes k/2n on the square become z_k = cos(pi k / n) over Xi_n
        labels = xi_square(n)
        classes = classify_against(labels, [((1, 0), 0, n), ((0, 1), 0, n)])
        w = _class_weights(classes, {"interior": Fraction(4), "edge": Fraction(2), "vertex": Fraction(1)})
        nodes = np.array([[math.cos(PI * k1 / n), math.cos(PI * k2 / n)] for k1, k2 in labels])
        return CubatureRule(
            tag="SR-cubaT", n=n, nodes=nodes, weights=np.array([float(x) for x in w]),
            normalization=Fraction(1, 2 * n * n), domain="w0-square",
            exactness={"space": f"Pi^2_{limit} (total degree, W0)", "limit": limit,
                       "basis": ("monomials-total", limit)},
            weights_exact=w, classes=classes,
        )
    if rule.tag in ("RS2", "RR2"):
        nodes = np.cos(PI * rule.nodes)
        limit = rule.exactness["limit"]
        basis = "monomials-mod2" if rule.tag == "RS2" else "monomials-mod2-total"
        return CubatureRule(
            tag=_ALGEBRAIC_IMAGE[rule.tag], n=n, nodes=nodes, weights=rule.weights.copy(),
            normalization=rule.normalization * Fraction(1, 2), domain="w0-ts",
            exactness={"space": f"even-pair Chebyshev products on T_S up to {limit}",
                       "limit": limit, "basis": (basis, limit)},
            weights_exact=rule.weights_exact,
            classes=rule.classes, mass=Fraction(1, 2),
        )
    # HH2 / HHT2: image under the Steiner map, weight w_{-1/2}
    t = np.stack(
        [rule.nodes[:, 0], rule.nodes[:, 1], -rule.nodes[:, 0] - rule.nodes[:, 1]], axis=-1
    )
    from .triangle import steiner_map

    nodes = steiner_map(t)
    return CubatureRule(
        tag=_ALGEBRAIC_IMAGE[rule.tag], n=n, nodes=nodes, weights=rule.weights.copy(),
        normalization=rule.normalization * Fraction(1, 2), domain="wm half-delta",
        exactness={"space": f"Pi^2_{limit} (hypocycloid, weight w_-1/2)",
                   "limit": limit, "basis": ("monomials-total", limit)},
        weights_exact=rule.weights_exact, classes=rule.classes, mass=Fraction(1, 2),
    )


# -- verification -------------------------------------------------------------------


def _basis_items(rule: CubatureRule):
    kind = rule.exactness["basis"]
    limit = rule.exactness["limit"]
    if kind[0] == "exp-square":
        return "exp", _exp_basis_square(limit, 2.0 * PI)
    if kind[0] == "exp-sr":
        return "exp", _exp_basis_sr(limit)
    if kind[0] == "exp-rhombus":
        return "exp", _exp_basis_rhombus(limit)
    if kind[0] == "exp-rhombus-half":
        return "exp", _exp_basis_rhombus(limit, half_bound=True)
    if kind[0] == "exp-hex":
        return "exp", _exp_basis_hex(kind[1])
    if kind[0] == "cos2pi":
        pairs = [(a, b) for a in range(limit + 1) for b in range(limit + 1)]
        return "exp", _cos_basis(pairs, 2.0 * PI)
    if kind[0] == "cospi-mod2":
        pairs = [(a, b) for a in range(limit + 1) for b in range(limit + 1)]
        return "exp", _cos_basis(pairs, PI, congruent_mod2=True)
    if kind[0] == "cospi-mod2-total":
        pairs = [(a, b) for a in range(limit + 1) for b in range(limit + 1 - a)]
        return "exp", _cos_basis(pairs, PI, congruent_mod2=True)
    if kind[0] == "monomials-mod2-total":
        return "fn", _monomial_basis(limit, total_degree=True, congruent_mod2=True)
    if kind[0] == "tc-cone":
        freqs = [(k1, k2, -k1 - k2) for k1 in range(limit + 1) for k2 in range(limit + 1 - k1)]
        return "exp", _tc_basis(freqs)
    if kind[0] == "tc-upsilon":
        return "exp", _tc_basis(upsilon_dagger(limit))
    if kind[0] == "monomials-total":
        return "fn", _monomial_basis(limit, total_degree=True)
    if kind[0] == "monomials-product":
        return "fn", _monomial_basis(limit, total_degree=False)
    if kind[0] == "monomials-mod2":
        return "fn", _monomial_basis(limit, total_degree=False, congruent_mod2=True)
    raise UnknownTag(str(kind))


class _ExpMeans:
    """Cache of exponential means over each frame polygon."""

    def __init__(self):
        self.values = {}

    def prefill(self, domain, waves):
        poly = _FRAMES[domain]
        missing, keys = [], []
        for w in waves:
            key = (domain, round(w[0], 12), round(w[1], 12))
            if key not in self.values:
                missing.append(w)
                keys.append(key)
        if missing:
            area = abs(quadrature._polygon_area(poly))
            vals = quadrature.integrate_exponentials(poly, np.array(missing)) / area
            self.values.update(dict(zip(keys, vals)))

    def mean(self, domain, w):
        return self.values[(domain, round(w[0], 12), round(w[1], 12))]


_exp_means = _ExpMeans()


def verify_exactness(rule: CubatureRule, tol: float = 1e-9) -> ExactnessReport:
    """Max |rule(f) - oracle(f)| over the rule's claimed exactness basis."""
    mode, items = _basis_items(rule)
    mass = float(rule.mass)
    if mode == "exp":
        all_waves = [w for _, _, waves in items for w in waves]
        _exp_means.prefill(rule.domain, all_waves)
        worst, worst_name = -1.0, ""
        for name, coeffs, waves in items:
            vals = np.exp(1j * (rule.nodes @ np.array(waves).T)) @ np.array(coeffs)
            approx = rule.apply(vals)
            exact = mass * sum(
                c * _exp_means.mean(rule.domain, w) for c, w in zip(coeffs, waves)
            )
            err = abs(approx - exact)
            if err > worst:
                worst, worst_name = err, name
        return ExactnessReport(rule.exactness["space"], worst, worst_name)

    # weighted monomial oracle through the pullback polygon
    pull_domain, map_kind, dens_kind = _PULLBACK[rule.domain]
    poly = _FRAMES[pull_domain]
    cycles = rule.exactness["limit"] + 4

    def one(item):
        name, a, b = item
        approx = rule.apply(rule.nodes[:, 0] ** a * rule.nodes[:, 1] ** b)

        def integrand(pts):
            xy = _pullback_map(map_kind, pts)
            return xy[:, 0] ** a * xy[:, 1] ** b * _pullback_density(dens_kind, pts)

        exact = quadrature.integrate_function(poly, integrand, cycles=cycles).real
        return name, abs(approx - exact)

    threads = min(max_threads(), 8)
    if threads > 1 and len(items) > 8:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, items))
    else:
        results = [one(item) for item in items]
    worst_name, worst = max(results, key=lambda r: r[1])
    return ExactnessReport(rule.exactness["space"], worst, worst_name)
