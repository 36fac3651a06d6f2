"""Generalized cosines and sines on the equilateral triangle.

The reflection group A2 acts on the plane t1 + t2 + t3 = 0; rotations
permute the homogeneous coordinates cyclically and reflections are odd
permutations composed with negation (the reflection in the wall t2 = 0
sends t to -(t3, t2, t1)).  TC_k and TS_k are the three-term invariant
and anti-invariant combinations

  TC_k(t) = (1/3) sum_i e^{i pi (k2-k3) u_i / 3} cos(k1 pi t_i),
  TS_k(t) = (1/3) sum_i e^{i pi (k2-k3) u_i / 3} sin(k1 pi t_i),

with (u1, u2, u3) = (t2-t3, t3-t1, t1-t2).  The plain group sums P+ phi_k
and P- phi_k equal 6 TC_k and 6i TS_k; the constants are pinned by tests.

The map (x, y) = (Re, Im) TC_{0,1,-1} carries the triangle onto the region
bounded by Steiner's hypocycloid, where TC/TS-quotients become the
generalized Chebyshev polynomials orthogonal for the weights w_{+-1/2}.
"""

from __future__ import annotations

import math

import numpy as np

PI = math.pi

# (permutation, sign): rotations are even permutations, reflections are
# odd permutations with negation; sign is also the sign character.
A2_ELEMENTS = (
    ((0, 1, 2), 1),
    ((1, 2, 0), 1),
    ((2, 0, 1), 1),
    ((1, 0, 2), -1),
    ((0, 2, 1), -1),
    ((2, 1, 0), -1),
)


class IndexOutsideCone(ValueError):
    """Frequency index outside the cone k1, k2 >= 0 >= k3."""


def apply_a2(t, element):
    """Action t -> t sigma on homogeneous points (vectorized over t)."""
    perm, sign = element
    t = np.asarray(t, dtype=float)
    return sign * t[..., list(perm)]


def act_index(k, element):
    """Same action on integer frequency indices (exact)."""
    perm, sign = element
    return tuple(sign * k[p] for p in perm)


def orbit_size(k) -> int:
    return len({act_index(k, e) for e in A2_ELEMENTS})


def _check_cone(k, strict: bool):
    if sum(k) != 0:
        raise IndexOutsideCone(f"{k} does not sum to zero")
    if strict:
        if not (k[0] > 0 and k[1] > 0 and k[2] < 0):
            raise IndexOutsideCone(f"{k} is not interior to the cone")
    elif not (k[0] >= 0 and k[1] >= 0 and k[2] <= 0):
        raise IndexOutsideCone(f"{k} is outside the cone")


def _three_terms(k, t, trig):
    t = np.asarray(t, dtype=float)
    u = np.stack(
        [t[..., 1] - t[..., 2], t[..., 2] - t[..., 0], t[..., 0] - t[..., 1]], axis=-1
    )
    e = np.exp(1j * PI * (k[1] - k[2]) / 3.0 * u)
    return (e * trig(PI * k[0] * t)).sum(axis=-1) / 3.0


def tc(k, t):
    """Generalized cosine TC_k; requires k in the closed cone."""
    _check_cone(k, strict=False)
    return _three_terms(k, t, np.cos)


def ts(k, t):
    """Generalized sine TS_k; requires k interior to the cone."""
    _check_cone(k, strict=True)
    return _three_terms(k, t, np.sin)


def tc_matrix(ks, t):
    """TC_k(t) for every k in ks: shape (len(ks),) + t.shape[:-1]."""
    return np.stack([_three_terms(k, t, np.cos) for k in ks])


def ts_matrix(ks, t):
    return np.stack([_three_terms(k, t, np.sin) for k in ks])


def project_pm(f, sign: int):
    """The group sum P+ (sign=+1) or signed sum P- (sign=-1) of f over A2."""

    def projected(t):
        t = np.asarray(t, dtype=float)
        total = None
        for element in A2_ELEMENTS:
            term = f(apply_a2(t, element))
            if sign < 0:
                term = element[1] * term
            total = term if total is None else total + term
        return total

    return projected


# -- the Steiner map and the hypocycloid weight ---------------------------------


def steiner_map(t):
    """(x, y) = (Re, Im) of TC_{0,1,-1}(t): triangle onto the hypocycloid region."""
    z = tc((0, 1, -1), t)
    return np.stack([z.real, z.imag], axis=-1)

JACOBIAN_SCALE = 16.0 * PI**2 / 27.0


def steiner_jacobian(t):
    """Signed Jacobian det of (t1, t2) -> (x, y): -(16 pi^2/27) prod sin(pi t_i)."""
    t = np.asarray(t, dtype=float)
    return -JACOBIAN_SCALE * np.prod(np.sin(PI * t), axis=-1)


class NegativeBracket(ValueError):
    """w_alpha with negative alpha evaluated outside the hypocycloid region."""


def bracket(x, y):
    """-3 (x^2+y^2+1)^2 + 8 (x^3 - 3 x y^2) + 4; nonnegative inside the region."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return -3.0 * (x * x + y * y + 1.0) ** 2 + 8.0 * (x**3 - 3.0 * x * y * y) + 4.0


def w_alpha(x, y, alpha: float):
    """The hypocycloid weight (4/27)^alpha pi^(4 alpha) bracket^alpha."""
    b = bracket(x, y)
    if alpha < 0 and np.any(b <= 0):
        raise NegativeBracket("bracket <= 0 where a negative power is required")
    return (4.0 / 27.0) ** alpha * PI ** (4 * alpha) * np.where(b < 0, 0.0, b) ** alpha


# -- generalized Chebyshev polynomials ------------------------------------------

_PERTURB = np.array([1.0, math.e / 10.0, -1.0 - math.e / 10.0]) * 1e-6


def _ts_quotient(num_k, t):
    t = np.asarray(t, dtype=float)
    den = ts((1, 1, -2), t)
    num = ts(num_k, t)
    small = np.abs(den) < 1e-8
    if not np.any(small):
        return num / den

    def q(shift):
        ts_ = t + shift
        return ts(num_k, ts_) / ts((1, 1, -2), ts_)

    # removable singularity: symmetric perturbation kills the odd error term,
    # Richardson on h and h/2 the h^2 term
    a_h = 0.5 * (q(_PERTURB) + q(-_PERTURB))
    a_h2 = 0.5 * (q(_PERTURB / 2) + q(-_PERTURB / 2))
    fallback = (4.0 * a_h2 - a_h) / 3.0
    regular = np.where(small, 1.0, den)
    return np.where(small, fallback, num / regular)


def generalized_chebyshev(kind: str, k: int, m: int, t):
    """T_k^m or U_k^m evaluated on homogeneous points.

    T_k^m = TC_{k, m-k, -m}; U_k^m = TS_{k+1, m-k+1, -m-2} / TS_{1,1,-2}.
    Both are polynomials of total degree m in (x, y) = steiner_map(t);
    the U-quotient is evaluated by a perturbed-average fallback near the
    zero set of the denominator (documented accuracy about 1e-8 there).
    """
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    if kind == "first":
        return tc((k, m - k, -m), t)
    if kind == "second":
        return _ts_quotient((k + 1, m - k + 1, -m - 2), t)
    raise ValueError("kind must be 'first' or 'second'")
