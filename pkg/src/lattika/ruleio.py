"""Rule files (JSON schema v1), CSV shapes, and SVG node plots.

Weights and normalizations serialize as exact rational strings when the
rule has them (every lattice rule does); the two weighted-polynomial
rules carry sin^2/pi^4 factors and fall back to 17-significant-digit
decimals.  Coordinates always serialize as decimals, plus exact
homogeneous rational triples for the hexagon-family rules.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

from .cubature import CubatureRule, build_rule
from .lattice import LatticeCase, domain_polygon, hom_to_cartesian
from .geometry import polygon_floats

SCHEMA_VERSION = 1

RULE_CASE = {
    "SS1": "SquareSquare", "SS2a": "SquareSquare", "SS2b": "SquareSquare",
    "SS3": "SquareSquare", "SS4": "SquareSquare", "HH-W1": "SquareSquare",
    "SR-cuba1": "SquareRhombus", "SR-cubaT": "SquareRhombus",
    "RS": "RhombicSquare", "RS2": "RhombicSquare", "RS2-alg": "RhombicSquare",
    "RR": "RhombicRhombic", "RR2": "RhombicRhombic", "RR2-alg": "RhombicRhombic",
    "HH": "HexHex", "HH2": "HexHex", "HH3a1": "HexHex", "HH3a2": "HexHex",
    "HH2-alg": "HexHex", "Gauss-W1/2": "HexHex",
    "HHD": "HexHexTranspose", "HHT2": "HexHexTranspose", "HHT2-alg": "HexHexTranspose",
}

_HEX_DOMAINS = ("hex-t", "delta-t")


def _dec(x: float) -> str:
    return f"{float(x):.17g}"


def _rat(x) -> str:
    return str(Fraction(x))


def _node_cartesian(rule: CubatureRule, i: int):
    if rule.domain in _HEX_DOMAINS:
        t1, t2 = rule.nodes[i]
        return [(t1 - (-t1 - t2)) / math.sqrt(3.0), t2]
    return [rule.nodes[i, 0], rule.nodes[i, 1]]


def rule_to_dict(rule: CubatureRule) -> dict:
    nodes = []
    for i in range(rule.node_count()):
        rec = {
            "cartesian": [_dec(v) for v in _node_cartesian(rule, i)],
            "weight": _rat(rule.weights_exact[i]) if rule.weights_exact is not None
            else _dec(rule.weights[i]),
            "class": rule.classes[i] if rule.classes is not None else None,
        }
        if rule.domain in _HEX_DOMAINS:
            t = rule.nodes_exact[i]
            rec["homogeneous"] = [_dec(float(c)) for c in t]
            rec["homogeneous_exact"] = [_rat(c) for c in t]
        nodes.append(rec)
    return {
        "schema_version": SCHEMA_VERSION,
        "tag": rule.tag,
        "case": RULE_CASE.get(rule.tag, "derived"),
        "n": rule.n,
        "normalization": _rat(rule.normalization),
        "mass": _rat(rule.mass) if isinstance(rule.mass, Fraction) else _dec(rule.mass),
        "domain": rule.domain,
        "exactness": {
            "space": rule.exactness["space"],
            "max_index_or_degree": rule.exactness["limit"],
        },
        "nodes": nodes,
    }


def save_rule(rule: CubatureRule, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(rule_to_dict(rule), fh, indent=2, sort_keys=True)
        fh.write("\n")


class MalformedRuleFile(ValueError):
    pass


def load_rule(path: str) -> CubatureRule:
    """Rebuild a rule from file; node/weight data are taken from the file."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedRuleFile(str(exc)) from exc
    try:
        if data["schema_version"] != SCHEMA_VERSION:
            raise MalformedRuleFile(f"unsupported schema {data['schema_version']}")
        template = build_rule(data["tag"], int(data["n"]))
        recs = data["nodes"]
        if len(recs) != template.node_count():
            raise MalformedRuleFile(
                f"{data['tag']} at n={data['n']} needs {template.node_count()} nodes"
            )
        if data["domain"] in _HEX_DOMAINS:
            nodes = np.array(
                [[float(r["homogeneous"][0]), float(r["homogeneous"][1])] for r in recs]
            )
        else:
            nodes = np.array([[float(c) for c in r["cartesian"]] for r in recs])
        weights = np.array([float(Fraction(r["weight"])) for r in recs])
        template.nodes = nodes
        template.weights = weights
        template.normalization = Fraction(data["normalization"])
        template.classes = [r.get("class") for r in recs]
        return template
    except MalformedRuleFile:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRuleFile(f"bad rule file: {exc}") from exc


# -- CSV shapes --------------------------------------------------------------------


def write_spectrum_csv(path: str, spec) -> None:
    with open(path, "w") as fh:
        fh.write("k1,k2,k3,re,im\n")
        for k, v in zip(spec.frequencies(), spec.coeffs):
            fh.write(f"{k[0]},{k[1]},{k[2]},{_dec(v.real)},{_dec(v.imag)}\n")


def write_samples_csv(path: str, grid) -> None:
    with open(path, "w") as fh:
        fh.write("j1,j2,re,im\n")
        n = grid.n
        for j1 in range(n):
            for j2 in range(n):
                v = grid.values[j1, j2]
                fh.write(f"{j1},{j2},{_dec(v.real)},{_dec(v.imag)}\n")


def read_complex_csv(path: str, int_cols: int):
    """Rows of ``int_cols`` integer labels followed by re, im."""
    labels, values = [], []
    with open(path) as fh:
        header = fh.readline()
        if not header:
            raise MalformedRuleFile("empty CSV")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != int_cols + 2:
                raise MalformedRuleFile(f"expected {int_cols + 2} columns: {line!r}")
            labels.append(tuple(int(p) for p in parts[:int_cols]))
            values.append(complex(float(parts[-2]), float(parts[-1])))
    return labels, np.array(values)


# -- SVG ---------------------------------------------------------------------------


def _hypocycloid_outline(samples: int = 720):
    from .triangle import steiner_map

    per = samples // 3
    u = np.arange(per) / per
    edges = [
        np.stack([u, np.zeros_like(u), -u], axis=-1),
        np.stack([1 - u, u, -np.ones_like(u)], axis=-1),
        np.stack([np.zeros_like(u), 1 - u, u - 1], axis=-1),
    ]
    return steiner_map(np.concatenate(edges))


def _outline(rule: CubatureRule):
    if rule.domain in ("square-unit",):
        return np.array([[0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5], [0.5, -0.5]])
    if rule.domain == "square-quarter":
        return np.array([[0, 0], [0.5, 0], [0.5, 0.5], [0, 0.5]], dtype=float)
    if rule.domain == "rhombus":
        return np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float)
    if rule.domain == "unit-square":
        return np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    if rule.domain == "hex-t":
        case = LatticeCase("HexHex", 1)
        return np.array(polygon_floats(domain_polygon(case)))
    if rule.domain == "delta-t":
        tri = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, -1.0], [0.0, 1.0, -1.0]])
        return hom_to_cartesian(tri)
    if rule.domain in ("w0-square", "w1-square"):
        return np.array([[1, 1], [-1, 1], [-1, -1], [1, -1]], dtype=float)
    if rule.domain == "w0-ts":
        return np.array([[1, -1], [1, 1], [-1, 1]], dtype=float)
    # hypocycloid region
    return _hypocycloid_outline()


def _plot_points(rule: CubatureRule):
    if rule.domain in _HEX_DOMAINS:
        t = np.stack(
            [rule.nodes[:, 0], rule.nodes[:, 1], -rule.nodes[:, 0] - rule.nodes[:, 1]],
            axis=-1,
        )
        return hom_to_cartesian(t)
    return rule.nodes


_MARKER_FMT = {
    "interior": '<circle cx="{x:.3f}" cy="{y:.3f}" r="{r:.3f}" fill="#1f77b4"/>',
    "edge": '<rect x="{x0:.3f}" y="{y0:.3f}" width="{s:.3f}" height="{s:.3f}" fill="#d62728"/>',
    "vertex": '<path d="M {x:.3f} {yt:.3f} L {xl:.3f} {yb:.3f} L {xr:.3f} {yb:.3f} Z" fill="#2ca02c"/>',
}


def rule_svg(rule: CubatureRule, size: int = 480) -> str:
    """Deterministic SVG: domain outline plus one class-keyed marker per node."""
    outline = _outline(rule)
    pts = _plot_points(rule)
    allpts = np.vstack([outline, pts])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    pad = 0.06 * span

    def sx(x):
        return (x - lo[0] + pad) / (span + 2 * pad) * size

    def sy(y):
        return size - (y - lo[1] + pad) / (span + 2 * pad) * size

    r = max(2.5, size / 160)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
        '<polygon points="'
        + " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in outline)
        + '" fill="none" stroke="black" stroke-width="1.5"/>',
    ]
    classes = rule.classes or ["interior"] * rule.node_count()
    for (x, y), cls in zip(pts, classes):
        px, py = sx(x), sy(y)
        cls = cls or "interior"
        if cls == "interior":
            parts.append(_MARKER_FMT["interior"].format(x=px, y=py, r=r))
        elif cls == "edge":
            parts.append(_MARKER_FMT["edge"].format(x0=px - r, y0=py - r, s=2 * r))
        else:
            parts.append(
                _MARKER_FMT["vertex"].format(
                    x=px, yt=py - 1.3 * r, xl=px - 1.2 * r, xr=px + 1.2 * r, yb=py + r
                )
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def save_svg(rule: CubatureRule, path: str, size: int = 480) -> None:
    with open(path, "w") as fh:
        fh.write(rule_svg(rule, size))
