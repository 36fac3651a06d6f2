"""Command line surface: rule / verify / interp / fft / plot / tiling-check.

Failures exit with code 2 and a one-line message on stderr; verification
commands exit 1 when the checked property fails.  LATTIKA_THREADS caps
internal parallelism.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .cubature import UnknownTag, UnsupportedN, build_rule, verify_exactness
from .lattice import CASE_TAGS, LatticeCase, verify_tiling
from .ruleio import (
    MalformedRuleFile,
    load_rule,
    read_complex_csv,
    save_rule,
    save_svg,
    write_samples_csv,
    write_spectrum_csv,
)


def _fail(message: str) -> "SystemExit":
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(2)


def cmd_rule(args) -> int:
    try:
        rule = build_rule(args.tag, args.n)
    except (UnknownTag, UnsupportedN) as exc:
        raise _fail(str(exc))
    save_rule(rule, args.out)
    print(f"rule {rule.tag} n={rule.n} nodes={rule.node_count()} -> {args.out}")
    return 0


def cmd_verify(args) -> int:
    try:
        rule = load_rule(args.rule)
    except MalformedRuleFile as exc:
        raise _fail(f"malformed rule file: {exc}")
    report = verify_exactness(rule)
    ok = report.max_error < args.tol
    print(
        f"{rule.tag} n={rule.n} space='{report.tested_space}' "
        f"max_error={report.max_error:.3e} worst={report.worst_function} "
        f"tol={args.tol:g} {'PASS' if ok else 'FAIL'}"
    )
    return 0 if ok else 1


def cmd_fft(args) -> int:
    from .hexfft import HexSampleGrid, HexSpectrum, forward, frequency_order, inverse

    n = args.n
    try:
        if args.inverse:
            labels, values = read_complex_csv(args.input, 3)
            if len(values) != n * n:
                raise MalformedRuleFile(f"need {n * n} rows, got {len(values)}")
            order = {k: i for i, k in enumerate(frequency_order(n))}
            coeffs = np.zeros(n * n, dtype=complex)
            for lab, v in zip(labels, values):
                if lab not in order:
                    raise MalformedRuleFile(f"{lab} is not a frequency of the n={n} grid")
                coeffs[order[lab]] = v
            grid = inverse(HexSpectrum(n, coeffs))
            write_samples_csv(args.out, grid)
        else:
            labels, values = read_complex_csv(args.input, 2)
            if len(values) != n * n:
                raise MalformedRuleFile(f"need {n * n} rows, got {len(values)}")
            vals = np.zeros((n, n), dtype=complex)
            for (j1, j2), v in zip(labels, values):
                if not (0 <= j1 < n and 0 <= j2 < n):
                    raise MalformedRuleFile(f"sample index ({j1},{j2}) outside [0,{n})^2")
                vals[j1, j2] = v
            write_spectrum_csv(args.out, forward(HexSampleGrid(n, vals)))
    except MalformedRuleFile as exc:
        raise _fail(str(exc))
    print(f"fft n={n} {'inverse' if args.inverse else 'forward'} -> {args.out}")
    return 0


def cmd_interp(args) -> int:
    from .indexsets import build_index_set, upsilon
    from .interpolation import interp_generic, interp_triangle

    try:
        if args.flavor == "generic":
            case = LatticeCase(args.case, args.n)
            cols = 3 if case.is_hex else 2
            labels, values = read_complex_csv(args.samples, cols)
            order = {m.coords: i for i, m in enumerate(build_index_set(case, "open"))}
            if set(labels) != set(order):
                raise MalformedRuleFile(
                    f"samples must cover the {len(order)} nodes of {args.case} n={args.n}"
                )
            samples = np.zeros(len(order), dtype=complex)
            for lab, v in zip(labels, values):
                samples[order[lab]] = v
            poly = interp_generic(case, samples)
            pts, _ = _read_points(args.points, 3 if case.is_hex else 2)
            out = poly(pts)
        else:
            flavor = {"triangle-cosine": "cosine", "triangle-sine": "sine"}[args.flavor]
            nodes = upsilon(args.n, interior=(flavor == "sine"))
            labels, values = read_complex_csv(args.samples, 3)
            order = {k: i for i, k in enumerate(nodes)}
            if set(labels) != set(order):
                raise MalformedRuleFile(
                    f"samples must cover the {len(order)} nodes of Upsilon_{args.n}"
                    f"{' interior' if flavor == 'sine' else ''}"
                )
            samples = np.zeros(len(order), dtype=complex)
            for lab, v in zip(labels, values):
                samples[order[lab]] = v
            poly = interp_triangle(flavor, args.n, samples)
            pts, _ = _read_points(args.points, 3)
            out = poly(pts)
    except (MalformedRuleFile, KeyError, ValueError) as exc:
        raise _fail(str(exc))
    with open(args.out, "w") as fh:
        fh.write("re,im\n")
        for v in np.atleast_1d(out):
            fh.write(f"{v.real:.17g},{v.imag:.17g}\n")
    print(f"interp {args.flavor} n={args.n} at {len(np.atleast_1d(out))} points -> {args.out}")
    return 0


def _read_points(path: str, cols: int):
    pts = []
    with open(path) as fh:
        fh.readline()
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = [float(p) for p in line.split(",")]
            if len(parts) != cols:
                raise MalformedRuleFile(f"evaluation points need {cols} columns")
            pts.append(parts)
    return np.array(pts), cols


def cmd_plot(args) -> int:
    try:
        rule = load_rule(args.rule)
    except MalformedRuleFile as exc:
        raise _fail(f"malformed rule file: {exc}")
    save_svg(rule, args.svg, size=args.size)
    print(f"plot {rule.tag} n={rule.n} -> {args.svg}")
    return 0


def cmd_tiling_check(args) -> int:
    try:
        case = LatticeCase(args.case, args.n)
    except ValueError as exc:
        raise _fail(str(exc))
    report = verify_tiling(case, sample_count=args.samples, seed=args.seed)
    print(
        f"tiling {args.case} n={args.n} samples={args.samples} "
        f"max_cover_deviation={report.max_cover_deviation}"
    )
    return 0 if report.max_cover_deviation == 0 else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattika",
        description="Lattice cubature rules, hexagonal FFT, and triangle interpolation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rule", help="build a cubature rule and write it as JSON")
    p.add_argument("--tag", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("verify", help="verify a rule file against the integration oracle")
    p.add_argument("--rule", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fft", help="hexagonal DFT of CSV samples (j1,j2,re,im rows)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fft)

    p = sub.add_parser("interp", help="interpolate CSV samples and evaluate at points")
    p.add_argument("--flavor", choices=("generic", "triangle-cosine", "triangle-sine"),
                   default="generic")
    p.add_argument("--case", choices=CASE_TAGS, default="HexHexTranspose")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("plot", help="render a rule file as an SVG node plot")
    p.add_argument("--rule", required=True)
    p.add_argument("--svg", required=True)
    p.add_argument("--size", type=int, default=480)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("tiling-check", help="verify the half-open fundamental-domain tiling")
    p.add_argument("--case", choices=CASE_TAGS, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tiling_check)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
