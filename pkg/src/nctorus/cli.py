"""Command line front end.

Exit codes: 0 pass, 1 a verified property failed, 2 bad input or resource limit.
Data goes to stdout or ``--out``; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys

import numpy as np

from . import fileio
from .errors import InputError, WindowTooLargeError
from .lattice import LatticeElement, monomial, symmetrize
from .repr_norm import Window, norm_sweep
from .suites import (
    PAPER_LITERAL,
    SCALE_MODES,
    SuiteConfig,
    make_rng,
    random_element,
    run_axiom_suite,
    run_morita_suite,
    semiclassical_sweep,
)
from .theta import ThetaMatrix

log = logging.getLogger("nctorus")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# relative slack for comparing norm bounds that are equal in exact arithmetic
ROUNDING_SLACK = 1e-12


def _load_theta(path) -> ThetaMatrix:
    return ThetaMatrix.from_json(fileio.load_json(path))


def _load_element(path) -> LatticeElement:
    return LatticeElement.from_json(fileio.load_json(path))


def parse_hbar_grid(text: str) -> list[float]:
    """``a:b:logsteps=N``, ``a:b:steps=N`` or a comma-separated list."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, steps = text.split(":")
            kind, _, count = steps.partition("=")
            a, b, num = float(start), float(stop), int(count)
            if num < 1:
                raise ValueError
            if kind == "logsteps":
                if a <= 0 or b <= 0:
                    raise InputError("logarithmic hbar grid needs positive endpoints")
                return [float(x) for x in np.logspace(math.log10(a), math.log10(b), num)]
            if kind == "steps":
                return [float(x) for x in np.linspace(a, b, num)]
            raise ValueError
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"cannot parse hbar grid {text!r}") from None


def parse_radius_range(text: str) -> list[int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise InputError(f"radius range must look like A..B, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise InputError(f"radius range needs 0 <= A <= B, got {text!r}")
    return list(range(lo, hi + 1))


def _parse_point(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"lattice point must be comma-separated integers, got {text!r}") from None


def cmd_axioms(args) -> int:
    theta = _load_theta(args.theta)
    cfg = SuiteConfig(
        seed=args.seed,
        trials=args.trials,
        n=theta.n,
        max_modes=args.max_modes,
        max_terms=args.max_terms,
        tol=args.tol,
    )
    report = run_axiom_suite(cfg, theta, args.hbar)
    fileio.emit(report.dumps(), args.out)
    for law in report.laws:
        if not law.passed:
            log.error("law %s failed: residual %.3e > tol %.3e", law.name, law.max_residual, cfg.tol)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_morita(args) -> int:
    theta = _load_theta(args.theta)
    if args.all_pairs:
        pairs = None
    else:
        if args.j is None or args.k is None:
            raise InputError("give --j and --k, or --all-pairs")
        pairs = [(args.j, args.k)]
    report = run_morita_suite([theta], pairs, tol=args.tol, hbar=args.hbar)
    fileio.emit(fileio.dumps_json(report.to_json()), args.out)
    if report.extra["degenerate"]:
        log.warning("every requested pair is degenerate (4 theta_jk is an integer)")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_semiclassical(args) -> int:
    theta = _load_theta(args.theta)
    f, g = _load_element(args.f), _load_element(args.g)
    hbars = parse_hbar_grid(args.hbar_grid)
    if not hbars:
        raise InputError("empty hbar grid")
    points = semiclassical_sweep(f, g, theta, hbars, scale_mode=args.scale)
    rows = [{"hbar": p.hbar, "residual": p.residual} for p in points]
    fileio.emit(fileio.dumps_csv(rows, ["hbar", "residual"]), args.out)
    tail = sorted(points, key=lambda p: -abs(p.hbar))[-5:]
    ok = all(b.residual <= a.residual for a, b in zip(tail, tail[1:]))
    if not ok:
        log.error("residuals increase over the small-hbar tail of the grid")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_norm(args) -> int:
    theta = _load_theta(args.theta)
    elem = _load_element(args.element)
    radii = parse_radius_range(args.radius_range)
    Window(elem.n, radii[-1]).check_cap()
    rows = norm_sweep(elem, theta, args.hbar, radii, args.tol)
    columns = ["hbar", "radius", "norm_lower", "norm_upper", "iterations"]
    fileio.emit(fileio.dumps_csv(rows, columns), args.out)
    ok = True
    for prev, row in zip(rows, rows[1:]):
        if row["norm_lower"] < prev["norm_lower"] * (1 - ROUNDING_SLACK):
            log.error("lower bound decreased from radius %d to %d", prev["radius"], row["radius"])
            ok = False
    for row in rows:
        if row["norm_lower"] > row["norm_upper"] * (1 + ROUNDING_SLACK):
            log.error("lower bound exceeds the l1 upper bound at radius %d", row["radius"])
            ok = False
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args) -> int:
    if args.kind in ("monomial", "symmetrized"):
        if args.p is None:
            raise InputError(f"--kind {args.kind} needs --p")
        p = _parse_point(args.p)
        if args.n is not None and args.n != len(p):
            raise InputError(f"--p has {len(p)} coordinates but --n is {args.n}")
        elem = monomial(p)
        if args.kind == "symmetrized":
            elem = symmetrize(elem)
    else:
        if args.n is None:
            raise InputError("--kind random needs --n")
        cfg = SuiteConfig(seed=args.seed, n=args.n, max_modes=args.max_modes, max_terms=args.max_terms)
        elem = random_element(cfg, args.parity, make_rng(args.seed))
    fileio.emit(fileio.dumps_json(elem.to_json()), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nct", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("axioms", help="randomized algebra law suite")
    p.add_argument("--theta", required=True)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-modes", type=int, default=10)
    p.add_argument("--max-terms", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("morita", help="Morita invertibility certificates")
    p.add_argument("--theta", required=True)
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--all-pairs", action="store_true")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_morita)

    p = sub.add_parser("semiclassical", help="commutator vs Poisson bracket as hbar -> 0")
    p.add_argument("--theta", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--hbar-grid", default="1e-1:1e-6:logsteps=11")
    p.add_argument("--scale", choices=SCALE_MODES, default=PAPER_LITERAL)
    p.add_argument("--out")
    p.set_defaults(func=cmd_semiclassical)

    p = sub.add_parser("norm", help="operator-norm bounds over a range of window radii")
    p.add_argument("--theta", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--radius-range", default="1..6")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("gen", help="write an element JSON file")
    p.add_argument("--kind", choices=("monomial", "random", "symmetrized"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--p")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-modes", type=int, default=3)
    p.add_argument("--max-terms", type=int, default=5)
    p.add_argument("--parity", choices=("any", "even"), default="any")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="nct: %(levelname)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return args.func(args)
    except (InputError, WindowTooLargeError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
