"""Randomized law suites, the semiclassical sweep, and Morita certificate batches.

Every suite is deterministic given its seed: all randomness flows from one
``numpy.random.Generator`` over PCG64.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .crossed import AlgebraContext, CrossedElement, cp_distance, cp_involution, cp_multiply
from .errors import InputError
from .lattice import (
    LatticeElement,
    add,
    commutator_quotient,
    deformed_product,
    distance,
    gamma_flip,
    involution,
    poisson_bracket,
    scale,
    sup_coefficient,
    symmetrize,
)
from .morita import morita_certificate
from .repr_norm import Window, norm_lower
from .theta import ThetaMatrix, check_hbar, sigma

PAPER_LITERAL = "paper-literal"
RESCALED = "rescaled"
SCALE_MODES = (PAPER_LITERAL, RESCALED)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 200
    n: int = 2
    max_modes: int = 10
    max_terms: int = 10
    tol: float = 1e-10

    def __post_init__(self):
        if self.seed < 0:
            raise InputError("seed must be non-negative")
        if self.trials < 1 or self.n < 1 or self.max_terms < 1 or self.max_modes < 0:
            raise InputError("trials, n and max_terms must be positive, max_modes non-negative")
        if self.tol < 0:
            raise InputError("tol must be non-negative")


@dataclass
class LawResult:
    name: str
    max_residual: float
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "max_residual": self.max_residual, "pass": self.passed}


@dataclass
class Report:
    suite: str
    seed: int | None
    laws: list[LawResult]
    passed: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "laws": [law.to_json() for law in self.laws],
            "pass": self.passed,
        }
        out.update(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data) -> "Report":
        try:
            laws = [LawResult(d["name"], float(d["max_residual"]), bool(d["pass"])) for d in data["laws"]]
            extra = {k: v for k, v in data.items() if k not in ("suite", "seed", "laws", "pass")}
            return cls(data["suite"], data["seed"], laws, bool(data["pass"]), extra)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed report: {exc}") from None


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_point(rng: np.random.Generator, n: int, bound: int) -> np.ndarray:
    return rng.integers(-bound, bound + 1, size=n)


def random_element(cfg: SuiteConfig, parity: str = "any", rng: np.random.Generator | None = None) -> LatticeElement:
    """Up to ``max_terms`` modes uniform in the box, coefficients uniform in the unit disc."""
    if parity not in ("any", "even"):
        raise InputError(f"parity must be 'any' or 'even', got {parity!r}")
    rng = make_rng(cfg.seed) if rng is None else rng
    k = int(rng.integers(1, cfg.max_terms + 1))
    modes = rng.integers(-cfg.max_modes, cfg.max_modes + 1, size=(k, cfg.n))
    radius = np.sqrt(rng.uniform(0.0, 1.0, size=k))
    angle = rng.uniform(0.0, 2 * math.pi, size=k)
    elem = LatticeElement(cfg.n, modes, radius * np.exp(1j * angle))
    return symmetrize(elem) if parity == "even" else elem


def random_crossed(cfg: SuiteConfig, ctx: AlgebraContext, rng: np.random.Generator) -> CrossedElement:
    return CrossedElement(random_element(cfg, rng=rng), random_element(cfg, rng=rng), ctx)


def _law(name: str, residuals: Iterable[float], tol: float) -> LawResult:
    worst = max(residuals, default=0.0)
    return LawResult(name, float(worst), bool(worst <= tol))


def _rel(residual: float, *elems: LatticeElement) -> float:
    size = max((sup_coefficient(e) for e in elems), default=0.0)
    return residual / size if size > 0 else residual


def run_axiom_suite(cfg: SuiteConfig, theta: ThetaMatrix, hbar: float = 1.0) -> Report:
    """Algebraic laws of the deformed product, involution, flip, bracket and crossed product.

    Residuals are absolute sup-coefficient gaps, except the bracket laws whose
    terms carry factors (4 pi^2 gamma)^2; those are reported relative to the
    largest coefficient involved.
    """
    if theta.n != cfg.n:
        raise InputError(f"theta dimension {theta.n} differs from cfg.n = {cfg.n}")
    hbar = check_hbar(hbar)
    rng = make_rng(cfg.seed)
    T = cfg.trials

    def prod(a, b):
        return deformed_product(a, b, theta, hbar)

    def elem(parity="any"):
        return random_element(cfg, parity, rng)

    laws = []

    res = []
    for _ in range(T):
        p, q, r = (random_point(rng, cfg.n, cfg.max_modes) for _ in range(3))
        lhs = sigma(theta, hbar, p, q) * sigma(theta, hbar, p + q, r)
        rhs = sigma(theta, hbar, p, q + r) * sigma(theta, hbar, q, r)
        res.append(abs(lhs - rhs))
    laws.append(_law("sigma_cocycle", res, cfg.tol))

    res = []
    for _ in range(T):
        a, b, c = elem(), elem(), elem()
        res.append(distance(prod(prod(a, b), c), prod(a, prod(b, c))))
    laws.append(_law("associativity", res, cfg.tol))

    res_lin, res_inv, res_anti = [], [], []
    for _ in range(T):
        a, b = elem(), elem()
        z = complex(*rng.uniform(-1, 1, size=2))
        res_lin.append(distance(involution(add(scale(z, a), b)), add(scale(z.conjugate(), involution(a)), involution(b))))
        res_inv.append(distance(involution(involution(a)), a))
        res_anti.append(distance(involution(prod(a, b)), prod(involution(b), involution(a))))
    laws.append(_law("involution_conjugate_linear", res_lin, cfg.tol))
    laws.append(_law("involution_involutive", res_inv, cfg.tol))
    laws.append(_law("involution_antimultiplicative", res_anti, cfg.tol))

    res_eq, res_even = [], []
    for _ in range(T):
        a, b = elem(), elem()
        res_eq.append(distance(gamma_flip(prod(a, b)), prod(gamma_flip(a), gamma_flip(b))))
        ea, eb = elem("even"), elem("even")
        ab = prod(ea, eb)
        res_even.append(distance(ab, gamma_flip(ab)))
    laws.append(_law("z2_equivariance", res_eq, cfg.tol))
    laws.append(_law("even_subalgebra_closure", res_even, cfg.tol))

    res_anti, res_jac, res_leib = [], [], []
    for _ in range(T):
        a, b, c = elem(), elem(), elem()
        ab = poisson_bracket(a, b, theta)
        res_anti.append(_rel(distance(ab, scale(-1.0, poisson_bracket(b, a, theta))), ab))
        t1 = poisson_bracket(a, poisson_bracket(b, c, theta), theta)
        t2 = poisson_bracket(b, poisson_bracket(c, a, theta), theta)
        t3 = poisson_bracket(c, ab, theta)
        res_jac.append(_rel(sup_coefficient(add(add(t1, t2), t3)), t1, t2, t3))
        lhs = poisson_bracket(a, deformed_product(b, c, theta, 0.0), theta)
        r1 = deformed_product(ab, c, theta, 0.0)
        r2 = deformed_product(b, poisson_bracket(a, c, theta), theta, 0.0)
        res_leib.append(_rel(distance(lhs, add(r1, r2)), lhs, r1, r2))
    laws.append(_law("poisson_antisymmetry", res_anti, cfg.tol))
    laws.append(_law("poisson_jacobi", res_jac, cfg.tol))
    laws.append(_law("poisson_leibniz_classical", res_leib, cfg.tol))

    ctx = AlgebraContext(theta, hbar)
    small = SuiteConfig(cfg.seed, cfg.trials, cfg.n, cfg.max_modes, min(cfg.max_terms, 5), cfg.tol)
    res_assoc, res_star = [], []
    for _ in range(T):
        L, P, Q = (random_crossed(small, ctx, rng) for _ in range(3))
        res_assoc.append(cp_distance(cp_multiply(cp_multiply(L, P), Q), cp_multiply(L, cp_multiply(P, Q))))
        res_star.append(cp_distance(cp_involution(cp_multiply(L, P)), cp_multiply(cp_involution(P), cp_involution(L))))
    laws.append(_law("crossed_associativity", res_assoc, cfg.tol))
    laws.append(_law("crossed_involution_antimultiplicative", res_star, cfg.tol))

    return Report("axioms", cfg.seed, laws, all(l.passed for l in laws))


# semiclassical limit ---------------------------------------------------------


@dataclass(frozen=True)
class SemiclassicalPoint:
    hbar: float
    residual: float
    scale: float


def _mode_params(scale_mode: str) -> tuple[float, float]:
    """(factor on hbar inside the cocycle, bracket scale s)."""
    if scale_mode == PAPER_LITERAL:
        return 1.0, 1.0 / (2 * math.pi)
    if scale_mode == RESCALED:
        return 2 * math.pi, 1.0
    raise InputError(f"scale mode must be one of {SCALE_MODES}, got {scale_mode!r}")


def semiclassical_difference(
    f: LatticeElement, g: LatticeElement, theta: ThetaMatrix, hbar: float, scale_mode: str = PAPER_LITERAL
) -> LatticeElement:
    """(f*g - g*f)/(i hbar) - s {f, g} in the chosen normalization.

    Rescaled mode runs the product with cocycle exponent -2 pi^2 i hbar gamma,
    i.e. with theta replaced by 2 pi theta at the same hbar.
    """
    factor, s = _mode_params(scale_mode)
    prod_theta = theta if factor == 1.0 else theta.scaled(factor)
    cq = commutator_quotient(f, g, prod_theta, hbar)
    return add(cq, scale(-s, poisson_bracket(f, g, theta)))


def semiclassical_window(f: LatticeElement, g: LatticeElement) -> Window:
    return Window(f.n, f.max_mode() + g.max_mode() + 2)


def semiclassical_sweep(
    f: LatticeElement,
    g: LatticeElement,
    theta: ThetaMatrix,
    hbars: Sequence[float],
    window: Window | None = None,
    scale_mode: str = PAPER_LITERAL,
    tol: float = 1e-10,
) -> list[SemiclassicalPoint]:
    hbars = [check_hbar(h) for h in hbars]
    if any(h == 0 for h in hbars):
        raise InputError("hbar grid must not contain 0")
    factor, s = _mode_params(scale_mode)
    prod_theta = theta if factor == 1.0 else theta.scaled(factor)
    window = semiclassical_window(f, g) if window is None else window
    points = []
    for h in hbars:
        diff = semiclassical_difference(f, g, theta, h, scale_mode)
        points.append(SemiclassicalPoint(h, norm_lower(diff, prod_theta, h, window, tol), s))
    return points


def monomial_residual(gamma_pq: float, hbar: float, scale_mode: str = PAPER_LITERAL) -> float:
    """Closed form |4 pi^2 s gamma - 2 sin(pi hbar' gamma) / hbar| for a monomial pair."""
    factor, s = _mode_params(scale_mode)
    return abs(4 * math.pi**2 * s * gamma_pq - 2 * math.sin(math.pi * factor * hbar * gamma_pq) / hbar)


def loglog_slope(hbars: Sequence[float], residuals: Sequence[float]) -> float:
    x = np.log(np.abs(np.asarray(hbars, dtype=float)))
    y = np.log(np.asarray(residuals, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


# Morita certificates ---------------------------------------------------------


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


def run_morita_suite(
    theta_list: Sequence[ThetaMatrix],
    pairs: Sequence[tuple[int, int]] | None = None,
    tol: float = 1e-10,
    hbar: float = 1.0,
) -> Report:
    """Certificate per (theta, pair).

    Passes iff every non-degenerate residual is within ``tol`` and every
    degeneracy flag matches whether 4 hbar theta_jk is an integer.
    """
    laws, rows = [], []
    for i, theta in enumerate(theta_list):
        ctx = AlgebraContext(theta, hbar)
        for j, k in pairs if pairs is not None else all_pairs(theta.n):
            cert = morita_certificate(ctx, j, k)
            rows.append({"theta_index": i, **cert.to_json()})
            expected_degenerate = float(4.0 * ctx.hbar * cert.theta_jk).is_integer()
            ok_flag = cert.degenerate == expected_degenerate
            ok_residual = cert.degenerate or cert.residual <= tol
            laws.append(LawResult(f"certificate[{i}]({j},{k})", cert.residual, bool(ok_flag and ok_residual)))
    report = Report("morita", None, laws, all(l.passed for l in laws))
    report.extra["certificates"] = rows
    report.extra["degenerate"] = bool(rows) and all(r["degenerate"] for r in rows)
    return report
