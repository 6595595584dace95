"""The C-D bimodule E = A_theta between the crossed product and the even subalgebra.

C acts on the left through (P . U) = P(e) U + P(g) U^g, the even algebra D on
the right by multiplication, with inner products

    <U, V>_D    = U* V + (U*)^g V^g
    <U, V>_C(e) = U V*,   <U, V>_C(g) = U (V*)^g.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .crossed import (
    AlgebraContext,
    CrossedElement,
    cp_add,
    cp_distance,
    cp_identity,
    cp_multiply,
    cp_scale,
)
from .errors import ContextMismatchError, InputError
from .lattice import (
    LatticeElement,
    add,
    distance,
    gamma_flip,
    involution,
    is_even,
    monomial,
    one,
    scale,
)
from .theta import unit_phase

#: |1 - exp(8 pi i theta_jk)| below this flags the excluded case 4 theta_jk in Z
DEGENERACY_THRESHOLD = 1e-12


@dataclass(frozen=True)
class BimoduleVector:
    elem: LatticeElement
    ctx: AlgebraContext

    def __post_init__(self):
        if self.elem.n != self.ctx.n:
            raise InputError("bimodule vector dimension differs from its context")


def _same_ctx(*objs) -> AlgebraContext:
    ctx = objs[0].ctx
    for o in objs[1:]:
        if o.ctx != ctx:
            raise ContextMismatchError("bimodule data from different algebra contexts")
    return ctx


def right_action(U: BimoduleVector, d: LatticeElement, tol: float = 0.0) -> BimoduleVector:
    """U . d for d in the even subalgebra."""
    if not is_even(d, tol):
        raise InputError("right action needs an even element (gamma_flip(d) == d)")
    return BimoduleVector(U.ctx.mul(U.elem, d), U.ctx)


def left_action(P: CrossedElement, U: BimoduleVector) -> BimoduleVector:
    ctx = _same_ctx(P, U)
    return BimoduleVector(add(ctx.mul(P.at_e, U.elem), ctx.mul(P.at_g, gamma_flip(U.elem))), ctx)


def inner_D(U: BimoduleVector, V: BimoduleVector) -> LatticeElement:
    ctx = _same_ctx(U, V)
    # U* V + flip(U*) flip(V), using that the flip is multiplicative; summing
    # x(p) + x(-p) in both slots keeps the result exactly even
    x = ctx.mul(involution(U.elem), V.elem)
    return add(x, gamma_flip(x))


def inner_C(U: BimoduleVector, V: BimoduleVector) -> CrossedElement:
    ctx = _same_ctx(U, V)
    vs = involution(V.elem)
    return CrossedElement(ctx.mul(U.elem, vs), ctx.mul(U.elem, gamma_flip(vs)), ctx)


def compatibility_check(U: BimoduleVector, V: BimoduleVector, W: BimoduleVector) -> float:
    """Sup-coefficient gap between <U,V>_C . W and U . <V,W>_D."""
    lhs = left_action(inner_C(U, V), W)
    # <V,W>_D is even by construction; skip the membership test
    rhs = U.ctx.mul(U.elem, inner_D(V, W))
    return distance(lhs.elem, rhs)


@dataclass(frozen=True)
class MoritaCertificate:
    j: int
    k: int
    theta_jk: float
    coefficient: complex
    residual: float
    degenerate: bool

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "k": self.k,
            "theta_jk": self.theta_jk,
            "coefficient_re": self.coefficient.real,
            "coefficient_im": self.coefficient.imag,
            "residual": self.residual,
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_json(cls, data) -> "MoritaCertificate":
        try:
            return cls(
                j=int(data["j"]),
                k=int(data["k"]),
                theta_jk=float(data["theta_jk"]),
                coefficient=complex(data["coefficient_re"], data["coefficient_im"]),
                residual=float(data["residual"]),
                degenerate=bool(data["degenerate"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed certificate row: {exc}") from None


def lambda_element(ctx: AlgebraContext, j: int, k: int) -> CrossedElement:
    """Lambda(e) = U_j^-2,  Lambda(g) = -U_j^-2 U_k^2 U_j^2 (left-to-right products)."""
    n = ctx.n
    ej = np.zeros(n, dtype=np.int64)
    ek = np.zeros(n, dtype=np.int64)
    ej[j - 1] = 1
    ek[k - 1] = 1
    uj_m2 = monomial(-2 * ej)
    word = ctx.mul(ctx.mul(uj_m2, monomial(2 * ek)), monomial(2 * ej))
    return CrossedElement(uj_m2, scale(-1.0, word), ctx)


def certificate_combination(ctx: AlgebraContext, j: int, k: int) -> CrossedElement:
    """<U_j, U_j^-1>_C - <U_k, U_k^-1>_C + <U_k^2, 1>_C."""
    n = ctx.n
    ej = np.zeros(n, dtype=np.int64)
    ek = np.zeros(n, dtype=np.int64)
    ej[j - 1] = 1
    ek[k - 1] = 1

    def vec(p):
        return BimoduleVector(monomial(p), ctx)

    first = inner_C(vec(ej), vec(-ej))
    second = inner_C(vec(ek), vec(-ek))
    third = inner_C(vec(2 * ek), BimoduleVector(one(n), ctx))
    return cp_add(cp_add(first, cp_scale(-1.0, second)), third)


def morita_certificate(ctx: AlgebraContext, j: int, k: int) -> MoritaCertificate:
    """Check Lambda . (combination) == (1 - exp(8 pi i hbar theta_jk)) Phi_0.

    ``j`` and ``k`` are 1-based axis indices.
    """
    n = ctx.n
    for idx in (j, k):
        if not isinstance(idx, (int, np.integer)) or not 1 <= idx <= n:
            raise InputError(f"axis index {idx!r} outside 1..{n}")
    if j == k:
        raise InputError("certificate needs two distinct axes j != k")
    theta_jk = ctx.theta[j - 1, k - 1]
    coefficient = 1.0 - unit_phase(4.0 * ctx.hbar * theta_jk)
    product = cp_multiply(lambda_element(ctx, j, k), certificate_combination(ctx, j, k))
    target = cp_scale(coefficient, cp_identity(ctx))
    residual = cp_distance(product, target)
    return MoritaCertificate(
        j=int(j),
        k=int(k),
        theta_jk=theta_jk,
        coefficient=complex(coefficient),
        residual=residual,
        degenerate=bool(abs(coefficient) < DEGENERACY_THRESHOLD),
    )


def density_generator(ctx: AlgebraContext, p) -> LatticeElement:
    """<1, U_-p>_D, which equals U_p + U_-p."""
    n = ctx.n
    p = np.asarray(p, dtype=np.int64)
    return inner_D(BimoduleVector(one(n), ctx), BimoduleVector(monomial(-p), ctx))
