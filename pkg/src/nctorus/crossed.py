"""The crossed product C(Z2, A_theta): pairs (value at e, value at gamma)."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatchError, InputError
from .lattice import (
    LatticeElement,
    add,
    deformed_product,
    distance,
    gamma_flip,
    involution,
    one,
    scale,
)
from .theta import ThetaMatrix, check_hbar


@dataclass(frozen=True)
class AlgebraContext:
    """Fixes (theta, hbar); hbar defaults to 1, i.e. A_theta itself."""

    theta: ThetaMatrix
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "hbar", check_hbar(self.hbar))

    @property
    def n(self) -> int:
        return self.theta.n

    def mul(self, a: LatticeElement, b: LatticeElement) -> LatticeElement:
        return deformed_product(a, b, self.theta, self.hbar)


@dataclass(frozen=True)
class CrossedElement:
    at_e: LatticeElement
    at_g: LatticeElement
    ctx: AlgebraContext

    def __post_init__(self):
        if self.at_e.n != self.at_g.n or self.at_e.n != self.ctx.n:
            raise InputError("crossed element components must share the context dimension")

    def to_json(self) -> dict:
        return {"at_e": self.at_e.to_json(), "at_g": self.at_g.to_json()}

    @classmethod
    def from_json(cls, data, ctx: AlgebraContext) -> "CrossedElement":
        if not isinstance(data, dict) or "at_e" not in data or "at_g" not in data:
            raise InputError('crossed element JSON needs "at_e" and "at_g"')
        return cls(LatticeElement.from_json(data["at_e"]), LatticeElement.from_json(data["at_g"]), ctx)


def _same_ctx(*elems):
    ctx = elems[0].ctx
    for x in elems[1:]:
        if x.ctx != ctx:
            raise ContextMismatchError("elements belong to different algebra contexts")
    return ctx


def cp_multiply(L: CrossedElement, P: CrossedElement) -> CrossedElement:
    """(LP)(e) = L(e)P(e) + L(g)P(g)^g,  (LP)(g) = L(e)P(g) + L(g)P(e)^g."""
    ctx = _same_ctx(L, P)
    at_e = add(ctx.mul(L.at_e, P.at_e), ctx.mul(L.at_g, gamma_flip(P.at_g)))
    at_g = add(ctx.mul(L.at_e, P.at_g), ctx.mul(L.at_g, gamma_flip(P.at_e)))
    return CrossedElement(at_e, at_g, ctx)


def cp_involution(L: CrossedElement) -> CrossedElement:
    return CrossedElement(involution(L.at_e), gamma_flip(involution(L.at_g)), L.ctx)


def cp_identity(ctx: AlgebraContext) -> CrossedElement:
    return CrossedElement(one(ctx.n), LatticeElement.zero(ctx.n), ctx)


def cp_zero(ctx: AlgebraContext) -> CrossedElement:
    z = LatticeElement.zero(ctx.n)
    return CrossedElement(z, z, ctx)


def cp_flip(ctx: AlgebraContext) -> CrossedElement:
    """The group element gamma itself: (0, 1)."""
    return CrossedElement(LatticeElement.zero(ctx.n), one(ctx.n), ctx)


def cp_add(L: CrossedElement, P: CrossedElement) -> CrossedElement:
    ctx = _same_ctx(L, P)
    return CrossedElement(add(L.at_e, P.at_e), add(L.at_g, P.at_g), ctx)


def cp_scale(c: complex, L: CrossedElement) -> CrossedElement:
    return CrossedElement(scale(c, L.at_e), scale(c, L.at_g), L.ctx)


def cp_distance(L: CrossedElement, P: CrossedElement) -> float:
    _same_ctx(L, P)
    return max(distance(L.at_e, P.at_e), distance(L.at_g, P.at_g))
