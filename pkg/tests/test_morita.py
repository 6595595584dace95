import math

import numpy as np
import pytest

from nctorus.crossed import AlgebraContext, cp_distance, cp_involution, cp_multiply
from nctorus.errors import ContextMismatchError, InputError
from nctorus.lattice import add, distance, gamma_flip, involution, is_even, monomial, one, symmetrize
from nctorus.morita import (
    BimoduleVector,
    MoritaCertificate,
    compatibility_check,
    density_generator,
    inner_C,
    inner_D,
    left_action,
    morita_certificate,
    right_action,
)
from nctorus.repr_norm import Window, min_interior_eigenvalue
from nctorus.theta import ThetaMatrix
from oracles import random_elem


def _vec(rng, ctx, terms=5):
    return BimoduleVector(random_elem(rng, ctx.n, terms, 4), ctx)


def test_compatibility(rng):
    ctx = AlgebraContext(ThetaMatrix.random(3, rng), 0.6)
    for _ in range(40):
        U, V, W = (_vec(rng, ctx) for _ in range(3))
        assert compatibility_check(U, V, W) <= 1e-12


def test_inner_products_hermitian_and_even(rng):
    ctx = AlgebraContext(ThetaMatrix.random(2, rng))
    for _ in range(40):
        U, V = _vec(rng, ctx), _vec(rng, ctx)
        d = inner_D(U, V)
        assert is_even(d)
        assert distance(involution(d), inner_D(V, U)) <= 1e-12
        assert cp_distance(cp_involution(inner_C(U, V)), inner_C(V, U)) <= 1e-12


def test_density_generator_exact(rng):
    ctx = AlgebraContext(ThetaMatrix.random(3, rng))
    for _ in range(20):
        p = rng.integers(-6, 7, 3)
        assert density_generator(ctx, p) == add(monomial(p), monomial(-p))


def test_actions_module_laws(rng):
    ctx = AlgebraContext(ThetaMatrix.random(2, rng))
    U = _vec(rng, ctx)
    d1, d2 = symmetrize(random_elem(rng, 2)), symmetrize(random_elem(rng, 2))
    lhs = right_action(right_action(U, d1, 1e-15), d2, 1e-15)
    rhs = right_action(U, ctx.mul(d1, d2), 1e-12)
    assert distance(lhs.elem, rhs.elem) <= 1e-12
    with pytest.raises(InputError):
        right_action(U, monomial((1, 0)))
    # <U, V.d>_D = <U, V>_D d
    V = _vec(rng, ctx)
    assert distance(inner_D(U, right_action(V, d1, 1e-15)), ctx.mul(inner_D(U, V), d1)) <= 1e-12
    # <P.U, V>_C = P <U, V>_C
    P = inner_C(_vec(rng, ctx), _vec(rng, ctx))
    assert cp_distance(inner_C(left_action(P, U), V), cp_multiply(P, inner_C(U, V))) <= 1e-11


def test_inner_D_positive(rng):
    ctx = AlgebraContext(ThetaMatrix.random(2, rng))
    for _ in range(5):
        U = _vec(rng, ctx, 4)
        uu = inner_D(U, U)
        assert min_interior_eigenvalue(uu, ctx.theta, ctx.hbar, Window(2, 9)) >= -1e-10


def test_certificate_at_one_eighth():
    ctx = AlgebraContext(ThetaMatrix.from_upper(2, {(1, 2): 0.125}))
    cert = morita_certificate(ctx, 1, 2)
    assert abs(cert.coefficient - 2) <= 1e-12
    assert cert.residual <= 1e-10 and not cert.degenerate


@pytest.mark.parametrize("t", [0.0, 0.25, 0.5, 1.0, -0.75])
def test_degenerate_values(t):
    ctx = AlgebraContext(ThetaMatrix.from_upper(2, {(1, 2): t}))
    cert = morita_certificate(ctx, 1, 2)
    assert cert.degenerate
    assert cert.residual <= 1e-10


@pytest.mark.parametrize("t", [1 / 3, math.sqrt(2) / 4, 0.1])
def test_certificate_closed_form(t):
    ctx = AlgebraContext(ThetaMatrix.from_upper(2, {(1, 2): t}))
    for j, k in [(1, 2), (2, 1)]:
        cert = morita_certificate(ctx, j, k)
        expected = 1 - np.exp(8j * math.pi * ctx.theta[j - 1, k - 1])
        assert abs(cert.coefficient - expected) <= 1e-12
        assert cert.residual <= 1e-10


def test_certificate_bad_indices(rng):
    ctx = AlgebraContext(ThetaMatrix.random(3, rng))
    for j, k in [(1, 1), (0, 2), (1, 4)]:
        with pytest.raises(InputError):
            morita_certificate(ctx, j, k)


def test_certificate_json():
    ctx = AlgebraContext(ThetaMatrix.from_upper(3, {(1, 3): 0.3}))
    cert = morita_certificate(ctx, 1, 3)
    assert MoritaCertificate.from_json(cert.to_json()) == cert
    with pytest.raises(InputError):
        MoritaCertificate.from_json({"j": 1})


def test_context_mismatch(rng):
    a = AlgebraContext(ThetaMatrix.random(2, rng))
    b = AlgebraContext(ThetaMatrix.random(2, rng))
    with pytest.raises(ContextMismatchError):
        inner_D(BimoduleVector(one(2), a), BimoduleVector(one(2), b))


def test_flip_of_inner_D_is_itself(rng):
    ctx = AlgebraContext(ThetaMatrix.random(2, rng))
    U, V = _vec(rng, ctx), _vec(rng, ctx)
    d = inner_D(U, V)
    assert gamma_flip(d) == d
