import math

import numpy as np
import pytest

from nctorus.errors import ConvergenceError, InputError, WindowTooLargeError
from nctorus.lattice import LatticeElement, deformed_product, involution, monomial
from nctorus.repr_norm import (
    Window,
    build_rep,
    evaluate_on_grid,
    min_interior_eigenvalue,
    norm_lower,
    norm_sweep,
    norm_upper_l1,
    power_norm,
    sup_norm_grid,
)
from nctorus.theta import ThetaMatrix, sigma
from oracles import random_elem


def test_window_indexing():
    w = Window(2, 2)
    pts = w.points()
    assert w.size == 25 and pts.shape == (25, 2)
    assert tuple(pts[0]) == (-2, -2) and tuple(pts[1]) == (-2, -1)
    for i, p in enumerate(pts):
        assert w.index(p) == i
    assert np.array_equal(w.indices(pts), np.arange(25))
    with pytest.raises(InputError):
        w.index((3, 0))


def test_build_rep_entries(rng):
    th = ThetaMatrix.random(2, rng)
    a = random_elem(rng, 2, 5, 2)
    w = Window(2, 3)
    M = build_rep(a, th, 0.7, w).dense()
    pts = w.points()
    ref = np.zeros_like(M)
    for i, p in enumerate(pts):
        for j, r in enumerate(pts):
            s = tuple(np.subtract(p, r))
            c = a.coefficient(s)
            if c:
                ref[i, j] = c * sigma(th, 0.7, s, r)
    assert np.allclose(M, ref, atol=1e-14)


def test_build_rep_is_left_multiplication(rng):
    """Columns of the interior match products with basis vectors."""
    th = ThetaMatrix.random(2, rng)
    a = random_elem(rng, 2, 4, 2)
    w = Window(2, 4)
    M = build_rep(a, th, 1.3, w).dense()
    for r in [(0, 0), (1, -2), (-2, 2)]:
        col = M[:, w.index(r)]
        prod = deformed_product(a, monomial(r), th, 1.3)
        for p, c in prod.terms.items():
            assert abs(col[w.index(p)] - c) < 1e-14


def test_rep_of_involution_is_adjoint(rng):
    th = ThetaMatrix.random(3, rng)
    a = random_elem(rng, 3, 5, 2)
    w = Window(3, 2)
    M = build_rep(a, th, 0.9, w).dense()
    Ms = build_rep(involution(a), th, 0.9, w).dense()
    assert np.allclose(Ms, M.conj().T, atol=1e-14)


def test_power_norm_against_svd(rng):
    th = ThetaMatrix.random(2, rng)
    for _ in range(10):
        a = random_elem(rng, 2, 6, 3)
        M = build_rep(a, th, 1.0, Window(2, 6)).matrix
        est = power_norm(M, tol=1e-12, max_iter=100_000, raise_on_cap=False)
        exact = np.linalg.svd(M.toarray(), compute_uv=False)[0]
        assert est.value <= exact * (1 + 1e-14)
        assert est.value >= exact * (1 - 1e-4)


def test_power_norm_cap_raises():
    M = np.diag([1.0, 0.999999])
    with pytest.raises(ConvergenceError) as info:
        power_norm(M, tol=1e-15, max_iter=3)
    assert info.value.iterations == 3 and 0 < info.value.estimate <= 1
    assert power_norm(M, tol=1e-15, max_iter=3, raise_on_cap=False).iterations == 3


@pytest.mark.parametrize("p", [(0, 0), (2, -1), (0, 3)])
def test_monomial_norm_is_one(rng, p):
    th = ThetaMatrix.random(2, rng)
    w = Window(2, max(abs(x) for x in p) + 1)
    assert abs(norm_lower(monomial(p), th, 1.0, w) - 1) <= 1e-8


def test_sandwich_and_monotone(rng):
    th = ThetaMatrix.random(2, rng)
    for _ in range(10):
        a = random_elem(rng, 2, 5, 3)
        rows = norm_sweep(a, th, 1.0, range(1, 7))
        lows = [r["norm_lower"] for r in rows]
        assert all(y >= x for x, y in zip(lows, lows[1:]))
        assert all(r["norm_lower"] <= r["norm_upper"] * (1 + 1e-12) for r in rows)
        assert rows[0]["norm_upper"] == pytest.approx(norm_upper_l1(a))


def test_classical_norm_converges_with_radius(rng):
    """At hbar=0 the truncation error decays with the radius; at R=40 it is well inside 5%."""
    th = ThetaMatrix.zero(2)
    for _ in range(5):
        modes = rng.choice(49, 5, replace=False)
        modes = np.stack([modes // 7 - 3, modes % 7 - 3], axis=1)
        coefs = np.sqrt(rng.uniform(0, 1, 5)) * np.exp(2j * np.pi * rng.uniform(0, 1, 5))
        a = LatticeElement(2, modes, coefs)
        rep = build_rep(a, th, 0.0, Window(2, 40)).matrix
        est = power_norm(rep, 1e-12, 100_000, raise_on_cap=False).value
        sup = sup_norm_grid(a, 64)
        assert abs(est - sup) <= 0.05 * sup


def test_grid_evaluation():
    a = LatticeElement(2, [[1, 0], [0, -1]], [1, 2j])
    vals = evaluate_on_grid(a, 4)
    x, y = 1 / 4, 3 / 4
    expected = np.exp(2j * math.pi * x) + 2j * np.exp(-2j * math.pi * y)
    assert vals[1, 3] == pytest.approx(expected)
    assert sup_norm_grid(monomial((3, 1)), 8) == pytest.approx(1.0)


def test_positive_element_interior_block(rng):
    th = ThetaMatrix.random(2, rng)
    for _ in range(5):
        a = random_elem(rng, 2, 4, 2)
        aa = deformed_product(involution(a), a, th, 1.0)
        assert min_interior_eigenvalue(aa, th, 1.0, Window(2, 7)) >= -1e-10


def test_window_cap(monkeypatch, rng):
    monkeypatch.setenv("NCT_WINDOW_CAP", "100")
    with pytest.raises(WindowTooLargeError):
        build_rep(monomial((0, 0)), ThetaMatrix.zero(2), 1.0, Window(2, 5))
    build_rep(monomial((0, 0)), ThetaMatrix.zero(2), 1.0, Window(2, 4))
    monkeypatch.setenv("NCT_WINDOW_CAP", "many")
    with pytest.raises(InputError):
        Window(2, 1).check_cap()
