import cmath
import json
import math

import numpy as np
import pytest

from nctorus.errors import DimensionError, InputError
from nctorus.theta import ThetaMatrix, gamma, sigma, unit_phase


def test_rejects_non_skew():
    with pytest.raises(InputError):
        ThetaMatrix([[0, 1], [1, 0]])
    with pytest.raises(InputError):
        ThetaMatrix([[0.1, 0], [0, -0.1]])
    with pytest.raises(InputError):
        ThetaMatrix(np.zeros((2, 3)))


def test_gamma_examples(theta_half):
    assert gamma(theta_half, (1, 0), (0, 1)) == 0.5
    assert gamma(theta_half, (3, -2), (3, -2)) == 0.0


def test_gamma_antisymmetric_and_bilinear(rng):
    for n in (2, 3, 4):
        th = ThetaMatrix.random(n, rng)
        for _ in range(100):
            p, q, p2 = (rng.integers(-20, 21, n) for _ in range(3))
            assert gamma(th, p, q) == pytest.approx(-gamma(th, q, p), abs=1e-12)
            assert gamma(th, p + p2, q) == pytest.approx(gamma(th, p, q) + gamma(th, p2, q), abs=1e-10)


def test_dimension_mismatch(theta_half):
    with pytest.raises(DimensionError):
        gamma(theta_half, (1, 0, 0), (0, 1))
    with pytest.raises(DimensionError):
        sigma(theta_half, 1.0, (1,), (0, 1))


def test_sigma_examples(theta_half):
    assert sigma(theta_half, 0.0, (4, 7), (-3, 2)) == 1
    assert abs(sigma(theta_half, 1.0, (1, 0), (0, 1)) - (-1j)) < 1e-15


def test_sigma_unit_modulus_and_conjugate(rng):
    th = ThetaMatrix.random(3, rng)
    for _ in range(100):
        p, q = rng.integers(-20, 21, 3), rng.integers(-20, 21, 3)
        h = rng.uniform(-3, 3)
        s = sigma(th, h, p, q)
        assert abs(abs(s) - 1) < 1e-15
        assert abs(s.conjugate() - sigma(th, h, q, p)) < 1e-12


def test_sigma_normalization(rng):
    th = ThetaMatrix.random(2, rng)
    for _ in range(20):
        p = rng.integers(-20, 21, 2)
        assert abs(sigma(th, 1.3, p, -p) - 1) < 1e-15
        assert sigma(th, 1.3, p, (0, 0)) == 1
        assert sigma(th, 1.3, (0, 0), p) == 1


def test_cocycle_identity(rng):
    for n in (2, 3, 4):
        th = ThetaMatrix.random(n, rng)
        for _ in range(1000):
            p, q, r = (rng.integers(-20, 21, n) for _ in range(3))
            lhs = sigma(th, 1.0, p, q) * sigma(th, 1.0, p + q, r)
            rhs = sigma(th, 1.0, p, q + r) * sigma(th, 1.0, q, r)
            assert abs(lhs - rhs) <= 1e-12


def test_unit_phase_large_argument():
    # reduction keeps the modulus exact for arguments far beyond 2 pi
    z = unit_phase(1e12 + 0.25)
    assert abs(abs(z) - 1) < 1e-15
    assert abs(z - 1j) < 1e-3
    assert abs(unit_phase(0.125) - cmath.exp(1j * math.pi / 4)) < 1e-15


def test_json_round_trip(tmp_path, rng):
    th = ThetaMatrix.random(4, rng)
    path = tmp_path / "theta.json"
    path.write_text(json.dumps(th.to_json()))
    assert ThetaMatrix.load(path) == th


@pytest.mark.parametrize(
    "payload",
    [
        {"n": 2},
        {"n": 2, "entries": [[0, 1]]},
        {"n": 2, "entries": [[0, 1], [1, 0]]},
        {"n": 0, "entries": []},
        {"n": 2, "entries": [[0, "x"], [0, 0]]},
    ],
)
def test_json_validation(payload):
    with pytest.raises(InputError):
        ThetaMatrix.from_json(payload)
