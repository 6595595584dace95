"""Finitely supported coefficient maps on Z^n: the dense trigonometric-polynomial model.

An element is a finite sum of c_p U_p with U_p = exp(2 pi i p.x).  Every
operation returns a fresh, canonical element: modes sorted lexicographically,
no duplicates, and no coefficient smaller than ``PRUNE_RTOL`` times the
largest one.
"""
from __future__ import annotations

import json
import math
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _backend
from .errors import DimensionError, InputError
from .theta import ThetaMatrix, check_hbar

#: relative pruning threshold applied after every arithmetic operation
PRUNE_RTOL = 1e-15


def _freeze(arr):
    arr.setflags(write=False)
    return arr


def _prune(modes, coefs, rtol=None):
    rtol = PRUNE_RTOL if rtol is None else rtol
    mag = np.abs(coefs)
    if mag.size == 0:
        return modes, coefs
    keep = (mag > 0) & (mag >= rtol * mag.max())
    if keep.all():
        return modes, coefs
    return modes[keep], coefs[keep]


class LatticeElement:
    """Immutable finite map from Z^n to complex coefficients."""

    __slots__ = ("n", "modes", "coefs")

    def __init__(self, n: int, modes, coefs, *, canonical: bool = False):
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise InputError(f"dimension must be a positive integer, got {n!r}")
        modes = np.asarray(modes, dtype=np.int64).reshape(-1, n)
        coefs = np.asarray(coefs, dtype=np.complex128).reshape(-1)
        if modes.shape[0] != coefs.shape[0]:
            raise InputError("modes and coefficients have different lengths")
        if not canonical:
            if not np.all(np.isfinite(coefs)):
                raise InputError("coefficients must be finite")
            if len(coefs):
                modes, inv = np.unique(modes, axis=0, return_inverse=True)
                merged = np.zeros(len(modes), dtype=np.complex128)
                np.add.at(merged, inv.reshape(-1), coefs)
                coefs = merged
        modes, coefs = _prune(modes, coefs)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "modes", _freeze(np.ascontiguousarray(modes)))
        object.__setattr__(self, "coefs", _freeze(np.ascontiguousarray(coefs)))

    def __setattr__(self, name, value):
        raise AttributeError("LatticeElement is immutable")

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LatticeElement":
        return cls(n, np.empty((0, n), np.int64), np.empty(0), canonical=True)

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[Sequence[int], complex]) -> "LatticeElement":
        keys = list(terms)
        for p in keys:
            if len(p) != n:
                raise DimensionError(f"mode {tuple(p)} does not have length {n}")
        return cls(n, [list(p) for p in keys], [terms[p] for p in keys])

    # views --------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return {tuple(int(x) for x in p): complex(c) for p, c in zip(self.modes, self.coefs)}

    def __len__(self):
        return len(self.coefs)

    def coefficient(self, p: Sequence[int]) -> complex:
        return self.terms.get(tuple(int(x) for x in p), 0j)

    def max_mode(self) -> int:
        """Largest |coordinate| over the support (0 for the empty element)."""
        return int(np.abs(self.modes).max()) if len(self) else 0

    def is_zero(self) -> bool:
        return len(self) == 0

    def __repr__(self):
        body = " + ".join(f"({c:.6g})U{p}" for p, c in self.terms.items()) or "0"
        return f"LatticeElement(n={self.n}: {body})"

    def __eq__(self, other):
        if not isinstance(other, LatticeElement):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.modes, other.modes)
            and np.array_equal(self.coefs, other.coefs)
        )

    __hash__ = None

    # vector-space sugar -------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1.0, other))

    def __neg__(self):
        return scale(-1.0, self)

    def __mul__(self, c):
        if isinstance(c, LatticeElement):
            return NotImplemented
        return scale(c, self)

    __rmul__ = __mul__

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"p": [int(x) for x in p], "re": float(c.real), "im": float(c.imag)}
                for p, c in zip(self.modes, self.coefs)
            ],
        }

    @classmethod
    def from_json(cls, data) -> "LatticeElement":
        if not isinstance(data, dict) or "n" not in data or "terms" not in data:
            raise InputError('element JSON must be an object with "n" and "terms"')
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InputError(f'"n" must be a positive integer, got {n!r}')
        if not isinstance(data["terms"], list):
            raise InputError('"terms" must be a list')
        seen = set()
        modes, coefs = [], []
        for term in data["terms"]:
            if not isinstance(term, dict) or "p" not in term:
                raise InputError(f"malformed term {term!r}")
            p = term["p"]
            if (
                not isinstance(p, list)
                or len(p) != n
                or any(isinstance(x, bool) or not isinstance(x, int) for x in p)
            ):
                raise InputError(f"term mode {p!r} must be a list of {n} integers")
            key = tuple(p)
            if key in seen:
                raise InputError(f"duplicate mode {key} in element JSON")
            seen.add(key)
            re, im = term.get("re", 0.0), term.get("im", 0.0)
            for v in (re, im):
                if isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise InputError(f"non-numeric coefficient in term {term!r}")
            modes.append(p)
            coefs.append(complex(re, im))
        return cls(n, modes, coefs)

    @classmethod
    def load(cls, path) -> "LatticeElement":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _same_n(a: LatticeElement, b: LatticeElement):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")


def _check_theta(a: LatticeElement, theta: ThetaMatrix):
    if a.n != theta.n:
        raise DimensionError(f"element dimension {a.n} does not match theta dimension {theta.n}")


def monomial(p: Sequence[int]) -> LatticeElement:
    """U_p: a single unit coefficient at mode p."""
    p = [int(x) for x in p]
    return LatticeElement(len(p), [p], [1.0], canonical=True)


def one(n: int) -> LatticeElement:
    return monomial([0] * n)


def add(a: LatticeElement, b: LatticeElement) -> LatticeElement:
    _same_n(a, b)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    return LatticeElement(a.n, np.concatenate([a.modes, b.modes]), np.concatenate([a.coefs, b.coefs]))


def scale(c: complex, a: LatticeElement) -> LatticeElement:
    c = complex(c)
    if c == 0:
        return LatticeElement.zero(a.n)
    return LatticeElement(a.n, a.modes, c * a.coefs, canonical=True)


def linear_combination(pairs: Iterable[tuple[complex, LatticeElement]]) -> LatticeElement:
    pairs = list(pairs)
    if not pairs:
        raise InputError("empty linear combination")
    n = pairs[0][1].n
    for _, e in pairs:
        if e.n != n:
            raise DimensionError(f"dimension mismatch: {n} vs {e.n}")
    modes = np.concatenate([e.modes for _, e in pairs])
    coefs = np.concatenate([complex(c) * e.coefs for c, e in pairs])
    return LatticeElement(n, modes, coefs)


def _convolve(a, b, B, mode):
    modes, coefs = _backend.kernels.convolve(
        a.modes, a.coefs, b.modes, b.coefs, np.ascontiguousarray(B, dtype=float), mode
    )
    return LatticeElement(a.n, modes, coefs, canonical=True)


def phase_matrix(theta: ThetaMatrix, hbar: float) -> np.ndarray:
    """Matrix B with sigma_hbar(q, r) = exp(2 pi i q^T B r)."""
    return -0.5 * hbar * theta.entries


def deformed_product(a: LatticeElement, b: LatticeElement, theta: ThetaMatrix, hbar: float = 1.0) -> LatticeElement:
    """Twisted convolution: (a * b)(p) = sum_q a(q) b(p-q) sigma_hbar(q, p-q)."""
    _same_n(a, b)
    _check_theta(a, theta)
    hbar = check_hbar(hbar)
    return _convolve(a, b, phase_matrix(theta, hbar), _backend.TWISTED)


def involution(a: LatticeElement) -> LatticeElement:
    """a*(p) = conj(a(-p)); complex conjugation on the torus side."""
    return LatticeElement(a.n, -a.modes, np.conj(a.coefs))


def gamma_flip(a: LatticeElement) -> LatticeElement:
    """The linear Z2 action p -> -p (f(x) -> f(-x)), no conjugation."""
    return LatticeElement(a.n, -a.modes, a.coefs)


def poisson_bracket(a: LatticeElement, b: LatticeElement, theta: ThetaMatrix) -> LatticeElement:
    """Fourier-side bracket {a, b}(p) = -4 pi^2 sum_q a(q) b(p-q) gamma(q, p-q)."""
    _same_n(a, b)
    _check_theta(a, theta)
    return _convolve(a, b, -4.0 * math.pi**2 * theta.entries, _backend.RAW)


def symmetrize(a: LatticeElement) -> LatticeElement:
    """Projection (a + gamma_flip(a)) / 2 onto the even elements."""
    return LatticeElement(a.n, np.concatenate([a.modes, -a.modes]), 0.5 * np.concatenate([a.coefs, a.coefs]))


def distance(a: LatticeElement, b: LatticeElement) -> float:
    """Sup over the union of supports of |a(p) - b(p)|."""
    _same_n(a, b)
    if a.is_zero() and b.is_zero():
        return 0.0
    modes = np.concatenate([a.modes, b.modes])
    coefs = np.concatenate([a.coefs, -b.coefs])
    _, inv = np.unique(modes, axis=0, return_inverse=True)
    diff = np.zeros(inv.max() + 1, dtype=np.complex128)
    np.add.at(diff, inv.reshape(-1), coefs)
    return float(np.abs(diff).max())


def sup_coefficient(a: LatticeElement) -> float:
    return float(np.abs(a.coefs).max()) if len(a) else 0.0


def is_even(a: LatticeElement, tol: float = 0.0) -> bool:
    return distance(a, gamma_flip(a)) <= tol


def commutator_quotient(a: LatticeElement, b: LatticeElement, theta: ThetaMatrix, hbar: float) -> LatticeElement:
    """(a *_hbar b - b *_hbar a) / (i hbar)."""
    hbar = check_hbar(hbar)
    if hbar == 0:
        raise InputError("commutator quotient needs hbar != 0")
    ab = deformed_product(a, b, theta, hbar)
    ba = deformed_product(b, a, theta, hbar)
    # subtract before dividing so the O(1/hbar) parts cancel exactly
    return scale(1 / (1j * hbar), add(ab, scale(-1.0, ba)))
