"""Deformation parameter, the bilinear pairing and the twisting cocycle."""
from __future__ import annotations

import json
import math
from typing import Sequence

import numpy as np

from . import _fallback
from .errors import DimensionError, InputError


def unit_phase(turns):
    """exp(2*pi*i*turns) after reducing ``turns`` to [-1/2, 1/2).

    Reduction keeps |result| = 1 to round-off even for huge arguments.
    Works on scalars and arrays.
    """
    t = np.asarray(turns, dtype=float)
    r = t - np.floor(t + 0.5)
    out = np.exp(2j * np.pi * r)
    if out.ndim == 0:
        return complex(out)
    return out


class ThetaMatrix:
    """Real skew-symmetric n x n matrix.

    Non-skew input is rejected, never repaired.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise InputError(f"theta must be a non-empty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InputError("theta entries must be finite")
        if not np.array_equal(arr, -arr.T):
            raise InputError("theta must be skew-symmetric (theta_jk == -theta_kj exactly)")
        arr.setflags(write=False)
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    def __getitem__(self, jk):
        return float(self._entries[jk])

    def __eq__(self, other):
        if not isinstance(other, ThetaMatrix):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self):
        return hash((self.n, self._entries.tobytes()))

    def __repr__(self):
        return f"ThetaMatrix({self._entries.tolist()!r})"

    def scaled(self, s: float) -> "ThetaMatrix":
        return ThetaMatrix(s * self._entries)

    @classmethod
    def zero(cls, n: int) -> "ThetaMatrix":
        return cls(np.zeros((n, n)))

    @classmethod
    def from_upper(cls, n: int, values: dict) -> "ThetaMatrix":
        """Build from {(j, k): theta_jk} with 1-based j < k."""
        arr = np.zeros((n, n))
        for (j, k), v in values.items():
            if not (1 <= j <= n and 1 <= k <= n) or j == k:
                raise InputError(f"bad index pair ({j}, {k}) for n={n}")
            arr[j - 1, k - 1] = v
            arr[k - 1, j - 1] = -v
        return cls(arr)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, scale: float = 1.0) -> "ThetaMatrix":
        upper = np.triu(rng.uniform(-scale, scale, size=(n, n)), k=1)
        return cls(upper - upper.T)

    def to_json(self) -> dict:
        return {"n": self.n, "entries": self._entries.tolist()}

    @classmethod
    def from_json(cls, data) -> "ThetaMatrix":
        if not isinstance(data, dict) or "n" not in data or "entries" not in data:
            raise InputError('theta JSON must be an object with "n" and "entries"')
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InputError(f'"n" must be a positive integer, got {n!r}')
        rows = data["entries"]
        if (
            not isinstance(rows, list)
            or len(rows) != n
            or any(not isinstance(r, list) or len(r) != n for r in rows)
        ):
            raise InputError(f'"entries" must be an {n}x{n} list of rows')
        for r in rows:
            for v in r:
                if isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise InputError(f"non-numeric theta entry {v!r}")
        return cls(rows)

    @classmethod
    def load(cls, path) -> "ThetaMatrix":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _point(p: Sequence[int], n: int) -> np.ndarray:
    arr = np.asarray(p)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise DimensionError(f"lattice point {tuple(np.ravel(arr))} does not have length {n}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.round(arr)):
            raise InputError(f"lattice point {tuple(arr)} has non-integer coordinates")
        arr = arr.astype(np.int64)
    return arr.astype(np.int64)


def gamma(theta: ThetaMatrix, p: Sequence[int], q: Sequence[int]) -> float:
    """The pairing sum_jk theta_jk p_j q_k.

    Evaluated as sum_{j<k} theta_jk (p_j q_k - p_k q_j): the integer parts are
    exact, so gamma(p, p) == 0 and gamma(q, p) == -gamma(p, q) hold exactly.
    """
    pa = _point(p, theta.n)
    qa = _point(q, theta.n)
    return float(_fallback.raw_weight(theta.entries, _fallback.wedge(pa, qa, theta.n)))


def sigma(theta: ThetaMatrix, hbar: float, p: Sequence[int], q: Sequence[int]) -> complex:
    """Twisting cocycle exp(-pi i hbar gamma(p, q)).

    The phase -hbar gamma / 2 is reduced mod 1 term by term before
    exponentiation, so large modes keep full accuracy.
    """
    pa = _point(p, theta.n)
    qa = _point(q, theta.n)
    B = -0.5 * check_hbar(hbar) * theta.entries
    turns = _fallback.reduced_turns(B, _fallback.wedge(pa, qa, theta.n))
    return complex(_fallback.phase(turns))


def check_hbar(hbar) -> float:
    h = float(hbar)
    if not math.isfinite(h):
        raise InputError(f"hbar must be finite, got {hbar!r}")
    return h
