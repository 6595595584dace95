"""Left multiplication on a finite window of l^2(Z^n) and bounds for the operator norm.

The window is the cube {q : |q_i| <= R}.  Compressing an operator to a
subspace never increases its norm, so the largest singular value of the
truncated matrix is a lower bound for ||a||_hbar, and the l^1 norm of the
coefficients is an upper bound.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import _backend
from .errors import ConvergenceError, DimensionError, InputError, WindowTooLargeError
from .lattice import LatticeElement, phase_matrix
from .theta import ThetaMatrix, check_hbar

DEFAULT_WINDOW_CAP = 20_000


def window_cap() -> int:
    raw = os.environ.get("NCT_WINDOW_CAP")
    if raw is None:
        return DEFAULT_WINDOW_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"NCT_WINDOW_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError("NCT_WINDOW_CAP must be positive")
    return cap


@dataclass(frozen=True)
class Window:
    n: int
    radius: int

    def __post_init__(self):
        if self.n < 1 or self.radius < 0:
            raise InputError(f"invalid window n={self.n}, radius={self.radius}")

    @property
    def side(self) -> int:
        return 2 * self.radius + 1

    @property
    def size(self) -> int:
        return self.side**self.n

    def check_cap(self, cap: int | None = None):
        cap = window_cap() if cap is None else cap
        if self.size > cap:
            raise WindowTooLargeError(
                f"window of radius {self.radius} in dimension {self.n} has {self.size} "
                f"basis vectors, above the cap of {cap}"
            )

    def points(self) -> np.ndarray:
        """Window points in the lexicographic order used for matrix indices."""
        return _backend._fallback.window_points(self.n, self.radius)

    def index(self, p) -> int:
        idx = 0
        for x in p:
            if abs(x) > self.radius:
                raise InputError(f"point {tuple(p)} is outside the window")
            idx = idx * self.side + (int(x) + self.radius)
        return idx

    def indices(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=np.int64)
        if np.any(np.abs(pts) > self.radius):
            raise InputError("points outside the window")
        weights = self.side ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return (pts + self.radius) @ weights

    def interior(self, support: np.ndarray) -> np.ndarray:
        """Indices of points r with r + s and r - s in the window for every s in ``support``."""
        pts = self.points()
        if len(support) == 0:
            return np.arange(len(pts))
        reach = np.abs(np.asarray(support)).max(axis=0)
        ok = np.all(np.abs(pts) + reach <= self.radius, axis=1)
        return np.nonzero(ok)[0]


@dataclass
class TruncatedRep:
    """Compressed left-multiplication operator.

    Stored sparse; ``dense()`` materializes the matrix.
    """

    matrix: sp.csr_matrix
    window: Window

    @property
    def basis(self) -> np.ndarray:
        return self.window.points()

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


def build_rep(a: LatticeElement, theta: ThetaMatrix, hbar: float, w: Window) -> TruncatedRep:
    """Entry (p, r) = a(p - r) sigma_hbar(p - r, r) for p, r in the window."""
    if a.n != theta.n or w.n != a.n:
        raise DimensionError("element, theta and window dimensions differ")
    hbar = check_hbar(hbar)
    w.check_cap()
    rows, cols, vals = _backend.kernels.window_triplets(
        a.modes, a.coefs, np.ascontiguousarray(phase_matrix(theta, hbar)), w.radius
    )
    m = sp.csr_matrix((vals, (rows, cols)), shape=(w.size, w.size))
    return TruncatedRep(m, w)


@dataclass
class NormEstimate:
    value: float
    iterations: int
    vector: np.ndarray = field(repr=False)


def power_norm(
    matrix,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    seed: int = 0,
    start: np.ndarray | None = None,
    raise_on_cap: bool = True,
) -> NormEstimate:
    """Largest singular value by power iteration on M^H M.

    The returned value is sqrt of a Rayleigh quotient of M^H M, hence never
    above the true largest singular value.  Stops when the quotient changes
    by less than ``tol`` relative.  Hitting ``max_iter`` raises
    ConvergenceError unless ``raise_on_cap`` is false, in which case the
    (still certified) estimate is returned with ``iterations == max_iter``.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    size = matrix.shape[1]
    if start is None:
        rng = np.random.default_rng(seed)
        x = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    else:
        x = np.asarray(start, dtype=np.complex128)
    nx = np.linalg.norm(x)
    if nx == 0:
        return NormEstimate(0.0, 0, x)
    x = x / nx
    mh = matrix.conj().T.tocsr() if sp.issparse(matrix) else matrix.conj().T
    rq_old = -1.0
    for it in range(1, max_iter + 1):
        y = matrix @ x
        rq = float(np.vdot(y, y).real)
        z = mh @ y
        nz = np.linalg.norm(z)
        if nz == 0 or rq == 0:
            return NormEstimate(0.0, it, x)
        if abs(rq - rq_old) <= tol * rq:
            return NormEstimate(math.sqrt(rq), it, x)
        rq_old = rq
        x = z / nz
    if not raise_on_cap:
        return NormEstimate(math.sqrt(rq), max_iter, x)
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations", math.sqrt(rq), max_iter
    )


def norm_lower(
    a: LatticeElement,
    theta: ThetaMatrix,
    hbar: float,
    w: Window,
    tol: float = 1e-10,
    *,
    max_iter: int = 10_000,
    seed: int = 0,
) -> float:
    if a.is_zero():
        return 0.0
    rep = build_rep(a, theta, hbar, w)
    return power_norm(rep.matrix, tol, max_iter, seed).value


def norm_sweep(
    a: LatticeElement,
    theta: ThetaMatrix,
    hbar: float,
    radii,
    tol: float = 1e-10,
    *,
    max_iter: int = 10_000,
    seed: int = 0,
) -> list[dict]:
    """Lower/upper bounds over increasing radii.

    Each radius warm-starts from the previous singular vector embedded in the
    larger window; since the Rayleigh quotient of power iterates of a PSD
    matrix never decreases, the lower bounds come out non-decreasing.  To
    keep that true in floating point too, each bound is the running maximum
    (a smaller window's compression is also a compression of the larger
    window's operator) clamped to the l^1 bound, which the norm never exceeds.
    A radius that hits the iteration cap reports ``iterations == max_iter``.
    """
    radii = sorted(int(r) for r in radii)
    upper = norm_upper_l1(a)
    rows = []
    prev_vec, prev_w = None, None
    best = 0.0
    for r in radii:
        w = Window(a.n, r)
        if a.is_zero():
            rows.append({"hbar": hbar, "radius": r, "norm_lower": 0.0, "norm_upper": upper, "iterations": 0})
            continue
        rep = build_rep(a, theta, hbar, w)
        start = None
        if prev_vec is not None:
            start = np.zeros(w.size, dtype=np.complex128)
            start[w.indices(prev_w.points())] = prev_vec
        est = power_norm(rep.matrix, tol, max_iter, seed, start=start, raise_on_cap=False)
        prev_vec, prev_w = est.vector, w
        best = min(max(best, est.value), upper)
        rows.append(
            {"hbar": hbar, "radius": r, "norm_lower": best, "norm_upper": upper, "iterations": est.iterations}
        )
    return rows


def norm_upper_l1(a: LatticeElement) -> float:
    """sum |a(p)|: each U_p acts unitarily."""
    return float(np.abs(a.coefs).sum())


def evaluate_on_grid(a: LatticeElement, points_per_axis: int) -> np.ndarray:
    """Values of sum_p a(p) exp(2 pi i p.x) on the grid x_i = k / m, shape (m,)*n."""
    m = int(points_per_axis)
    if m < 1:
        raise InputError("grid needs at least one point per axis")
    out = np.zeros((m,) * a.n, dtype=np.complex128)
    k = np.arange(m)
    for p, c in zip(a.modes, a.coefs):
        term = np.array(c, dtype=np.complex128)
        for axis, pj in enumerate(p):
            shape = [1] * a.n
            shape[axis] = m
            term = term * np.exp(2j * np.pi * pj * k / m).reshape(shape)
        out += term
    return out


def sup_norm_grid(a: LatticeElement, grid_points_per_axis: int) -> float:
    """Max modulus over a uniform grid; a lower bound for the sup norm."""
    if a.is_zero():
        return 0.0
    return float(np.abs(evaluate_on_grid(a, grid_points_per_axis)).max())


def min_interior_eigenvalue(a: LatticeElement, theta: ThetaMatrix, hbar: float, w: Window) -> float:
    """Smallest eigenvalue of the Hermitian part of the interior block of build_rep(a)."""
    rep = build_rep(a, theta, hbar, w)
    idx = w.interior(a.modes)
    if len(idx) == 0:
        raise InputError("window has no interior points for this support")
    block = rep.matrix[idx][:, idx].toarray()
    return float(np.linalg.eigvalsh(0.5 * (block + block.conj().T)).min())
