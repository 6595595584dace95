"""Numpy implementations of the hot kernels, used when the Cython build is absent.

Kernels take integer mode arrays of shape (k, n), complex coefficient arrays
of shape (k,), and a real skew-symmetric n x n matrix ``B``.  The pair weight
for modes q, r comes from the wedge form

    t(q, r) = sum_{j<k} B_jk (q_j r_k - q_k r_j) = q^T B r,

whose integer parts are exact.  Mode 0 (TWISTED) turns ``t`` into the unit
phase exp(2 pi i t), reducing t mod 1 term by term after a Veltkamp split of
each B_jk so that every product with an integer below 2^27 is exact; mode 1
(RAW) uses ``t`` itself.
"""
import numpy as np

TWISTED = 0
RAW = 1

_SPLITTER = 134217729.0  # 2^27 + 1


def split(c):
    """Veltkamp split c = hi + lo, each half carrying at most 26 significant bits."""
    c = np.asarray(c, dtype=float)
    t = c * _SPLITTER
    hi = t - (t - c)
    return hi, c - hi


def _frac(x):
    return x - np.floor(x + 0.5)


def upper_pairs(n):
    return np.triu_indices(n, k=1)


def wedge(q, r, n):
    """Integer wedge components q_j r_k - q_k r_j for j<k; shapes broadcast over leading axes."""
    j, k = upper_pairs(n)
    q = np.asarray(q, dtype=np.int64)
    r = np.asarray(r, dtype=np.int64)
    return q[..., j] * r[..., k] - q[..., k] * r[..., j]


def raw_weight(B, m):
    j, k = upper_pairs(B.shape[0])
    return m.astype(float) @ B[j, k]


def reduced_turns(B, m):
    """t mod 1 in [-1/2, 1/2) for wedge components ``m`` (last axis)."""
    j, k = upper_pairs(B.shape[0])
    hi, lo = split(B[j, k])
    mf = m.astype(float)
    t = (_frac(mf * hi) + _frac(mf * lo)).sum(axis=-1)
    return _frac(t)


def phase(turns):
    return np.cos(2.0 * np.pi * turns) + 1j * np.sin(2.0 * np.pi * turns)


def convolve(am, ac, bm, bc, B, mode):
    n = B.shape[0]
    if len(ac) == 0 or len(bc) == 0:
        return np.empty((0, n), dtype=np.int64), np.empty(0, dtype=np.complex128)
    sums = (am[:, None, :] + bm[None, :, :]).reshape(-1, n)
    m = wedge(am[:, None, :], bm[None, :, :], n)
    if mode == TWISTED:
        w = phase(reduced_turns(B, m))
    else:
        w = raw_weight(B, m).astype(np.complex128)
    vals = (ac[:, None] * bc[None, :] * w).reshape(-1)
    modes, inv = np.unique(sums, axis=0, return_inverse=True)
    coefs = np.zeros(len(modes), dtype=np.complex128)
    np.add.at(coefs, inv.reshape(-1), vals)
    return modes.astype(np.int64), coefs


def window_points(n, radius):
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=1)


def window_triplets(am, ac, B, radius):
    n = B.shape[0]
    side = 2 * radius + 1
    pts = window_points(n, radius)
    weights = side ** np.arange(n - 1, -1, -1, dtype=np.int64)
    rows, cols, vals = [], [], []
    for s, c in zip(am, ac):
        tgt = pts + s
        inside = np.all(np.abs(tgt) <= radius, axis=1)
        col = np.nonzero(inside)[0]
        row = (tgt[inside] + radius) @ weights
        turns = reduced_turns(B, wedge(s[None, :], pts[inside], n))
        rows.append(row)
        cols.append(col.astype(np.int64))
        vals.append(c * phase(turns))
    if not rows:
        return (np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0, np.complex128))
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
