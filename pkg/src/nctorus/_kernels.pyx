# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for twisted convolution and truncated left-regular representations.

Same contract and the same arithmetic as ``_fallback``: wedge-form weights,
Veltkamp-split reduction of the phase mod 1, lexicographically sorted output.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor, cos, sin, M_PI
from libcpp.map cimport map as cmap
from libcpp.vector cimport vector
from libcpp.pair cimport pair
from cython.operator cimport dereference as deref, preincrement as inc

cnp.import_array()

ctypedef long long i64

cdef double SPLITTER = 134217729.0


cdef inline double _frac(double x) noexcept nogil:
    return x - floor(x + 0.5)


cdef class _Upper:
    """Upper-triangle coefficients of B with their Veltkamp halves."""
    cdef vector[int] j, k
    cdef vector[double] val, hi, lo

    def __init__(self, const double[:, ::1] B):
        cdef Py_ssize_t n = B.shape[0], a, b
        cdef double c, t, h
        for a in range(n):
            for b in range(a + 1, n):
                c = B[a, b]
                t = c * SPLITTER
                h = t - (t - c)
                self.j.push_back(a)
                self.k.push_back(b)
                self.val.push_back(c)
                self.hi.push_back(h)
                self.lo.push_back(c - h)


cdef inline double _weight(_Upper up, const i64* q, const i64* r, int mode) noexcept:
    cdef Py_ssize_t u, npair = up.j.size()
    cdef double m, t = 0.0
    for u in range(npair):
        m = <double>(q[up.j[u]] * r[up.k[u]] - q[up.k[u]] * r[up.j[u]])
        if m == 0.0:
            continue
        if mode == 0:
            t += _frac(m * up.hi[u]) + _frac(m * up.lo[u])
        else:
            t += m * up.val[u]
    return _frac(t) if mode == 0 else t


def convolve(const i64[:, ::1] am, const double complex[::1] ac,
             const i64[:, ::1] bm, const double complex[::1] bc,
             const double[:, ::1] B, int mode):
    """Weighted convolution of two sparse coefficient lists, merged and lex-sorted."""
    cdef Py_ssize_t ka = am.shape[0], kb = bm.shape[0], n = B.shape[0]
    cdef Py_ssize_t i, j, u, m
    cdef double t
    cdef double complex w, val
    cdef _Upper up = _Upper(B)
    cdef cmap[vector[i64], pair[double, double]] acc
    cdef cmap[vector[i64], pair[double, double]].iterator it
    cdef vector[i64] key = vector[i64](n)
    cdef pair[double, double]* slot

    for i in range(ka):
        for j in range(kb):
            for u in range(n):
                key[u] = am[i, u] + bm[j, u]
            t = _weight(up, &am[i, 0], &bm[j, 0], mode)
            if mode == 0:
                w = cos(2.0 * M_PI * t) + 1j * sin(2.0 * M_PI * t)
            else:
                w = t
            val = ac[i] * bc[j] * w
            it = acc.find(key)
            if it == acc.end():
                acc[key] = pair[double, double](val.real, val.imag)
            else:
                slot = &deref(it).second
                slot.first += val.real
                slot.second += val.imag

    m = acc.size()
    modes = np.empty((m, n), dtype=np.int64)
    coefs = np.empty(m, dtype=np.complex128)
    cdef i64[:, ::1] mv = modes
    cdef double complex[::1] cv = coefs
    it = acc.begin()
    i = 0
    while it != acc.end():
        for u in range(n):
            mv[i, u] = deref(it).first[u]
        cv[i] = deref(it).second.first + 1j * deref(it).second.second
        inc(it)
        i += 1
    return modes, coefs


def window_triplets(const i64[:, ::1] am, const double complex[::1] ac,
                    const double[:, ::1] B, i64 radius):
    """COO triplets of left multiplication compressed to the cube [-R, R]^n.

    Entry (row p, col r) = a(s) * exp(2 pi i t(s, r)), s = p - r, points
    enumerated lexicographically.
    """
    cdef Py_ssize_t k = am.shape[0], n = B.shape[0]
    cdef i64 side = 2 * radius + 1
    cdef Py_ssize_t size = 1, u, s_idx, col, nnz = 0
    for u in range(n):
        size *= side
    rows = np.empty(k * size, dtype=np.int64)
    cols = np.empty(k * size, dtype=np.int64)
    vals = np.empty(k * size, dtype=np.complex128)
    cdef i64[::1] rv = rows, colv = cols
    cdef double complex[::1] vv = vals
    cdef vector[i64] pt = vector[i64](n)
    cdef _Upper up = _Upper(B)
    cdef i64 row, c, tgt
    cdef double t
    cdef bint inside

    for s_idx in range(k):
        for col in range(size):
            c = col
            for u in range(n - 1, -1, -1):
                pt[u] = c % side - radius
                c = c // side
            inside = True
            row = 0
            for u in range(n):
                tgt = pt[u] + am[s_idx, u]
                if tgt < -radius or tgt > radius:
                    inside = False
                    break
                row = row * side + (tgt + radius)
            if not inside:
                continue
            t = _weight(up, &am[s_idx, 0], pt.data(), 0)
            rv[nnz] = row
            colv[nnz] = col
            vv[nnz] = ac[s_idx] * (cos(2.0 * M_PI * t) + 1j * sin(2.0 * M_PI * t))
            nnz += 1
    return rows[:nnz], cols[:nnz], vals[:nnz]
