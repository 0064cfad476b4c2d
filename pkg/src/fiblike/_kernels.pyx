# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Must stay bit-identical to ``_pykernels``."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, isfinite

cnp.import_array()


def generate_terms(double A, double B, double C, double f0, double f1, Py_ssize_t count):
    """Iterate the recurrence; return (terms, index of first non-finite term or -1)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(count, dtype=np.float64)
    cdef double[::1] t = out
    cdef Py_ssize_t n
    t[0] = f0
    t[1] = f1
    for n in range(2, count):
        t[n] = A + B * t[n - 1] + C * t[n - 2]
        if not isfinite(t[n]):
            return out[:n], n
    return out, -1


def first_period(const double[::1] terms, double tol):
    """Smallest shift p <= len/2 under which the series repeats within tol; 0 if none."""
    cdef Py_ssize_t size = terms.shape[0]
    cdef Py_ssize_t p, n
    cdef bint ok
    for p in range(1, size // 2 + 1):
        ok = True
        for n in range(size - p):
            if not fabs(terms[n + p] - terms[n]) <= tol:
                ok = False
                break
        if ok:
            return p
    return 0


cdef inline void _leapfrog(const double[::1] cur, const double[::1] prev, double[::1] nxt,
                           double c2, bint cyclic) nogil:
    cdef Py_ssize_t size = cur.shape[0]
    cdef Py_ssize_t i
    cdef double left, right, u
    for i in range(size):
        u = cur[i]
        if i > 0:
            left = cur[i - 1]
        elif cyclic:
            left = cur[size - 1]
        else:
            left = 0.0
        if i < size - 1:
            right = cur[i + 1]
        elif cyclic:
            right = cur[0]
        else:
            right = 0.0
        nxt[i] = 2.0 * u + c2 * (left - 2.0 * u + right) - prev[i]


def leapfrog_step(const double[::1] cur, const double[::1] prev, double c2, bint cyclic):
    """One explicit time level of the three-level wave scheme."""
    out = np.empty(cur.shape[0], dtype=np.float64)
    cdef double[::1] nxt = out
    _leapfrog(cur, prev, nxt, c2, cyclic)
    return out


def leapfrog_run(const double[::1] cur, const double[::1] prev, double c2, bint cyclic, Py_ssize_t steps):
    """Advance ``steps`` levels.

    Returns (rows, bad): one row per time level starting with ``cur``, and the
    first time index holding a non-finite value (-1 if none). On blow-up the
    rows stop just before that index.
    """
    cdef Py_ssize_t size = cur.shape[0]
    out = np.empty((steps + 1, size), dtype=np.float64)
    cdef double[:, ::1] rows = out
    cdef Py_ssize_t t, i
    rows[0, :] = cur
    for t in range(steps):
        if t == 0:
            _leapfrog(rows[0], prev, rows[1], c2, cyclic)
        else:
            _leapfrog(rows[t], rows[t - 1], rows[t + 1], c2, cyclic)
        for i in range(size):
            if not isfinite(rows[t + 1, i]):
                return out[:t + 1], t + 1
    return out, -1
