# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  See ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def loglik_scan(counts, log_p0, log_p1):
    cdef const long long[:, ::1] c = np.ascontiguousarray(counts, dtype=np.int64)
    cdef const double[::1] lp0 = np.ascontiguousarray(log_p0, dtype=np.float64)
    cdef const double[::1] lp1 = np.ascontiguousarray(log_p1, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0]
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] total = out
    # only outcomes that were observed contribute; keep them in ascending k
    ks = np.flatnonzero((np.asarray(c[:, 0]) != 0) | (np.asarray(c[:, 1]) != 0)).astype(np.int64)
    cdef const long long[::1] kv = ks
    cdef Py_ssize_t nk = kv.shape[0]
    cdef Py_ssize_t a, t, k, r
    cdef long long c0, c1
    cdef double acc
    for a in range(n):
        acc = 0.0
        for t in range(nk):
            k = kv[t]
            r = (a * k) % n
            c0 = c[k, 0]
            c1 = c[k, 1]
            if c0:
                acc = acc + c0 * lp0[r]
            if c1:
                acc = acc + c1 * lp1[r]
        total[a] = acc
    return out


def inverse_cdf(cdf, u):
    cdef const double[::1] cv = np.ascontiguousarray(cdf, dtype=np.float64)
    cdef const double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t m = cv.shape[0]
    cdef Py_ssize_t count = uv.shape[0]
    out = np.empty(count, dtype=np.int64)
    cdef long long[::1] res = out
    cdef Py_ssize_t t, lo, hi, mid
    cdef double x
    for t in range(count):
        x = uv[t]
        # first index with cdf > x
        lo = 0
        hi = m
        while lo < hi:
            mid = (lo + hi) >> 1
            if cv[mid] <= x:
                lo = mid + 1
            else:
                hi = mid
        res[t] = lo if lo < m else m - 1
    return out
