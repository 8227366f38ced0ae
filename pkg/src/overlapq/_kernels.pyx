# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: subset-DP matching, greedy + 2-opt matching and
Gaussian-kernel log densities. Mirrors ``_kernels_py`` exactly."""

import numpy as np

from libc.math cimport exp, log, sqrt, M_PI, INFINITY
from libc.stdlib cimport malloc, free

IMPROVE_EPS = 1e-12
cdef double _EPS = 1e-12
# kernels more than exp(-_LOG_CUT) below the nearest one are dropped
cdef double _LOG_CUT = 46.0


cdef inline int _popcount(unsigned long long v) nogil:
    cdef int c = 0
    while v:
        v &= v - 1
        c += 1
    return c


cdef inline int _lowest_bit(unsigned long long v) nogil:
    cdef int i = 0
    while not (v & 1):
        v >>= 1
        i += 1
    return i


def exact_matching(const double[:, ::1] D):
    cdef Py_ssize_t n = D.shape[0]
    cdef unsigned long long full = (1ULL << n) - 1
    cdef unsigned long long mask, rest_i
    cdef double *best = <double *> malloc((full + 1) * sizeof(double))
    cdef int *choice = <int *> malloc((full + 1) * sizeof(int))
    cdef int i, j, c
    cdef double b, cost
    if best == NULL or choice == NULL:
        free(best)
        free(choice)
        raise MemoryError()
    partner = np.empty(n, dtype=np.int64)
    cdef long long[::1] pv = partner
    cdef double total
    try:
        with nogil:
            best[0] = 0.0
            for mask in range(1, full + 1):
                if _popcount(mask) & 1:
                    continue
                i = _lowest_bit(mask)
                rest_i = mask ^ (1ULL << i)
                b = INFINITY
                c = -1
                for j in range(i + 1, n):
                    if (rest_i >> j) & 1:
                        cost = D[i, j] + best[rest_i ^ (1ULL << j)]
                        if cost < b:
                            b = cost
                            c = j
                best[mask] = b
                choice[mask] = c
            total = best[full]
            mask = full
            while mask:
                i = _lowest_bit(mask)
                j = choice[mask]
                pv[i] = j
                pv[j] = i
                mask ^= (1ULL << i) | (1ULL << j)
    finally:
        free(best)
        free(choice)
    return partner, total


def local_search_matching(const double[:, ::1] D, const long long[::1] edge_i,
                          const long long[::1] edge_j):
    cdef Py_ssize_t n = D.shape[0]
    cdef Py_ssize_t n_edges = edge_i.shape[0]
    cdef Py_ssize_t n_pairs = 0, e, p, r
    cdef long long i, j, a, b, c, d
    cdef double cur, alt1, alt2
    cdef bint improved = True
    matched_arr = np.zeros(n, dtype=np.uint8)
    first_arr = np.empty(n // 2, dtype=np.int64)
    second_arr = np.empty(n // 2, dtype=np.int64)
    cdef unsigned char[::1] matched = matched_arr
    cdef long long[::1] first = first_arr
    cdef long long[::1] second = second_arr
    partner = np.empty(n, dtype=np.int64)
    cdef long long[::1] pv = partner
    with nogil:
        for e in range(n_edges):
            i = edge_i[e]
            j = edge_j[e]
            if matched[i] or matched[j]:
                continue
            matched[i] = 1
            matched[j] = 1
            first[n_pairs] = i
            second[n_pairs] = j
            n_pairs += 1
            if n_pairs * 2 == n:
                break
        while improved:
            improved = False
            for p in range(n_pairs):
                for r in range(p + 1, n_pairs):
                    a = first[p]
                    b = second[p]
                    c = first[r]
                    d = second[r]
                    cur = D[a, b] + D[c, d]
                    alt1 = D[a, c] + D[b, d]
                    alt2 = D[a, d] + D[b, c]
                    if alt1 <= alt2:
                        if alt1 < cur - _EPS:
                            second[p] = c
                            first[r] = b
                            second[r] = d
                            improved = True
                    elif alt2 < cur - _EPS:
                        second[p] = d
                        first[r] = b
                        second[r] = c
                        improved = True
        for p in range(n_pairs):
            pv[first[p]] = second[p]
            pv[second[p]] = first[p]
    return partner


def kde_logpdf(x, const double[::1] samples, double bandwidth):
    xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] xv = xa
    cdef Py_ssize_t n_x = xv.shape[0], m = samples.shape[0]
    out = np.empty(n_x)
    cdef double[::1] ov = out
    cdef Py_ssize_t k, lo, hi, mid, left, right
    cdef double xi, z, z2, zmin, s, inv_h = 1.0 / bandwidth
    cdef double log_norm = log(m * bandwidth * sqrt(2.0 * M_PI))
    with nogil:
        for k in range(n_x):
            xi = xv[k]
            # first sample >= xi
            lo = 0
            hi = m
            while lo < hi:
                mid = (lo + hi) >> 1
                if samples[mid] < xi:
                    lo = mid + 1
                else:
                    hi = mid
            zmin = INFINITY
            if lo < m:
                z = (samples[lo] - xi) * inv_h
                zmin = 0.5 * z * z
            if lo > 0:
                z = (xi - samples[lo - 1]) * inv_h
                z2 = 0.5 * z * z
                if z2 < zmin:
                    zmin = z2
            s = 0.0
            right = lo
            while right < m:
                z = (samples[right] - xi) * inv_h
                z2 = 0.5 * z * z - zmin
                if z2 > _LOG_CUT:
                    break
                s += exp(-z2)
                right += 1
            left = lo - 1
            while left >= 0:
                z = (xi - samples[left]) * inv_h
                z2 = 0.5 * z * z - zmin
                if z2 > _LOG_CUT:
                    break
                s += exp(-z2)
                left -= 1
            ov[k] = log(s) - zmin - log_norm
    return out
