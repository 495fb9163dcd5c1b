# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: superbase reduction, canonical relabelling,
permutation-minimised distances.  Semantics match `_pykernels` exactly."""

from libc.math cimport fabs, pow, INFINITY

import numpy as np

from . import _tables

BACKEND = "cython"

cdef long[:, ::1] GATHER = np.ascontiguousarray(_tables.GATHER)
cdef long[::1] PARITY = np.ascontiguousarray(_tables.PARITY)

cdef int PAIR_I[6]
cdef int PAIR_J[6]
cdef int COMP_K[6]
cdef int COMP_L[6]
PAIR_I[0] = 0; PAIR_J[0] = 1; COMP_K[0] = 2; COMP_L[0] = 3
PAIR_I[1] = 0; PAIR_J[1] = 2; COMP_K[1] = 1; COMP_L[1] = 3
PAIR_I[2] = 0; PAIR_J[2] = 3; COMP_K[2] = 1; COMP_L[2] = 2
PAIR_I[3] = 1; PAIR_J[3] = 2; COMP_K[3] = 0; COMP_L[3] = 3
PAIR_I[4] = 1; PAIR_J[4] = 3; COMP_K[4] = 0; COMP_L[4] = 2
PAIR_I[5] = 2; PAIR_J[5] = 3; COMP_K[5] = 0; COMP_L[5] = 1


cdef inline double _dot(double* a, double* b) nogil:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


cdef void _stats(double* v, double* out) nogil:
    """out = (sum of 7 vonorms, max vonorm, zero-conorm residual)."""
    cdef double n[7]
    cdef double s[3]
    cdef int t, c
    for t in range(4):
        n[t] = _dot(v + 3 * t, v + 3 * t)
    for t in range(3):
        for c in range(3):
            s[c] = v[c] + v[3 * (t + 1) + c]
        n[4 + t] = _dot(s, s)
    out[0] = n[0] + n[1] + n[2] + n[3] + n[4] + n[5] + n[6]
    out[1] = n[0]
    for t in range(1, 7):
        if n[t] > out[1]:
            out[1] = n[t]
    out[2] = n[0] + n[1] + n[2] + n[3] - n[4] - n[5] - n[6]


def reduce_loop(vectors, double rel_tol, int max_iter):
    """Same contract as `_pykernels.reduce_loop`."""
    arr = np.array(vectors, dtype=np.float64).reshape(4, 3)
    cdef double[:, ::1] vm = np.ascontiguousarray(arr)
    cdef double v[12]
    cdef double nv[12]
    cdef double st[3]
    cdef double st2[3]
    cdef int a, b, it, p, i, j, k, l, best_p
    cdef double eps, best_eps, threshold
    for a in range(4):
        for b in range(3):
            v[3 * a + b] = vm[a, b]

    steps = []
    cdef bint converged = False
    for it in range(max_iter):
        _stats(v, st)
        threshold = rel_tol * st[1]
        best_eps = threshold
        best_p = -1
        for p in range(6):
            eps = _dot(v + 3 * PAIR_I[p], v + 3 * PAIR_J[p])
            if eps > best_eps:
                best_eps = eps
                best_p = p
        if best_p < 0:
            converged = True
            break
        i = PAIR_I[best_p]; j = PAIR_J[best_p]
        k = COMP_K[best_p]; l = COMP_L[best_p]
        for b in range(3):
            nv[3 * i + b] = -v[3 * i + b]
            nv[3 * j + b] = v[3 * j + b]
            nv[3 * k + b] = v[3 * i + b] + v[3 * k + b]
            nv[3 * l + b] = v[3 * i + b] + v[3 * l + b]
        for b in range(12):
            v[b] = nv[b]
        _stats(v, st2)
        steps.append((i, j, best_eps, st[0], st2[2]))
    if not converged:
        _stats(v, st)
        converged = True
        for p in range(6):
            if _dot(v + 3 * PAIR_I[p], v + 3 * PAIR_J[p]) > rel_tol * st[1]:
                converged = False
                break
    out = [tuple(v[3 * a + b] for b in range(3)) for a in range(4)]
    return out, steps, converged


cdef inline bint _lex_less(double* cand, double* best, double tol) nogil:
    cdef int k
    cdef double d
    for k in range(6):
        d = cand[k] - best[k]
        if d < -tol:
            return True
        if d > tol:
            return False
    return False


def canonical_gather(values, int mode, double tie_rel_tol=1e-12):
    """Same contract as `_pykernels.canonical_gather`."""
    cdef double vals[6]
    cdef double best[6]
    cdef double cand[6]
    cdef int k, m, best_m
    cdef double tol, mx
    for k in range(6):
        vals[k] = values[k]
    mx = fabs(vals[0])
    for k in range(1, 6):
        if fabs(vals[k]) > mx:
            mx = fabs(vals[k])
    tol = tie_rel_tol * mx
    best_m = -1
    for m in range(24):
        if mode == 1 and PARITY[m] != 0:
            continue
        if mode == 2 and PARITY[m] != 1:
            continue
        for k in range(6):
            cand[k] = vals[GATHER[m, k]]
        if best_m < 0 or _lex_less(cand, best, tol):
            for k in range(6):
                best[k] = cand[k]
            best_m = m
    return (
        (best[0], best[1], best[2], best[3], best[4], best[5]),
        best_m,
    )


def perm_min_distance(a, b, double q, int mode):
    """Same contract as `_pykernels.perm_min_distance` (q=inf allowed)."""
    cdef double av[6]
    cdef double bv[6]
    cdef int k, m
    cdef double d, acc, diff, best
    for k in range(6):
        av[k] = a[k]
        bv[k] = b[k]
    best = INFINITY
    for m in range(24):
        if mode == 1 and PARITY[m] != 0:
            continue
        if mode == 2 and PARITY[m] != 1:
            continue
        if q == INFINITY:
            d = 0.0
            for k in range(6):
                diff = fabs(av[k] - bv[GATHER[m, k]])
                if diff > d:
                    d = diff
        else:
            acc = 0.0
            for k in range(6):
                acc += pow(fabs(av[k] - bv[GATHER[m, k]]), q)
            d = pow(acc, 1.0 / q)
        if d < best:
            best = d
    return best
