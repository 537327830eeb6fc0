# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels for automorphism words.

Same contract as the pure-python twin ``_kernels_py`` (see its docstring
for the plan format).  Generator dispatch stays at python level (words
are short); the per-point work runs as C loops over typed memoryviews.
"""

import numpy as np


ctypedef double complex zdouble


cdef inline zdouble zpow(zdouble base, long long e) noexcept:
    cdef zdouble acc = 1.0
    while e > 0:
        if e & 1:
            acc = acc * base
        base = base * base
        e >>= 1
    return acc


cdef void _affine_points(zdouble[:, ::1] W, const zdouble[:, ::1] A,
                         const zdouble[::1] b, zdouble[::1] tmp) noexcept:
    cdef Py_ssize_t m = W.shape[0], n = W.shape[1]
    cdef Py_ssize_t p, r, c
    cdef zdouble acc
    for p in range(m):
        for r in range(n):
            acc = b[r]
            for c in range(n):
                acc = acc + A[r, c] * W[p, c]
            tmp[r] = acc
        for r in range(n):
            W[p, r] = tmp[r]


cdef void _shear_points(zdouble[:, ::1] W, Py_ssize_t k,
                        const long long[:, ::1] exps,
                        const zdouble[::1] coeffs) noexcept:
    cdef Py_ssize_t m = W.shape[0], n = W.shape[1], T = exps.shape[0]
    cdef Py_ssize_t p, t, i
    cdef zdouble val, term
    for p in range(m):
        val = 0.0
        for t in range(T):
            term = coeffs[t]
            for i in range(n):
                if exps[t, i]:
                    term = term * zpow(W[p, i], exps[t, i])
            val = val + term
        W[p, k] = W[p, k] + val


cdef void _affine_jacobians(zdouble[:, ::1] W, zdouble[:, :, ::1] J,
                            const zdouble[:, ::1] A, const zdouble[::1] b,
                            zdouble[::1] tmp, zdouble[:, ::1] tmpM) noexcept:
    cdef Py_ssize_t m = W.shape[0], n = W.shape[1]
    cdef Py_ssize_t p, r, c, j
    cdef zdouble acc
    for p in range(m):
        for r in range(n):
            acc = b[r]
            for c in range(n):
                acc = acc + A[r, c] * W[p, c]
            tmp[r] = acc
        for r in range(n):
            W[p, r] = tmp[r]
        # J[p] <- A @ J[p]
        for r in range(n):
            for c in range(n):
                acc = 0.0
                for j in range(n):
                    acc = acc + A[r, j] * J[p, j, c]
                tmpM[r, c] = acc
        for r in range(n):
            for c in range(n):
                J[p, r, c] = tmpM[r, c]


cdef void _shear_jacobians(zdouble[:, ::1] W, zdouble[:, :, ::1] J,
                           Py_ssize_t k, const long long[:, ::1] exps,
                           const zdouble[::1] coeffs,
                           zdouble[::1] grad) noexcept:
    cdef Py_ssize_t m = W.shape[0], n = W.shape[1], T = exps.shape[0]
    cdef Py_ssize_t p, t, i, j, c
    cdef zdouble val, term, gterm, acc
    cdef long long e
    for p in range(m):
        val = 0.0
        for j in range(n):
            grad[j] = 0.0
        # value and gradient of the polynomial at the current point
        for t in range(T):
            term = coeffs[t]
            for i in range(n):
                if exps[t, i]:
                    term = term * zpow(W[p, i], exps[t, i])
            val = val + term
            for j in range(n):
                e = exps[t, j]
                if e:
                    gterm = coeffs[t] * (<double> e)
                    gterm = gterm * zpow(W[p, j], e - 1)
                    for i in range(n):
                        if i != j and exps[t, i]:
                            gterm = gterm * zpow(W[p, i], exps[t, i])
                    grad[j] = grad[j] + gterm
        # row update J[p, k, :] += grad . J[p]; grad[k] is always 0
        for c in range(n):
            acc = 0.0
            for j in range(n):
                acc = acc + grad[j] * J[p, j, c]
            J[p, k, c] = J[p, k, c] + acc
        W[p, k] = W[p, k] + val


def eval_points(list plan, Z):
    """Apply the word to every row of Z; returns a new (m, n) array."""
    W = np.array(Z, dtype=np.complex128, order="C", copy=True)
    cdef zdouble[:, ::1] Wv = W
    tmp = np.empty(W.shape[1], dtype=np.complex128)
    cdef zdouble[::1] tmpv = tmp
    for step in plan:
        if step[0] == "affine":
            _affine_points(Wv, step[1], step[2], tmpv)
        else:
            _shear_points(Wv, step[1] - 1, step[2], step[3])
    return W


def eval_jacobians(list plan, Z):
    """Images and Jacobians for every row of Z: (m, n) and (m, n, n) arrays."""
    W = np.array(Z, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t m = W.shape[0], n = W.shape[1]
    J = np.repeat(np.eye(n, dtype=np.complex128)[None, :, :], m, axis=0)
    cdef zdouble[:, ::1] Wv = W
    cdef zdouble[:, :, ::1] Jv = J
    tmp = np.empty(n, dtype=np.complex128)
    tmpM = np.empty((n, n), dtype=np.complex128)
    grad = np.empty(n, dtype=np.complex128)
    cdef zdouble[::1] tmpv = tmp
    cdef zdouble[:, ::1] tmpMv = tmpM
    cdef zdouble[::1] gradv = grad
    for step in plan:
        if step[0] == "affine":
            _affine_jacobians(Wv, Jv, step[1], step[2], tmpv, tmpMv)
        else:
            _shear_jacobians(Wv, Jv, step[1] - 1, step[2], step[3], gradv)
    return W, J
