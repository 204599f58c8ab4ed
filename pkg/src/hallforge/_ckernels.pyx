# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``."""
import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p) nogil:
    cdef i64 result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


cdef int _rref(i64[:, ::1] m, i64 p, i64[::1] pivots) nogil:
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, tmp
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = m[piv, j]
                m[piv, j] = m[r, j]
                m[r, j] = tmp
        inv = _inv(m[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                m[r, j] = m[r, j] * inv % p
        for i in range(rows):
            if i != r:
                f = m[i, c]
                if f != 0:
                    for j in range(c, cols):
                        m[i, j] = (m[i, j] - f * m[r, j]) % p
                        if m[i, j] < 0:
                            m[i, j] += p
        pivots[r] = c
        r += 1
    return r


def rref_inplace(cnp.ndarray a, long long p):
    """Reduce ``a`` (C-contiguous int64) in place; return pivot columns."""
    cdef i64[:, ::1] m = a
    cdef i64[::1] piv = np.empty(max(1, min(a.shape[0], a.shape[1])), dtype=np.int64)
    cdef int r
    with nogil:
        r = _rref(m, p, piv)
    return [piv[k] for k in range(r)]


def batch_rank(cnp.ndarray stack, long long p):
    """Ranks of every matrix in a (N, r, c) int64 stack."""
    cdef Py_ssize_t n = stack.shape[0], rows = stack.shape[1], cols = stack.shape[2]
    out = np.zeros(n, dtype=np.int64)
    if n == 0 or rows == 0 or cols == 0:
        return out
    work = np.ascontiguousarray(stack % p, dtype=np.int64)
    cdef i64[:, :, ::1] w = work
    cdef i64[::1] o = out
    cdef i64[::1] piv = np.empty(max(1, min(rows, cols)), dtype=np.int64)
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            o[k] = _rref(w[k], p, piv)
    return out
