# cython: language_level=3
"""Compiled kernels: Booth minimal rotation and complex word-trace/gradient.

Same API as freetrace._kernels_py; selected by freetrace.kernels when built.
"""

from libc.stdlib cimport free, malloc

import numpy as np

IMPLEMENTATION = "cython"


def min_rotation_index(word):
    """Start index of the lexicographically least rotation (Booth)."""
    cdef Py_ssize_t n = len(word)
    if n < 2:
        return 0
    cdef long *buf = <long *> malloc(2 * n * sizeof(long))
    cdef long *fail = <long *> malloc(2 * n * sizeof(long))
    if buf == NULL or fail == NULL:
        if buf != NULL:
            free(buf)
        if fail != NULL:
            free(fail)
        raise MemoryError()
    cdef Py_ssize_t idx, j, best = 0
    cdef long current, i
    try:
        for idx in range(n):
            buf[idx] = word[idx]
            buf[idx + n] = buf[idx]
        for j in range(2 * n):
            fail[j] = -1
        for j in range(1, 2 * n):
            current = buf[j]
            i = fail[j - best - 1]
            while i != -1 and current != buf[best + i + 1]:
                if current < buf[best + i + 1]:
                    best = j - i - 1
                i = fail[i]
            if current != buf[best + i + 1]:
                if current < buf[best]:
                    best = j
                fail[j - best] = -1
            else:
                fail[j - best] = i + 1
        return best
    finally:
        free(buf)
        free(fail)


def poly_trace(double complex[::1] coeffs,
               int[::1] offsets,
               int[::1] letters,
               double complex[:, :, ::1] mats):
    """Sum of coeff * tr(word(mats)) over the packed word list."""
    cdef Py_ssize_t nterms = coeffs.shape[0]
    cdef Py_ssize_t n = mats.shape[1]
    cdef Py_ssize_t t, j, p, q, k, m, start
    cdef int letter
    cdef double complex total = 0
    cdef double complex acc
    cdef double complex[:, ::1] cur = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] nxt = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] tmp
    for t in range(nterms):
        start = offsets[t]
        m = offsets[t + 1] - start
        if m == 0:
            total = total + coeffs[t] * n
            continue
        letter = letters[start]
        for p in range(n):
            for q in range(n):
                cur[p, q] = mats[letter, p, q]
        for j in range(1, m):
            letter = letters[start + j]
            for p in range(n):
                for q in range(n):
                    acc = 0
                    for k in range(n):
                        acc = acc + cur[p, k] * mats[letter, k, q]
                    nxt[p, q] = acc
            tmp = cur
            cur = nxt
            nxt = tmp
        acc = 0
        for p in range(n):
            acc = acc + cur[p, p]
        total = total + coeffs[t] * acc
    return complex(total)


def poly_trace_grad(double complex[::1] coeffs,
                    int[::1] offsets,
                    int[::1] letters,
                    double complex[:, :, ::1] mats,
                    double complex[:, :, ::1] grad_out):
    """Trace plus holomorphic gradient d(total)/d(mats[k][p, q]) in grad_out."""
    cdef Py_ssize_t nterms = coeffs.shape[0]
    cdef Py_ssize_t g = mats.shape[0]
    cdef Py_ssize_t n = mats.shape[1]
    cdef Py_ssize_t t, j, p, q, k, m, start, maxlen = 0
    cdef int letter
    cdef double complex total = 0
    cdef double complex c, acc
    for t in range(nterms):
        if offsets[t + 1] - offsets[t] > maxlen:
            maxlen = offsets[t + 1] - offsets[t]
    cdef double complex[:, :, ::1] prefix = np.empty(
        (maxlen + 1, n, n), dtype=np.complex128)
    cdef double complex[:, :, ::1] suffix = np.empty(
        (maxlen + 1, n, n), dtype=np.complex128)
    for k in range(g):
        for p in range(n):
            for q in range(n):
                grad_out[k, p, q] = 0
    for t in range(nterms):
        start = offsets[t]
        m = offsets[t + 1] - start
        c = coeffs[t]
        if m == 0:
            total = total + c * n
            continue
        for p in range(n):
            for q in range(n):
                prefix[0, p, q] = 1 if p == q else 0
                suffix[m, p, q] = 1 if p == q else 0
        for j in range(m):
            letter = letters[start + j]
            for p in range(n):
                for q in range(n):
                    acc = 0
                    for k in range(n):
                        acc = acc + prefix[j, p, k] * mats[letter, k, q]
                    prefix[j + 1, p, q] = acc
        for j in range(m - 1, -1, -1):
            letter = letters[start + j]
            for p in range(n):
                for q in range(n):
                    acc = 0
                    for k in range(n):
                        acc = acc + mats[letter, p, k] * suffix[j + 1, k, q]
                    suffix[j, p, q] = acc
        acc = 0
        for p in range(n):
            acc = acc + prefix[m, p, p]
        total = total + c * acc
        for j in range(m):
            letter = letters[start + j]
            for p in range(n):
                for q in range(n):
                    acc = 0
                    for k in range(n):
                        acc = acc + suffix[j + 1, q, k] * prefix[j, k, p]
                    grad_out[letter, p, q] = grad_out[letter, p, q] + c * acc
    return complex(total)
