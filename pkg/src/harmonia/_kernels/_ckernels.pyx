# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Signatures mirror ``_pykernels`` exactly."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, M_PI

cnp.import_array()


def _digits(long n, long[:] moduli):
    cdef Py_ssize_t m = moduli.shape[0]
    cdef long[:, :] d = np.zeros((n, m), dtype=np.int64).astype(np.dtype("l"))
    cdef long i, k, rem
    for i in range(n):
        rem = i
        for k in range(m - 1, -1, -1):
            d[i, k] = rem % moduli[k]
            rem = rem // moduli[k]
    return np.asarray(d)


def cyclic_convolve(double complex[:] f, double complex[:] g, moduli):
    """out[x] = sum_y f[x - y] g[y] on the product of cyclic groups."""
    cdef long[:] mods = np.ascontiguousarray(moduli, dtype=np.dtype("l"))
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t m = mods.shape[0]
    cdef long[:, :] dig = _digits(n, mods)
    cdef long[:] stride = np.ones(m, dtype=np.dtype("l"))
    cdef Py_ssize_t k, x, y
    cdef long idx, t
    for k in range(m - 2, -1, -1):
        stride[k] = stride[k + 1] * mods[k + 1]
    out = np.zeros(n, dtype=np.complex128)
    cdef double complex[:] o = out
    cdef double complex acc, gy
    for x in range(n):
        acc = 0
        for y in range(n):
            gy = g[y]
            if gy == 0:
                continue
            idx = 0
            for k in range(m):
                t = dig[x, k] - dig[y, k]
                if t < 0:
                    t += mods[k]
                idx += t * stride[k]
            acc = acc + f[idx] * gy
        o[x] = acc
    return out


def char_sum(double complex[:] f, moduli, int sign):
    """out[b] = sum_x f[x] exp(sign * 2 pi i sum_k x_k b_k / n_k)."""
    cdef long[:] mods = np.ascontiguousarray(moduli, dtype=np.dtype("l"))
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t m = mods.shape[0]
    cdef long L = 1
    cdef long a, b_, k
    for k in range(m):
        a = L
        b_ = mods[k]
        while b_:
            a, b_ = b_, a % b_
        L = L // a * mods[k]
    cdef long[:, :] dig = _digits(n, mods)
    cdef long[:] scale = np.empty(m, dtype=np.dtype("l"))
    for k in range(m):
        scale[k] = L // mods[k]
    table = np.empty(L, dtype=np.complex128)
    cdef double complex[:] w = table
    cdef long j
    cdef double th
    for j in range(L):
        th = 2.0 * M_PI * j / L
        w[j] = cos(th) + 1j * sign * sin(th)
    # exact lattice points on the axes
    if L % 4 == 0:
        w[L // 4] = 1j * sign
        w[3 * L // 4] = -1j * sign
    if L % 2 == 0:
        w[L // 2] = -1.0
    out = np.zeros(n, dtype=np.complex128)
    cdef double complex[:] o = out
    cdef Py_ssize_t x, bi
    cdef long ph
    cdef double complex acc
    for bi in range(n):
        acc = 0
        for x in range(n):
            ph = 0
            for k in range(m):
                ph += (dig[x, k] * dig[bi, k] % mods[k]) * scale[k]
            acc = acc + f[x] * w[ph % L]
        o[bi] = acc
    return out


def poisson_quadrature(double r, double theta, double complex[:] values):
    """(1/M) sum_k P_r(e^{i theta}, e^{2 pi i k / M}) values[k]."""
    cdef Py_ssize_t M = values.shape[0]
    cdef Py_ssize_t k
    cdef double num = 1.0 - r * r
    cdef double c, den
    cdef double complex acc = 0
    for k in range(M):
        c = cos(theta - 2.0 * M_PI * k / M)
        den = 1.0 - 2.0 * r * c + r * r
        acc = acc + (num / den) * values[k]
    return acc / M
