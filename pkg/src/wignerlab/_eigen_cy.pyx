# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled eigenvalue kernels: Householder tridiagonalization and
implicit-shift QL.  Mirrors _eigen_py; selected at import when available."""

from libc.math cimport fabs, sqrt, hypot, copysign

import numpy as np


cdef double _EPS = 2.220446049250313e-16
cdef int _MAX_SWEEPS = 50


def tridiag_sym(double[:, ::1] a):
    cdef Py_ssize_t n = a.shape[0]
    d_arr = np.empty(n)
    e_arr = np.zeros(n)
    cdef double[::1] d = d_arr
    cdef double[::1] e = e_arr
    p_arr = np.empty(n)
    cdef double[::1] p = p_arr
    cdef Py_ssize_t i, j, k
    cdef double scale, sigma, f, g, h, kk, acc, xj, qj
    for i in range(n - 1, 0, -1):
        if i == 1:
            e[1] = a[1, 0]
            continue
        scale = 0.0
        for j in range(i):
            scale += fabs(a[i, j])
        if scale == 0.0:
            e[i] = 0.0
            continue
        sigma = 0.0
        for j in range(i):
            a[i, j] /= scale
            sigma += a[i, j] * a[i, j]
        f = a[i, i - 1]
        g = -copysign(sqrt(sigma), f)
        e[i] = scale * g
        h = sigma - f * g
        a[i, i - 1] = f - g
        # p = A[:i,:i] v / h
        for j in range(i):
            acc = 0.0
            for k in range(i):
                acc += a[j, k] * a[i, k]
            p[j] = acc / h
        kk = 0.0
        for j in range(i):
            kk += a[i, j] * p[j]
        kk /= 2.0 * h
        for j in range(i):
            p[j] -= kk * a[i, j]
        for j in range(i):
            xj = a[i, j]
            qj = p[j]
            for k in range(i):
                a[j, k] -= qj * a[i, k] + xj * p[k]
    for i in range(n):
        d[i] = a[i, i]
    return d_arr, e_arr


def tridiag_herm(double complex[:, ::1] a):
    cdef Py_ssize_t n = a.shape[0]
    d_arr = np.empty(n)
    e_arr = np.zeros(n)
    cdef double[::1] d = d_arr
    cdef double[::1] e = e_arr
    p_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] p = p_arr
    cdef Py_ssize_t i, j, k
    cdef double scale, sigma, g, h, kk, af
    cdef double complex f, phase, acc, xj, qj
    for i in range(n - 1, 0, -1):
        if i == 1:
            e[1] = abs(a[1, 0])
            continue
        scale = 0.0
        for j in range(i):
            scale += fabs(a[i, j].real) + fabs(a[i, j].imag)
        if scale == 0.0:
            e[i] = 0.0
            continue
        # reflector acts on the column below the diagonal, the conjugate of
        # this row
        sigma = 0.0
        for j in range(i):
            a[i, j] = a[i, j].conjugate() / scale
            sigma += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
        f = a[i, i - 1]
        af = abs(f)
        g = sqrt(sigma)
        e[i] = scale * g
        phase = f / af if af != 0.0 else 1.0
        h = sigma + af * g
        a[i, i - 1] = f + phase * g
        for j in range(i):
            acc = 0.0
            for k in range(i):
                acc = acc + a[j, k] * a[i, k]
            p[j] = acc / h
        kk = 0.0
        for j in range(i):
            kk += (a[i, j].conjugate() * p[j]).real
        kk /= 2.0 * h
        for j in range(i):
            p[j] = p[j] - kk * a[i, j]
        for j in range(i):
            xj = a[i, j]
            qj = p[j]
            for k in range(i):
                a[j, k] = a[j, k] - qj * a[i, k].conjugate() - xj * p[k].conjugate()
    for i in range(n):
        d[i] = a[i, i].real
    return d_arr, e_arr


def tql_implicit(double[::1] d, double[::1] e):
    cdef Py_ssize_t n = d.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] dd = out_arr
    off_arr = np.zeros(n)
    cdef double[::1] off = off_arr
    cdef Py_ssize_t l, m, i
    cdef int sweeps, underflow
    cdef double s, c, p, f, b, r, g, tot
    for i in range(n):
        dd[i] = d[i]
    for i in range(n - 1):
        off[i] = e[i + 1]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                tot = fabs(dd[m]) + fabs(dd[m + 1])
                if fabs(off[m]) <= _EPS * tot:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > _MAX_SWEEPS:
                from .errors import NumericError
                raise NumericError(
                    f"tridiagonal QL did not converge within {_MAX_SWEEPS} sweeps"
                )
            g = (dd[l + 1] - dd[l]) / (2.0 * off[l])
            r = hypot(g, 1.0)
            g = dd[m] - dd[l] + off[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = 0
            for i in range(m - 1, l - 1, -1):
                f = s * off[i]
                b = c * off[i]
                r = hypot(f, g)
                off[i + 1] = r
                if r == 0.0:
                    dd[i + 1] -= p
                    off[m] = 0.0
                    underflow = 1
                    break
                s = f / r
                c = g / r
                g = dd[i + 1] - p
                r = (dd[i] - g) * s + 2.0 * c * b
                p = s * r
                dd[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            dd[l] -= p
            off[l] = g
            off[m] = 0.0
    out_arr.sort()
    return out_arr


def eigvals_sym(a):
    d, e = tridiag_sym(np.array(a, dtype=np.float64, order="C", copy=True))
    return tql_implicit(d, e)


def eigvals_herm(a):
    d, e = tridiag_herm(np.array(a, dtype=np.complex128, order="C", copy=True))
    return tql_implicit(d, e)
