# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled oscillatory-sum kernels; same contract as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, fabs

cnp.import_array()

cdef double SERIES_THRESHOLD = 0.25
cdef int SERIES_TERMS = 18
cdef Py_ssize_t RESEED = 32


cdef inline void _weights(double theta, double complex *w0, double complex *w1) noexcept nogil:
    cdef double complex z, term, s0, s1, e, i0, i1
    cdef int j
    if fabs(theta) < SERIES_THRESHOLD:
        z = -1j * theta
        term = 1.0
        s0 = 0.0
        s1 = 0.0
        for j in range(SERIES_TERMS):
            s0 = s0 + term / ((j + 1.0) * (j + 2.0))
            s1 = s1 + term / (j + 2.0)
            term = term * z / (j + 1.0)
        w0[0] = s0
        w1[0] = s1
    else:
        e = cos(theta) - 1j * sin(theta)
        i0 = (1.0 - e) / (1j * theta)
        i1 = e * (1j / theta + 1.0 / (theta * theta)) - 1.0 / (theta * theta)
        w0[0] = i0 - i1
        w1[0] = i1


def cell_weights(theta):
    theta = np.asarray(theta, dtype=np.float64)
    flat = np.ascontiguousarray(theta.ravel())
    cdef const double[::1] t = flat
    out0 = np.empty(flat.size, dtype=np.complex128)
    out1 = np.empty(flat.size, dtype=np.complex128)
    cdef double complex[::1] o0 = out0
    cdef double complex[::1] o1 = out1
    cdef Py_ssize_t i
    for i in range(t.shape[0]):
        _weights(t[i], &o0[i], &o1[i])
    return out0.reshape(theta.shape), out1.reshape(theta.shape)


def filon_linear(values, double dt, omegas):
    cdef const double[::1] f = np.ascontiguousarray(values, dtype=np.float64)
    cdef const double[::1] om = np.ascontiguousarray(np.atleast_1d(omegas), dtype=np.float64)
    out = np.empty(om.shape[0], dtype=np.complex128)
    cdef double complex[::1] res = out
    cdef Py_ssize_t k, j, ncell = f.shape[0] - 1
    cdef double complex w0, w1
    cdef double re, im, g0, g1, c, s, cs, sn, tmp
    with nogil:
        for k in range(om.shape[0]):
            _weights(om[k] * dt, &w0, &w1)
            cs = cos(om[k] * dt)
            sn = sin(om[k] * dt)
            re = 0.0
            im = 0.0
            c = 1.0
            s = 0.0
            for j in range(ncell):
                # exp(-i om j dt) = c - i s, advanced by rotation and re-seeded
                # exactly every RESEED cells to bound the drift
                if j % RESEED == 0:
                    c = cos(om[k] * (j * dt))
                    s = sin(om[k] * (j * dt))
                g0 = f[j] * w0.real + f[j + 1] * w1.real
                g1 = f[j] * w0.imag + f[j + 1] * w1.imag
                re = re + g0 * c + g1 * s
                im = im + g1 * c - g0 * s
                tmp = c * cs - s * sn
                s = s * cs + c * sn
                c = tmp
            res[k] = dt * (re + 1j * im)
    return out


def piecewise_constant(offsets, values, omegas):
    cdef const double[::1] o = np.ascontiguousarray(offsets, dtype=np.float64)
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef const double[::1] om = np.ascontiguousarray(np.atleast_1d(omegas), dtype=np.float64)
    out = np.empty(om.shape[0], dtype=np.complex128)
    cdef double complex[::1] res = out
    cdef Py_ssize_t k, i
    cdef double d, mid, x, sinc, re, im, a
    with nogil:
        for k in range(om.shape[0]):
            re = 0.0
            im = 0.0
            for i in range(v.shape[0]):
                d = o[i + 1] - o[i]
                mid = o[i] + 0.5 * d
                x = 0.5 * om[k] * d
                if fabs(x) < 1e-8:
                    sinc = 1.0 - x * x / 6.0
                else:
                    sinc = sin(x) / x
                a = v[i] * d * sinc
                re = re + a * cos(om[k] * mid)
                im = im - a * sin(om[k] * mid)
            res[k] = re + 1j * im
    return out
