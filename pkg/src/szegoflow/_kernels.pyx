# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Mirrors ``_kernels_py`` function for function."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, isfinite

cnp.import_array()

# recompute the phasor from scratch every RESEED modes to bound drift
cdef enum:
    RESEED = 64


cdef void _rhs(const double complex* u, double complex* out,
               double complex* w, Py_ssize_t n) noexcept nogil:
    # w[j + n - 1] = coefficient j of |u|^2, out = -i P(|u|^2 u)
    cdef Py_ssize_t j, a, lo, hi, k, c
    cdef double complex acc
    for j in range(-(n - 1), n):
        lo = j if j > 0 else 0
        hi = n - 1 + j if j < 0 else n - 1
        acc = 0
        for a in range(lo, hi + 1):
            acc = acc + u[a] * u[a - j].conjugate()
        w[j + n - 1] = acc
    for k in range(n):
        acc = 0
        for c in range(n):
            acc = acc + w[k - c + n - 1] * u[c]
        out[k] = -1j * acc


def szego_rhs(u):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] uu = np.ascontiguousarray(u, dtype=np.complex128)
    cdef Py_ssize_t n = uu.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.empty(2 * n - 1, dtype=np.complex128)
    _rhs(&uu[0], &out[0], &w[0], n)
    return out


def rk4_run(u0, Py_ssize_t nsteps, double h, Py_ssize_t stride):
    """Classical RK4 on the truncated Szego field.

    Returns ``(steps, states)``: the step indices that were recorded (0,
    every ``stride``-th step, and the last) and the states at those steps.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] u = np.array(u0, dtype=np.complex128)
    cdef Py_ssize_t n = u.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] buf = np.empty((6, n), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.empty(2 * n - 1, dtype=np.complex128)
    cdef double complex* k1 = &buf[0, 0]
    cdef double complex* k2 = &buf[1, 0]
    cdef double complex* k3 = &buf[2, 0]
    cdef double complex* k4 = &buf[3, 0]
    cdef double complex* tmp = &buf[4, 0]
    cdef double complex* up = &u[0]
    cdef double complex* wp = &w[0]
    cdef Py_ssize_t s, i
    cdef bint ok = True
    steps = [0]
    states = [u.copy()]
    if stride < 1:
        stride = 1
    for s in range(1, nsteps + 1):
        with nogil:
            _rhs(up, k1, wp, n)
            for i in range(n):
                tmp[i] = up[i] + 0.5 * h * k1[i]
            _rhs(tmp, k2, wp, n)
            for i in range(n):
                tmp[i] = up[i] + 0.5 * h * k2[i]
            _rhs(tmp, k3, wp, n)
            for i in range(n):
                tmp[i] = up[i] + h * k3[i]
            _rhs(tmp, k4, wp, n)
            for i in range(n):
                up[i] = up[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                if not (isfinite(up[i].real) and isfinite(up[i].imag)):
                    ok = False
        if not ok:
            raise FloatingPointError(f"non-finite state at step {s}")
        if s % stride == 0 or s == nsteps:
            steps.append(s)
            states.append(u.copy())
    return np.array(steps, dtype=np.int64), np.array(states)


def nudft_analysis(theta, values, long n0, Py_ssize_t count):
    """out[j] = sum_k values[k] * exp(-i (n0 + j) theta[k]), j < count."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] v = np.ascontiguousarray(values, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(count, dtype=np.complex128)
    cdef Py_ssize_t m = th.shape[0], k, j
    cdef double t
    cdef double complex p, step, vk
    if v.shape[0] != m:
        raise ValueError("theta and values must have equal length")
    with nogil:
        for k in range(m):
            t = th[k]
            vk = v[k]
            step = cos(t) - 1j * sin(t)
            for j in range(count):
                if j % RESEED == 0:
                    p = cos((n0 + j) * t) - 1j * sin((n0 + j) * t)
                out[j] = out[j] + vk * p
                p = p * step
    return out


def nudft_synthesis(theta, coeffs, long n0):
    """out[k] = sum_j coeffs[j] * exp(i (n0 + j) theta[k])."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t m = th.shape[0], count = c.shape[0], k, j
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(m, dtype=np.complex128)
    cdef double t
    cdef double complex p, step, acc
    with nogil:
        for k in range(m):
            t = th[k]
            step = cos(t) + 1j * sin(t)
            acc = 0
            for j in range(count):
                if j % RESEED == 0:
                    p = cos((n0 + j) * t) + 1j * sin((n0 + j) * t)
                acc = acc + c[j] * p
                p = p * step
            out[k] = acc
    return out
