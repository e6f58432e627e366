"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np

_CHUNK = 2048


def szego_rhs(u):
    u = np.ascontiguousarray(u, dtype=np.complex128)
    n = u.size
    # |u|^2 u has modes -(n-1)..2(n-1); a grid of 2n points leaves 0..n-1 unaliased
    L = 1 << (2 * n - 1).bit_length()
    f = np.fft.ifft(u, L) * L
    g = np.fft.fft(np.abs(f) ** 2 * f) / L
    return -1j * g[:n]


def rk4_run(u0, nsteps, h, stride):
    u = np.array(u0, dtype=np.complex128)
    stride = max(1, int(stride))
    steps = [0]
    states = [u.copy()]
    for s in range(1, nsteps + 1):
        # overflow is reported below as a FloatingPointError
        with np.errstate(over="ignore", invalid="ignore"):
            k1 = szego_rhs(u)
            k2 = szego_rhs(u + 0.5 * h * k1)
            k3 = szego_rhs(u + 0.5 * h * k2)
            k4 = szego_rhs(u + h * k3)
            u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(u)):
            raise FloatingPointError(f"non-finite state at step {s}")
        if s % stride == 0 or s == nsteps:
            steps.append(s)
            states.append(u.copy())
    return np.array(steps, dtype=np.int64), np.array(states)


def nudft_analysis(theta, values, n0, count):
    th = np.asarray(theta, dtype=np.float64)
    v = np.asarray(values, dtype=np.complex128)
    if v.size != th.size:
        raise ValueError("theta and values must have equal length")
    modes = n0 + np.arange(count)
    out = np.zeros(count, dtype=np.complex128)
    for lo in range(0, th.size, _CHUNK):
        sl = slice(lo, lo + _CHUNK)
        out += np.exp(-1j * np.outer(modes, th[sl])) @ v[sl]
    return out


def nudft_synthesis(theta, coeffs, n0):
    th = np.asarray(theta, dtype=np.float64)
    c = np.asarray(coeffs, dtype=np.complex128)
    modes = n0 + np.arange(c.size)
    out = np.empty(th.size, dtype=np.complex128)
    for lo in range(0, th.size, _CHUNK):
        sl = slice(lo, lo + _CHUNK)
        out[sl] = np.exp(1j * np.outer(th[sl], modes)) @ c
    return out
