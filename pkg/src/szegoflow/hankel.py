"""Truncated Hankel and Toeplitz matrices built from Fourier symbols.

All matrices are dense ``(N, N)`` complex arrays acting on the first N
Taylor coefficients. Symbols shorter than needed are zero-extended.

The anti-linear Hankel operator ``H_u f = P(u conj(f))`` is never stored;
:func:`apply_antilinear` conjugates the coefficients of ``f`` and then
multiplies by the linear Hankel matrix.
"""
from __future__ import annotations

import numpy as np

from .hardy import LaurentVector, as_fourier, pad, shift_back

__all__ = [
    "gamma",
    "h_squared",
    "h_squared_tilde",
    "apply_antilinear",
    "toeplitz",
    "shift_matrix",
]


def gamma(u, N: int) -> np.ndarray:
    """Hankel matrix with entries u_{j+k}, 0 <= j, k < N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    c = pad(as_fourier(u), 2 * N - 1)
    j = np.arange(N)
    return c[j[:, None] + j[None, :]]


def h_squared(u, N: int) -> np.ndarray:
    """The linear operator H_u^2 = Gamma_u Gamma_u^*, truncated."""
    G = gamma(u, N)
    return G @ G.conj().T


def h_squared_tilde(u, N: int) -> np.ndarray:
    """H_{S^* u}^2, the square of the Hankel operator of the backward-shifted symbol."""
    return h_squared(shift_back(u), N)


def apply_antilinear(u, f, N: int) -> np.ndarray:
    """H_u f = P(u conj(f)) on the first N modes."""
    return gamma(u, N) @ np.conj(pad(as_fourier(f), N))


def toeplitz(phi: LaurentVector, N: int) -> np.ndarray:
    """Toeplitz matrix with entries phi_{j-k}, 0 <= j, k < N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if not isinstance(phi, LaurentVector):
        phi = LaurentVector.from_fourier(phi)
    K = max(phi.halfwidth, N - 1)
    c = np.zeros(2 * K + 1, dtype=np.complex128)
    c[K - phi.halfwidth : K + phi.halfwidth + 1] = phi.coeffs
    j = np.arange(N)
    return c[K + j[:, None] - j[None, :]]


def shift_matrix(N: int) -> np.ndarray:
    """N x N truncated forward shift (the top coefficient is dropped)."""
    return np.eye(N, k=-1, dtype=np.complex128)
