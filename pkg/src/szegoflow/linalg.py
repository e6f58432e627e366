"""Hermitian eigendecomposition and the functions of it used downstream."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["HermitianEig", "eigh", "propagator", "resolvent_apply"]

# eigenvalues down to -CLAMP_TOL are treated as 0 (roundoff on PSD Gram matrices)
CLAMP_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HermitianEig:
    """Ascending eigenvalues and unitary matrix of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    def clamped(self) -> np.ndarray:
        """Eigenvalues with roundoff negatives set to zero.

        Raises ValueError when an eigenvalue is more negative than the
        clamp tolerance, since the input was then not a Gram matrix.
        """
        lam = self.eigenvalues
        if lam.size and lam[0] < -CLAMP_TOL * max(1.0, abs(lam[-1])):
            raise ValueError(
                f"matrix is not positive semidefinite (min eigenvalue {lam[0]:.3e})"
            )
        return np.maximum(lam, 0.0)


def eigh(A) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized, ``(A + A^H) / 2``, before decomposition.
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    lam, V = np.linalg.eigh(0.5 * (A + A.conj().T))
    return HermitianEig(lam, V)


def propagator(E: HermitianEig, s: float) -> np.ndarray:
    """exp(i s A) = V diag(exp(i s lambda)) V^H."""
    V = E.eigenvectors
    return (V * np.exp(1j * s * E.eigenvalues)) @ V.conj().T


def resolvent_apply(E: HermitianEig, x: float, v) -> np.ndarray:
    """(I + x A)^{-1} v for a positive semidefinite A and x >= 0."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    V = E.eigenvectors
    v = np.asarray(v, dtype=np.complex128)
    return V @ ((V.conj().T @ v) / (1.0 + x * E.clamped()))
