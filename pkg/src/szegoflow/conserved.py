"""Conserved quantities of the cubic Szego flow.

J(x, u) = <(I + x H_u^2)^{-1} 1, 1> is evaluated spectrally from the
eigendecomposition of H_u^2; its one-sided derivatives at x = 0 are then
exact moments of the spectral measure of the constant function 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import TruncationError
from .hankel import h_squared
from .hardy import as_fourier, conj_reflect, laurent_product, lp_boundary_norm, next_pow2, szego_project

__all__ = [
    "ConservedAudit",
    "H4Estimate",
    "AUDIT_X",
    "AUDIT_COLUMNS",
    "energy_E",
    "J_value",
    "J_derivs0",
    "h4_from_J",
    "parseval_identity_check",
    "audit",
    "spectral_measure",
]

AUDIT_X = (0.1, 1.0, 10.0)
AUDIT_COLUMNS = ("t", "l2", "E", "J@0.1", "J@1", "J@10", "dJ0", "d2J0", "h4")


class H4Estimate(NamedTuple):
    norm: float
    quartic: float


@dataclass(frozen=True)
class ConservedAudit:
    t: float
    l2_norm: float
    energy_E: float
    J_samples: tuple
    dJ0: float
    d2J0: float
    h4_from_J: float

    def row(self) -> list:
        """Values in ``AUDIT_COLUMNS`` order."""
        return [self.t, self.l2_norm, self.energy_E, *(J for _, J in self.J_samples),
                self.dJ0, self.d2J0, self.h4_from_J]


def _default_M(u) -> int:
    return next_pow2(4 * as_fourier(u).size)


def energy_E(u, M: int | None = None) -> float:
    """Hamiltonian (1/4) ||u||_{L^4}^4 from M boundary samples, M >= 4 dim(u)."""
    u = as_fourier(u)
    M = _default_M(u) if M is None else M
    if M < 4 * u.size:
        raise ValueError(f"M={M} must be >= 4*dim(u)={4 * u.size}")
    return 0.25 * lp_boundary_norm(u, 4, M) ** 4


def spectral_measure(u, N: int):
    """Eigenvalues of H_u^2 (clamped at 0) and weights |<1, v_k>|^2."""
    if N < 1:
        raise ValueError("N must be >= 1")
    H2 = h_squared(u, N)
    lam, V = np.linalg.eigh(0.5 * (H2 + H2.conj().T))
    scale = max(1.0, abs(lam[-1]))
    if lam[0] < -1e-12 * scale:
        raise ValueError(f"H_u^2 has negative eigenvalue {lam[0]:.3e}")
    return np.maximum(lam, 0.0), np.abs(V[0]) ** 2


def J_value(u, x: float, N: int) -> float:
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    lam, w = spectral_measure(u, N)
    return float(np.sum(w / (1.0 + x * lam)))


def J_derivs0(u, N: int) -> tuple[float, float]:
    """One-sided derivatives of x -> J(x, u) at 0: (-sum w lam, 2 sum w lam^2)."""
    lam, w = spectral_measure(u, N)
    return float(-np.sum(w * lam)), float(2.0 * np.sum(w * lam**2))


def _h4(dJ0, d2J0) -> H4Estimate:
    quartic = d2J0 - dJ0**2
    if quartic < -1e-9:
        raise TruncationError(
            f"d2J0 - dJ0^2 = {quartic:.3e} < 0; truncation dimension too small"
        )
    quartic = max(quartic, 0.0)
    return H4Estimate(quartic**0.25, quartic)


def h4_from_J(u, N: int) -> H4Estimate:
    """L^4 norm of u recovered from the second-order behaviour of J at 0."""
    return _h4(*J_derivs0(u, N))


def parseval_identity_check(u, N: int, M: int | None = None) -> float:
    """|2 ||P(|u|^2)||^2 - ||u||_{L^4}^4 - ||u||^4| for a polynomial symbol."""
    u = as_fourier(u)
    M = _default_M(u) if M is None else M
    proj = szego_project(laurent_product(u, conj_reflect(u)), N)
    lhs = 2.0 * np.sum(np.abs(proj) ** 2)
    l2 = np.sum(np.abs(u) ** 2)
    return float(abs(lhs - lp_boundary_norm(u, 4, M) ** 4 - l2**2))


def audit(u, N: int, M: int | None = None, t: float = 0.0, xs=AUDIT_X) -> ConservedAudit:
    """All conserved quantities of one state, sharing one eigendecomposition."""
    u = as_fourier(u)
    lam, w = spectral_measure(u, N)
    dJ0 = float(-np.sum(w * lam))
    d2J0 = float(2.0 * np.sum(w * lam**2))
    return ConservedAudit(
        t=float(t),
        l2_norm=float(np.linalg.norm(u)),
        energy_E=energy_E(u, M),
        J_samples=tuple((float(x), float(np.sum(w / (1.0 + x * lam)))) for x in xs),
        dJ0=dJ0,
        d2J0=d2J0,
        h4_from_J=_h4(dJ0, d2J0).norm,
    )
