"""A real L^2 symbol whose maximal Toeplitz operator has a nontrivial kernel.

With F(z) = ((i + z)/(i - z))^{1/2}, H(z) = (z^2 + 1)^{eps/2} (principal
branches, F(0) = H(0) = 1) and phi = phi_1 phi_2, where phi_1 = -1 on
|theta| < pi/2, +1 elsewhere and phi_2 = |z^2 + 1|^{-eps}, the function
f = F H + H / F lies in H^2 and P(phi f) = 0.

Every integrand here has algebraic singularities at z = +-i and phi_1
jumps there. Boundary integrals are therefore taken on a graded offset
grid: each of the two arcs between +-i gets ``grid_M / 2`` nodes
theta = a + pi psi(s_k), s_k = (k + 1/2) / (grid_M / 2), where psi is the
normalized integral of sin^6(pi s). The nodes cluster at the singular
points without reaching them, and plain weighted sums converge fast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import beta, betainc

from .. import kernels
from ..errors import BranchError
from ..hardy import LaurentVector

__all__ = [
    "AppendixParams",
    "AppendixGrid",
    "AppendixReport",
    "APPENDIX_COLUMNS",
    "appendix_grid",
    "appendix_f_coeffs",
    "appendix_phi_coeffs",
    "kernel_residual",
    "truncated_kernel_residual",
    "control_residual",
    "phi2_h_coeffs",
    "appendix_report",
]

APPENDIX_COLUMNS = ("eps", "grid_M", "dim_N", "trunc_K", "residual")
GRADING = 6


@dataclass(frozen=True)
class AppendixParams:
    eps: float
    grid_M: int = 1 << 16
    trunc_K: int = 64
    dim_N: int = 512

    def __post_init__(self):
        if not (isinstance(self.eps, (int, float)) and 0.0 < self.eps < 0.5):
            raise ValueError(f"eps must lie in (0, 1/2), got {self.eps!r}")
        M = self.grid_M
        if int(M) != M or M < 8 or int(M) & (int(M) - 1):
            raise ValueError(f"grid_M must be a power of two >= 8, got {M!r}")
        if int(self.trunc_K) != self.trunc_K or self.trunc_K < 1:
            raise ValueError(f"trunc_K must be a positive integer, got {self.trunc_K!r}")
        if int(self.dim_N) != self.dim_N or self.dim_N < 1:
            raise ValueError(f"dim_N must be a positive integer, got {self.dim_N!r}")
        if self.trunc_K > self.dim_N:
            raise ValueError(f"trunc_K={self.trunc_K} must be <= dim_N={self.dim_N}")


def _psi(s):
    """Normalized integral of sin^m(pi t) over [0, s]; accurate near both ends."""
    lo = np.minimum(s, 1.0 - s)
    half = 0.5 * betainc(0.5 * (GRADING + 1), 0.5, np.sin(np.pi * lo) ** 2)
    return np.where(s <= 0.5, half, 1.0 - half)


def _dpsi(s):
    return np.sin(np.pi * s) ** GRADING * np.pi / beta(0.5 * (GRADING + 1), 0.5)


def _expi_minus_one(d):
    """exp(i d) - 1 without cancellation for small d."""
    return -2.0 * np.sin(0.5 * d) ** 2 + 1j * np.sin(d)


@dataclass(frozen=True, eq=False)
class AppendixGrid:
    """Quadrature nodes on the circle for integrals against d theta / (2 pi).

    ``z_minus_i`` and ``z_plus_i`` hold z - i and z + i computed from the
    distance to the nearest singular point, so they keep full relative
    precision even where the grading pushes nodes within 1e-30 of +-i.
    """

    theta: np.ndarray
    weights: np.ndarray
    z: np.ndarray
    z_minus_i: np.ndarray
    z_plus_i: np.ndarray
    sign: np.ndarray  # phi_1 at each node

    @property
    def size(self) -> int:
        return self.theta.size

    def integrate(self, values) -> complex:
        return complex(np.sum(self.weights * values))

    def analysis(self, values, n0: int, count: int) -> np.ndarray:
        """Fourier coefficients n0 .. n0+count-1 of sampled values."""
        return kernels.nudft_analysis(self.theta, self.weights * values, n0, count)

    def synthesis(self, coeffs, n0: int = 0) -> np.ndarray:
        return kernels.nudft_synthesis(self.theta, coeffs, n0)

    def norm(self, values) -> float:
        return math.sqrt(float(np.sum(self.weights * np.abs(values) ** 2)))


def appendix_grid(M: int) -> AppendixGrid:
    half = M // 2
    s = (np.arange(half) + 0.5) / half
    d_lo = np.pi * _psi(s)
    d_hi = np.pi * _psi(1.0 - s)
    w = _dpsi(s) / M
    first = s < 0.5

    # arc A: -i -> +i through z = 1, phi_1 = -1
    zA = np.where(first, -1j * np.exp(1j * d_lo), 1j * np.exp(-1j * d_hi))
    zpA = np.where(first, -1j * _expi_minus_one(d_lo), zA + 1j)
    zmA = np.where(first, zA - 1j, 1j * _expi_minus_one(-d_hi))
    thA = np.where(first, -0.5 * np.pi + d_lo, 0.5 * np.pi - d_hi)
    # arc B: +i -> -i through z = -1, phi_1 = +1
    zB = np.where(first, 1j * np.exp(1j * d_lo), -1j * np.exp(-1j * d_hi))
    zmB = np.where(first, 1j * _expi_minus_one(d_lo), zB - 1j)
    zpB = np.where(first, zB + 1j, -1j * _expi_minus_one(-d_hi))
    thB = np.where(first, 0.5 * np.pi + d_lo, 1.5 * np.pi - d_hi)

    return AppendixGrid(
        theta=np.concatenate([thA, thB]),
        weights=np.concatenate([w, w]),
        z=np.concatenate([zA, zB]),
        z_minus_i=np.concatenate([zmA, zmB]),
        z_plus_i=np.concatenate([zpA, zpB]),
        sign=np.concatenate([-np.ones(half), np.ones(half)]),
    )


def _F(zm, zp):
    # (i + z) / (i - z) maps the disc to the right half plane
    return np.sqrt(zp / -zm)


def _H(zm, zp, eps):
    # z^2 + 1 stays in Re > 0 on the open disc
    return (zm * zp) ** (0.5 * eps)


def _check_branches(values, half, name):
    for arc in (values[:half], values[half:]):
        jumps = np.abs(np.angle(arc[1:] / arc[:-1]))
        if jumps.size and jumps.max() > 0.5 * np.pi:
            raise BranchError(f"{name}: adjacent samples differ by a sign flip")


class _Samples:
    """Boundary samples of F, H, f and phi for one parameter set."""

    def __init__(self, p: AppendixParams):
        self.p = p
        self.grid = appendix_grid(p.grid_M)
        g = self.grid
        if abs(_F(np.array(-1j), np.array(1j)) - 1) > 1e-14 or abs(_H(np.array(-1j), np.array(1j), p.eps) - 1) > 1e-14:
            raise BranchError("branches are not pinned at F(0) = H(0) = 1")
        F = _F(g.z_minus_i, g.z_plus_i)
        H = _H(g.z_minus_i, g.z_plus_i, p.eps)
        half = g.size // 2
        _check_branches(F, half, "F")
        _check_branches(H, half, "H")
        self.F, self.H = F, H
        self.f = F * H + H / F
        self.phi2 = np.abs(g.z_minus_i * g.z_plus_i) ** (-p.eps)
        self.phi = g.sign * self.phi2

    @cached_property
    def f_norm(self) -> float:
        return self.grid.norm(self.f)

    def residual_of(self, values) -> float:
        nrm = self.grid.norm(values)
        coeffs = self.grid.analysis(self.phi * values, 0, self.p.trunc_K)
        return float(np.linalg.norm(coeffs) / nrm)


_cache: dict = {}


def _samples(p: AppendixParams) -> _Samples:
    s = _cache.get(p)
    if s is None:
        _cache.clear()
        s = _cache[p] = _Samples(p)
    return s


def appendix_f_coeffs(p: AppendixParams, dim: int) -> np.ndarray:
    """Taylor coefficients f_0 .. f_{dim-1} of f = F H + H / F."""
    if dim > p.grid_M // 4:
        raise ValueError(f"dim={dim} must be <= grid_M/4={p.grid_M // 4}")
    s = _samples(p)
    return s.grid.analysis(s.f, 0, dim)


def appendix_phi_coeffs(p: AppendixParams) -> LaurentVector:
    """Fourier coefficients of phi for |k| <= dim_N."""
    s = _samples(p)
    K = p.dim_N
    return LaurentVector(s.grid.analysis(s.phi, -K, 2 * K + 1), K)


def kernel_residual(p: AppendixParams) -> float:
    """||(P(phi f))_{0..trunc_K-1}|| / ||f||, from boundary values of f."""
    s = _samples(p)
    return s.residual_of(s.f)


def truncated_kernel_residual(p: AppendixParams) -> float:
    """Same ratio with f replaced by its first dim_N Taylor coefficients.

    f has coefficients of size about n^{-(1+eps)/2}, so this converges
    only like a small power of dim_N.
    """
    s = _samples(p)
    f_N = s.grid.synthesis(appendix_f_coeffs(p, p.dim_N))
    return s.residual_of(f_N)


def control_residual(p: AppendixParams, seed: int = 0) -> float:
    """Residual for a random polynomial of degree < dim_N in place of f."""
    s = _samples(p)
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(p.dim_N) + 1j * rng.standard_normal(p.dim_N)
    return s.residual_of(s.grid.synthesis(c))


def phi2_h_coeffs(p: AppendixParams, count: int = 33) -> np.ndarray:
    """Coefficients 0 .. count-1 of phi_2 H, which should be (1, 0, 0, ...)."""
    s = _samples(p)
    return s.grid.analysis(s.phi2 * s.H, 0, count)


@dataclass(frozen=True)
class AppendixReport:
    params: AppendixParams
    residual: float
    truncated_residual: float
    control_residual: float
    f_norm: float

    def row(self) -> list:
        p = self.params
        return [p.eps, p.grid_M, p.dim_N, p.trunc_K, self.residual]


def appendix_report(p: AppendixParams, seed: int = 0) -> AppendixReport:
    return AppendixReport(
        params=p,
        residual=kernel_residual(p),
        truncated_residual=truncated_kernel_residual(p),
        control_residual=control_residual(p, seed),
        f_norm=_samples(p).f_norm,
    )
