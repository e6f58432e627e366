"""The cubic Szego flow: exact Hankel-exponential formula and an RK4 oracle.

The exact solution is evaluated through the isometry

    Sigma = exp(i t H_u^2) S exp(-i t Ht_u^2),    q = exp(i t H_u^2) 1,

whose orbit {Sigma^m q} is orthonormal; the m-th Taylor coefficient of
the solution at time t is <u, Sigma^m q>. Here H_u^2 and Ht_u^2 are the
squares of the anti-linear Hankel operators with symbols u and S^*u.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BlowUpError, TruncationError
from .hankel import apply_antilinear, h_squared, h_squared_tilde, toeplitz
from .hardy import as_fourier, conj_reflect, laurent_product, pad
from .linalg import HermitianEig, eigh, propagator

__all__ = [
    "SigmaOperator",
    "FlowReport",
    "SzegoFlow",
    "build_sigma",
    "exact_flow",
    "szego_rhs",
    "rk4_evolve",
    "default_dt",
    "lax_residual",
    "tail_mass",
]

MAX_TAIL_MASS = 0.1


def tail_mass(u, N: int) -> float:
    """Squared mass of the symbol on modes n >= N // 2."""
    u = as_fourier(u)
    return float(np.sum(np.abs(u[N // 2 :]) ** 2))


@dataclass(frozen=True, eq=False)
class SigmaOperator:
    """Truncated isometry Sigma and its defect vector q at time ``t``."""

    matrix: np.ndarray
    q: np.ndarray
    t: float
    tail_mass: float

    @property
    def dim(self) -> int:
        return self.q.size

    def orbit(self, count: int) -> np.ndarray:
        """Columns Sigma^m q for m = 0..count-1."""
        out = np.empty((self.dim, count), dtype=np.complex128)
        v = self.q
        for m in range(count):
            out[:, m] = v
            v = self.matrix @ v
        return out

    def isometry_defect(self) -> float:
        """max-norm of Sigma^* Sigma - I on vectors supported off the top mode."""
        G = self.matrix.conj().T @ self.matrix
        n = self.dim - 1
        return float(np.max(np.abs(G[:n, :n] - np.eye(n))))

    def coisometry_defect(self) -> float:
        """max-norm of Sigma Sigma^* - (I - q q^H)."""
        P = self.matrix @ self.matrix.conj().T
        target = np.eye(self.dim) - np.outer(self.q, self.q.conj())
        return float(np.max(np.abs(P - target)))


class SzegoFlow:
    """Exact flow from fixed initial data, truncated at dimension N.

    Both Hankel squares are diagonalized once here; every call to
    :meth:`sigma` or :meth:`coefficients` reuses them.

    Parameters
    ----------
    u : array_like
        Taylor coefficients of the initial datum.
    N : int
        Truncation dimension, at least ``len(u)``. ``N >= 2 len(u)`` is
        recommended so that the tail-mass indicator vanishes.
    """

    def __init__(self, u, N: int):
        u = as_fourier(u)
        if N < u.size:
            raise ValueError(f"N={N} must be >= dim(u)={u.size}")
        self.u = u
        self.N = int(N)
        self.tail_mass = tail_mass(u, N)
        if self.tail_mass > MAX_TAIL_MASS:
            raise TruncationError(
                f"tail mass {self.tail_mass:.3g} exceeds {MAX_TAIL_MASS} at N={N}"
            )
        self.u_padded = pad(u, N)
        self.eig: HermitianEig = eigh(h_squared(u, N))
        self.eig_tilde: HermitianEig = eigh(h_squared_tilde(u, N))

    def _factors(self, t):
        fwd = propagator(self.eig, t)
        back = propagator(self.eig_tilde, -t)
        return fwd, back

    def sigma(self, t: float) -> SigmaOperator:
        fwd, back = self._factors(t)
        # S_N @ back, i.e. rows shifted down with the top row dropped
        shifted = np.zeros_like(back)
        shifted[1:] = back[:-1]
        return SigmaOperator(fwd @ shifted, fwd[:, 0].copy(), float(t), self.tail_mass)

    def coefficients(self, t: float, M: int | None = None) -> np.ndarray:
        """Taylor coefficients c_m = <u, Sigma^m q>, m < M, of the solution at t."""
        M = self.u.size if M is None else int(M)
        if not 1 <= M <= self.N:
            raise ValueError(f"M={M} must lie in [1, N={self.N}]")
        fwd, back = self._factors(t)
        out = np.empty(M, dtype=np.complex128)
        v = fwd[:, 0]
        for m in range(M):
            out[m] = np.vdot(v, self.u_padded)
            w = back @ v
            w[1:] = w[:-1].copy()
            w[0] = 0.0
            v = fwd @ w
        return out


def build_sigma(u, t: float, N: int) -> SigmaOperator:
    return SzegoFlow(u, N).sigma(t)


def exact_flow(u, t: float, N: int, M: int | None = None) -> np.ndarray:
    """Solution of the cubic Szego equation at time t from the exact formula.

    Returns the first ``M`` Taylor coefficients (default ``len(u)``).
    """
    return SzegoFlow(u, N).coefficients(t, M)


def szego_rhs(u) -> np.ndarray:
    """Vector field -i P(|u|^2 u), truncated to ``len(u)`` modes.

    Computed with exact Laurent convolutions; this is the reference the
    compiled and numpy kernels are checked against.
    """
    u = as_fourier(u)
    cubic = laurent_product(laurent_product(u, conj_reflect(u)), u)
    K = cubic.halfwidth
    return -1j * pad(cubic.coeffs[K:], u.size)


def default_dt(u) -> float:
    """1e-3 on the natural time scale ||u||^-2, capped at 1e-3."""
    nrm2 = float(np.sum(np.abs(as_fourier(u)) ** 2))
    return 1e-3 * min(1.0, 1.0 / nrm2) if nrm2 > 0 else 1e-3


@dataclass
class FlowReport:
    """Time series of states with an optional conserved-quantity audit per state."""

    times: list
    states: list
    method: str
    audits: list = field(default_factory=list)


def _rk4_states(u0, t, dt, work_dim):
    """Signed-time RK4 run; returns (times, states)."""
    u = pad(as_fourier(u0), work_dim)
    if t == 0:
        return np.array([0.0]), u[None, :]
    nsteps = max(1, math.ceil(abs(t) / dt - 1e-9))
    h = t / nsteps
    stride = max(1, math.ceil(nsteps / 100))
    try:
        steps, states = kernels.rk4_run(u, nsteps, h, stride)
    except FloatingPointError as exc:
        raise BlowUpError(str(exc)) from None
    return steps * h, states


def rk4_evolve(u0, t: float, dt: float | None = None, work_dim: int | None = None,
               audit: bool = False) -> FlowReport:
    """Integrate the Galerkin-truncated equation with classical RK4.

    The state is kept at ``work_dim`` modes and projected after every
    stage. States are recorded about 100 times along the run and at ``t``.
    """
    u0 = as_fourier(u0)
    work_dim = u0.size if work_dim is None else int(work_dim)
    if work_dim < u0.size:
        raise ValueError(f"work_dim={work_dim} must be >= dim(u0)={u0.size}")
    dt = default_dt(u0) if dt is None else float(dt)
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    times, states = _rk4_states(u0, float(t), dt, work_dim)
    report = FlowReport([float(s) for s in times], list(states), "rk4")
    if audit:
        from .conserved import audit as _audit

        report.audits = [_audit(s, work_dim, t=tt) for tt, s in zip(report.times, report.states)]
    return report


def exact_report(u0, times, N: int, M: int | None = None, audit: bool = False) -> FlowReport:
    """Exact-formula states at several times, sharing one diagonalization."""
    flow = SzegoFlow(u0, N)
    M = N if M is None else M
    states = [flow.coefficients(t, M) for t in times]
    report = FlowReport([float(t) for t in times], states, "exact")
    if audit:
        from .conserved import audit as _audit

        report.audits = [_audit(s, N, t=t) for t, s in zip(report.times, states)]
    return report


def lax_residual(u, f, h: float, N: int) -> float:
    """Central-difference defect of the Lax equation dH_u/dt = [B_u, H_u].

    ``B_u = (i/2) H_u^2 - i T_{|u|^2}``. The time derivative of H_u f is
    approximated from RK4 states at -h and +h; the result is O(h^2).
    """
    if not h > 0:
        raise ValueError(f"h must be > 0, got {h}")
    u = pad(as_fourier(u), N)
    f = pad(as_fourier(f), N)
    _, plus = _rk4_states(u, h, h, N)
    _, minus = _rk4_states(u, -h, h, N)
    dH = (apply_antilinear(plus[-1], f, N) - apply_antilinear(minus[-1], f, N)) / (2 * h)
    B = 0.5j * h_squared(u, N) - 1j * toeplitz(laurent_product(u, conj_reflect(u)), N)
    comm = B @ apply_antilinear(u, f, N) - apply_antilinear(u, B @ f, N)
    return float(np.linalg.norm(dH - comm))
