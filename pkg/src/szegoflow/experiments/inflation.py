"""Norm inflation in negative Sobolev norms via the rational solution from z + eps.

The solution with initial datum z + eps has constant Taylor coefficient

    b(t) = exp(-i t (1 + eps^2/2)) (eps cos(w t) - i (2 + eps^2)/sqrt(4 + eps^2) sin(w t)),

with w = (eps/2) sqrt(4 + eps^2). Rescaling u -> R u(R^2 t, z^Nsub) maps
solutions to solutions, which turns |b| ~ 1 at time pi/(2w) into a large
mean value reached in short time from data small in W^{-delta,2}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import TruncationError
from ..flow import SzegoFlow
from ..hardy import as_fourier, sobolev_norm

__all__ = [
    "InflationParams",
    "InflationReport",
    "INFLATION_COLUMNS",
    "omega",
    "b_eps",
    "t_star",
    "scale_state",
    "initial_state",
    "closed_form_sobolev",
    "default_dimension",
    "inflation_run",
    "inflation_schedule",
]

INFLATION_COLUMNS = (
    "eps", "delta", "R", "Nsub", "sobolev_at_0", "t_eps",
    "observable", "predicted_observable", "rel_err",
)
MAX_DIM = 4096
MAX_TAIL = 1e-8


def omega(eps: float) -> float:
    return 0.5 * eps * math.sqrt(4.0 + eps * eps)


def b_eps(eps: float, t: float) -> complex:
    """Constant coefficient of the solution started from z + eps."""
    if not eps > 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    w = omega(eps)
    amp = (2.0 + eps * eps) / math.sqrt(4.0 + eps * eps)
    phase = np.exp(-1j * t * (1.0 + 0.5 * eps * eps))
    return complex(phase * (eps * math.cos(w * t) - 1j * amp * math.sin(w * t)))


def t_star(eps: float) -> float:
    """First time at which |b| reaches its maximum, pi / (2 w)."""
    if not eps > 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    return math.pi / (2.0 * omega(eps))


def scale_state(u, R: float, Nsub: int) -> np.ndarray:
    """Coefficients of R u(z^Nsub): mode n moves to n * Nsub."""
    if Nsub < 1:
        raise ValueError(f"Nsub must be >= 1, got {Nsub}")
    u = as_fourier(u)
    out = np.zeros(Nsub * (u.size - 1) + 1, dtype=np.complex128)
    out[::Nsub] = R * u
    return out


@dataclass(frozen=True)
class InflationParams:
    delta: float
    eps: float
    R: float
    Nsub: int

    def __post_init__(self):
        for name in ("delta", "eps", "R"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive real number, got {v!r}")
        if int(self.Nsub) != self.Nsub or self.Nsub < 1:
            raise ValueError(f"Nsub must be a positive integer, got {self.Nsub!r}")

    @property
    def t_eps(self) -> float:
        return t_star(self.eps) / self.R**2

    @property
    def predicted_observable(self) -> float:
        return self.R * abs(b_eps(self.eps, t_star(self.eps)))


def initial_state(p: InflationParams) -> np.ndarray:
    return scale_state([p.eps, 1.0], p.R, p.Nsub)


def closed_form_sobolev(p: InflationParams) -> float:
    """sqrt(Nsub^{-2 delta} R^2 + (R eps)^2)."""
    return math.sqrt(p.Nsub ** (-2.0 * p.delta) * p.R**2 + (p.R * p.eps) ** 2)


def default_dimension(p: InflationParams) -> int:
    """4 (Nsub + 1) max(8, ceil(R^2 t_eps))."""
    return 4 * (p.Nsub + 1) * max(8, math.ceil(p.R**2 * p.t_eps))


@dataclass(frozen=True)
class InflationReport:
    params: InflationParams
    N: int
    sobolev_at_0: float
    t_eps: float
    observable: float
    predicted_observable: float
    tail_mass: float
    coefficients: np.ndarray

    @property
    def rel_err(self) -> float:
        return abs(self.observable - self.predicted_observable) / self.predicted_observable

    def row(self) -> list:
        p = self.params
        return [p.eps, p.delta, p.R, p.Nsub, self.sobolev_at_0, self.t_eps,
                self.observable, self.predicted_observable, self.rel_err]


def inflation_run(p: InflationParams, N: int | None = None, M: int | None = None) -> InflationReport:
    """Evolve the rescaled datum to t_eps with the exact formula.

    ``M`` output coefficients are returned (default ``Nsub + 1``, enough to
    see the first two populated modes). Raises :class:`TruncationError`
    when the required dimension exceeds ``MAX_DIM`` or the datum is not
    resolved at N.
    """
    v0 = initial_state(p)
    N = default_dimension(p) if N is None else int(N)
    if N > MAX_DIM:
        raise TruncationError(f"required dimension N={N} exceeds {MAX_DIM}")
    if N < 2 * v0.size:
        raise TruncationError(f"N={N} must be >= 2*dim(v0)={2 * v0.size}")
    flow = SzegoFlow(v0, N)
    if flow.tail_mass > MAX_TAIL:
        raise TruncationError(f"tail mass {flow.tail_mass:.3g} exceeds {MAX_TAIL}")
    M = min(N, p.Nsub + 1) if M is None else int(M)
    coeffs = flow.coefficients(p.t_eps, M)
    return InflationReport(
        params=p,
        N=N,
        sobolev_at_0=sobolev_norm(v0, -p.delta),
        t_eps=p.t_eps,
        observable=abs(coeffs[0]),
        predicted_observable=p.predicted_observable,
        tail_mass=flow.tail_mass,
        coefficients=coeffs,
    )


def inflation_schedule(eps_values, delta: float) -> list[InflationParams]:
    """Parameters R = eps^{-3/4}, Nsub = ceil(eps^{-2/delta}) for each eps.

    Along this schedule R eps -> 0, R^2 eps -> infinity and
    Nsub^{-delta} R -> 0 as eps -> 0.
    """
    out = []
    for eps in eps_values:
        nsub = math.ceil(eps ** (-2.0 / delta) * (1 - 1e-12))
        out.append(InflationParams(delta=delta, eps=eps, R=eps ** -0.75, Nsub=nsub))
    return out
