"""Truncated Hardy-space vectors on the unit circle.

A *Fourier vector* is a 1-D complex array ``f`` with ``f[n]`` the n-th
Taylor coefficient of a function in the Hardy space, n = 0..dim-1.
A :class:`LaurentVector` carries two-sided coefficients n = -K..K and is
used for products such as ``|u|^2`` before projecting back.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "LaurentVector",
    "as_fourier",
    "one",
    "inner",
    "sharp",
    "shift_fwd",
    "shift_back",
    "szego_project",
    "sobolev_norm",
    "boundary_samples",
    "lp_boundary_norm",
    "laurent_product",
    "conj_reflect",
    "pad",
    "next_pow2",
    "symbol_from_spec",
]


def as_fourier(f) -> np.ndarray:
    """Validate and convert to a 1-D complex coefficient array."""
    arr = np.array(f, dtype=np.complex128).reshape(-1)
    if arr.size < 1:
        raise ValueError("Fourier vector must have dim >= 1")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Fourier vector has non-finite entries")
    return arr


def next_pow2(n: int) -> int:
    return 1 << max(0, int(n) - 1).bit_length()


def pad(f, dim: int) -> np.ndarray:
    """Zero-pad (or truncate) coefficients to length ``dim``."""
    f = np.asarray(f, dtype=np.complex128)
    out = np.zeros(dim, dtype=np.complex128)
    k = min(dim, f.size)
    out[:k] = f[:k]
    return out


@dataclass(frozen=True, eq=False)
class LaurentVector:
    """Two-sided truncated Fourier series, ``coeffs[n + halfwidth]`` = c_n."""

    coeffs: np.ndarray
    halfwidth: int

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if self.halfwidth < 0 or c.size != 2 * self.halfwidth + 1:
            raise ValueError(
                f"expected {2 * self.halfwidth + 1} coefficients for halfwidth "
                f"{self.halfwidth}, got {c.size}"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("Laurent vector has non-finite entries")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_dict(cls, entries: dict) -> "LaurentVector":
        """Build from ``{n: c_n}``; missing indices are zero."""
        K = max((abs(int(n)) for n in entries), default=0)
        c = np.zeros(2 * K + 1, dtype=np.complex128)
        for n, v in entries.items():
            c[int(n) + K] = v
        return cls(c, K)

    @classmethod
    def from_fourier(cls, f) -> "LaurentVector":
        f = as_fourier(f)
        K = f.size - 1
        return cls(np.concatenate([np.zeros(K, dtype=np.complex128), f]), K)

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.halfwidth:
            return 0j
        return complex(self.coeffs[n + self.halfwidth])

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.halfwidth, self.halfwidth + 1)


def _as_laurent(a) -> LaurentVector:
    if isinstance(a, LaurentVector):
        return a
    return LaurentVector.from_fourier(a)


def one(dim: int) -> np.ndarray:
    """The constant function 1 as a Fourier vector of length ``dim``."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    e = np.zeros(dim, dtype=np.complex128)
    e[0] = 1.0
    return e


def inner(f, g) -> complex:
    """Inner product, linear in ``f`` and anti-linear in ``g``.

    Vectors of different length are compared after zero-padding the
    shorter one.
    """
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    n = min(f.size, g.size)
    return complex(np.vdot(g[:n], f[:n]))


def sharp(f) -> np.ndarray:
    """Conjugate every Fourier coefficient."""
    return np.conj(as_fourier(f))


def shift_fwd(f) -> np.ndarray:
    """Multiplication by z; the dimension grows by one."""
    f = as_fourier(f)
    return np.concatenate([[0j], f])


def shift_back(f) -> np.ndarray:
    """Adjoint of the shift: drop the constant term.

    A length-1 input maps to the zero vector of length 1.
    """
    f = as_fourier(f)
    if f.size == 1:
        return np.zeros(1, dtype=np.complex128)
    return f[1:].copy()


def szego_project(w, dim: int) -> np.ndarray:
    """Keep the modes 0..dim-1 of a Laurent (or Fourier) vector."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    w = _as_laurent(w)
    K = w.halfwidth
    return pad(w.coeffs[K:], dim)


def sobolev_norm(f, s: float) -> float:
    """Weighted l2 norm with weights max(1, n)**s.

    Mode 0 has weight 1 and mode n >= 1 has weight n**s, so that a single
    mode z**N has norm N**s.
    """
    f = as_fourier(f)
    w = np.maximum(1.0, np.arange(f.size, dtype=float)) ** (2.0 * s)
    return float(np.sqrt(np.sum(w * np.abs(f) ** 2)))


def boundary_samples(f, M: int) -> np.ndarray:
    """Values f(exp(2 pi i k / M)), k = 0..M-1."""
    f = as_fourier(f)
    if M < f.size:
        raise ValueError(f"M={M} is smaller than dim={f.size}")
    if M & (M - 1):
        raise ValueError(f"M={M} is not a power of two")
    return np.fft.ifft(pad(f, M)) * M


def lp_boundary_norm(f, p: float, M: int) -> float:
    """(mean |f|^p)^(1/p) over M equispaced boundary points."""
    vals = np.abs(boundary_samples(f, M))
    return float(np.mean(vals**p) ** (1.0 / p))


def conj_reflect(f) -> LaurentVector:
    """Boundary conjugate of a Fourier vector: coefficient -n is conj(f_n)."""
    f = as_fourier(f)
    K = f.size - 1
    return LaurentVector(np.concatenate([np.conj(f[::-1]), np.zeros(K)]), K)


def laurent_product(a, b) -> LaurentVector:
    """Exact product of two finite Fourier series.

    The convolution is evaluated by FFT on a grid of length at least the
    sum of the two lengths, so no aliasing occurs.
    """
    a = _as_laurent(a)
    b = _as_laurent(b)
    la, lb = a.coeffs.size, b.coeffs.size
    L = next_pow2(la + lb)
    conv = np.fft.ifft(np.fft.fft(a.coeffs, L) * np.fft.fft(b.coeffs, L))
    return LaurentVector(conv[: la + lb - 1], a.halfwidth + b.halfwidth)


def _parse_spec(spec):
    if isinstance(spec, dict):
        return spec
    if isinstance(spec, (str, Path)):
        text = str(spec).strip()
        if text.startswith("{"):
            return json.loads(text)
        return json.loads(Path(text).read_text())
    raise ValueError(f"unsupported symbol specification {spec!r}")


def symbol_from_spec(spec, seed: int | None = None) -> np.ndarray:
    """Build a symbol from its JSON description.

    Accepted forms::

        {"coeffs": [[re, im], ...]}
        {"preset": "plus_eps", "eps": 0.5}                      # z + eps
        {"preset": "geometric", "ratio": 0.5, "dim": 16, "seed": 3}

    ``spec`` may also be a path to a JSON file or an inline JSON string.
    The geometric preset has coefficient ratio**n with phases drawn from
    ``numpy.random.default_rng(seed)``; ``seed`` is the fallback when the
    spec does not name one.
    """
    try:
        spec = _parse_spec(spec)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"symbol: cannot read specification ({exc})") from None
    if "coeffs" in spec:
        pairs = spec["coeffs"]
        try:
            vals = [complex(float(p[0]), float(p[1])) for p in pairs]
        except (TypeError, IndexError, ValueError):
            raise ValueError("symbol.coeffs must be a list of [re, im] pairs") from None
        return as_fourier(vals)
    preset = spec.get("preset")
    if preset == "plus_eps":
        eps = float(spec.get("eps", np.nan))
        if not np.isfinite(eps):
            raise ValueError("symbol.eps must be a finite real number")
        return np.array([eps, 1.0], dtype=np.complex128)
    if preset == "geometric":
        ratio = float(spec.get("ratio", np.nan))
        dim = int(spec.get("dim", 0))
        if not 0.0 < ratio < 1.0:
            raise ValueError("symbol.ratio must lie in (0, 1)")
        if dim < 1:
            raise ValueError("symbol.dim must be a positive integer")
        s = spec.get("seed", seed)
        rng = np.random.default_rng(0 if s is None else int(s))
        phases = rng.uniform(0.0, 2.0 * np.pi, dim)
        return ratio ** np.arange(dim) * np.exp(1j * phases)
    raise ValueError(f"symbol: unknown preset {preset!r}")
