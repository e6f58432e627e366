import math

import numpy as np
import pytest

from szegoflow.errors import TruncationError
from szegoflow.experiments import (
    AppendixParams,
    InflationParams,
    appendix_f_coeffs,
    appendix_grid,
    appendix_phi_coeffs,
    appendix_report,
    b_eps,
    closed_form_sobolev,
    control_residual,
    default_dimension,
    initial_state,
    inflation_run,
    inflation_schedule,
    kernel_residual,
    phi2_h_coeffs,
    omega,
    scale_state,
    t_star,
)
from szegoflow.flow import exact_flow
from szegoflow.hardy import inner, one, sobolev_norm

from conftest import random_poly

# ---------------------------------------------------------------- inflation


@pytest.mark.parametrize("eps", [0.05, 0.3, 1.0])
def test_b_eps_examples(eps):
    assert b_eps(eps, 0) == pytest.approx(eps, abs=1e-15)
    amp = (2 + eps**2) / math.sqrt(4 + eps**2)
    assert abs(b_eps(eps, t_star(eps))) == pytest.approx(amp, rel=1e-14)
    assert t_star(eps) * omega(eps) == pytest.approx(math.pi / 2, rel=1e-15)


def test_b_eps_vanishes_with_eps():
    vals = [abs(b_eps(e, 1.0)) for e in (1e-2, 1e-4, 1e-6)]
    assert vals[-1] < 1e-5 and vals[0] > vals[1] > vals[2]


def test_b_eps_solves_the_reduced_system():
    # derivative at 0 read off from i u' = P(|u|^2 u) at u = z + eps
    eps, h = 0.4, 1e-5
    deriv = (b_eps(eps, h) - b_eps(eps, -h)) / (2 * h)
    assert deriv == pytest.approx(-1j * eps * (2 + eps**2), abs=1e-8)


def test_t_star_behaviour():
    eps = np.array([1e-1, 1e-2, 1e-3, 1e-4])
    ts = np.array([t_star(e) for e in eps])
    assert np.all(np.diff(ts) > 0)
    assert eps[-1] * ts[-1] == pytest.approx(math.pi / 2, rel=1e-7)
    with pytest.raises(ValueError):
        t_star(0)
    with pytest.raises(ValueError):
        b_eps(-1, 0)


def test_scale_state_examples(rng):
    u = random_poly(rng, 5)
    np.testing.assert_array_equal(scale_state(u, 1, 1), u)
    np.testing.assert_array_equal(scale_state([0.2, 1], 2.0, 3), [0.4, 0, 0, 2])
    v = scale_state(u, 2.5, 4)
    assert v.size == 4 * 5 + 1
    assert np.linalg.norm(v) == pytest.approx(2.5 * np.linalg.norm(u), rel=1e-14)
    with pytest.raises(ValueError):
        scale_state(u, 1, 0)


@pytest.mark.parametrize("R,Nsub", [(1.0, 2), (2.0, 3), (0.5, 5)])
def test_scaling_law_of_the_flow(rng, R, Nsub):
    u = random_poly(rng, 2, 0.4)
    t = 0.6
    direct = exact_flow(scale_state(u, R, Nsub), t, 48 * Nsub, M=16 * Nsub + 1)
    rescaled = scale_state(exact_flow(u, R**2 * t, 48, M=17), R, Nsub)
    np.testing.assert_allclose(direct, rescaled, atol=1e-6)


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("delta", [0.1, 1.0])
def test_mean_bounded_by_negative_sobolev_norm(seed, delta):
    v = random_poly(np.random.default_rng(seed), 12)
    assert abs(inner(v, one(1))) <= sobolev_norm(v, -delta)


def test_inflation_params_validation():
    InflationParams(0.25, 0.2, 3, 16)
    for bad in [dict(delta=0), dict(eps=-1), dict(R=float("nan")), dict(Nsub=0), dict(Nsub=1.5)]:
        kw = dict(delta=0.25, eps=0.2, R=3.0, Nsub=16) | bad
        with pytest.raises(ValueError, match=next(iter(bad))):
            InflationParams(**kw)


def test_initial_state_and_closed_form():
    p = InflationParams(0.25, 0.2, 3.0, 16)
    v = initial_state(p)
    assert v[0] == pytest.approx(0.6) and v[16] == 3.0 and v.size == 17
    assert sobolev_norm(v, -0.25) == pytest.approx(closed_form_sobolev(p), rel=1e-14)
    assert default_dimension(p) == 4 * 17 * 8


def test_inflation_run_small_case():
    p = InflationParams(0.5, 0.4, 1.5, 2)
    r = inflation_run(p)
    assert r.rel_err < 1e-8
    assert r.observable <= np.linalg.norm(initial_state(p))
    assert len(r.row()) == 9
    with pytest.raises(TruncationError):
        inflation_run(p, N=4)
    with pytest.raises(TruncationError):
        inflation_run(InflationParams(0.25, 0.2, 3.0, 400))


def test_schedule_trend():
    sched = inflation_schedule([0.4, 0.2, 0.1], 0.25)
    assert [p.Nsub for p in sched] == [math.ceil(e ** -8 * (1 - 1e-12)) for e in (0.4, 0.2, 0.1)]
    sob = [closed_form_sobolev(p) for p in sched]
    obs = [p.predicted_observable for p in sched]
    t = [p.t_eps for p in sched]
    assert sob[0] > sob[1] > sob[2]
    assert obs[0] < obs[1] < obs[2]
    assert t[0] > t[1] > t[2]


# ---------------------------------------------------------------- appendix

SMALL = AppendixParams(eps=0.3, grid_M=1 << 12, trunc_K=16, dim_N=64)


def _taylor_oracle(eps, count, r=0.9, M=4096):
    # Cauchy integral on |z| = r, where f is analytic and smooth
    z = r * np.exp(2j * np.pi * np.arange(M) / M)
    F = np.exp(0.5 * (np.log1p(-1j * z) - np.log1p(1j * z)))
    H = np.exp(0.5 * eps * np.log1p(z * z))
    return (np.fft.fft(F * H + H / F) / M)[:count] / r ** np.arange(count)


def test_appendix_params_validation():
    with pytest.raises(ValueError, match="eps"):
        AppendixParams(eps=0.5)
    with pytest.raises(ValueError, match="grid_M"):
        AppendixParams(eps=0.3, grid_M=1000)
    with pytest.raises(ValueError, match="trunc_K"):
        AppendixParams(eps=0.3, trunc_K=0)
    with pytest.raises(ValueError, match="dim_N"):
        AppendixParams(eps=0.3, trunc_K=8, dim_N=4)


def test_grid_is_a_quadrature_rule():
    g = appendix_grid(1 << 10)
    assert g.weights.sum() == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(g.z_minus_i, g.z - 1j, atol=1e-15)
    np.testing.assert_allclose(g.z_plus_i, g.z + 1j, atol=1e-15)
    assert np.min(np.abs(g.z_minus_i)) > 0 and np.min(np.abs(g.z_plus_i)) > 0
    # trigonometric moments
    np.testing.assert_allclose(g.analysis(np.ones(g.size), -5, 11), np.eye(11)[5], atol=1e-13)


@pytest.mark.parametrize("eps", [0.1, 0.3, 0.45])
def test_f_coefficients_match_taylor_oracle(eps):
    p = AppendixParams(eps=eps, grid_M=1 << 14, trunc_K=16, dim_N=64)
    np.testing.assert_allclose(appendix_f_coeffs(p, 40), _taylor_oracle(eps, 40), atol=1e-9)


def test_f_coefficient_examples():
    f = appendix_f_coeffs(SMALL, 8)
    assert f[0] == pytest.approx(2.0, abs=1e-12)
    assert f[2] == pytest.approx(-0.7, abs=1e-12)
    with pytest.raises(ValueError):
        appendix_f_coeffs(SMALL, SMALL.grid_M // 4 + 1)


def test_f_norm_converges():
    f = appendix_f_coeffs(AppendixParams(eps=0.3, grid_M=1 << 14), 4096)
    partial = np.cumsum(np.abs(f) ** 2)
    full = appendix_report(AppendixParams(eps=0.3, grid_M=1 << 14)).f_norm ** 2
    assert partial[-1] < full
    gaps = full - partial[[255, 1023, 4095]]
    assert gaps[0] > gaps[1] > gaps[2] > 0


def test_phi_coefficients_are_hermitian():
    phi = appendix_phi_coeffs(SMALL)
    c = phi.coeffs
    np.testing.assert_allclose(c, c[::-1].conj(), atol=1e-10)
    assert abs(phi[0].imag) < 1e-12
    assert phi.halfwidth == SMALL.dim_N


@pytest.mark.slow
def test_grid_refinement_stability():
    a = AppendixParams(eps=0.3, grid_M=1 << 15)
    b = AppendixParams(eps=0.3, grid_M=1 << 16)
    assert np.max(np.abs(appendix_f_coeffs(a, 512) - appendix_f_coeffs(b, 512))) < 1e-6
    assert np.max(np.abs(appendix_phi_coeffs(a).coeffs - appendix_phi_coeffs(b).coeffs)) < 1e-6


def test_small_grid_residual_and_control():
    assert kernel_residual(SMALL) < 1e-6
    assert control_residual(SMALL, seed=1) > 0.1


@pytest.mark.parametrize("grid_M", [1 << 14, 1 << 16])
def test_phi2_h_has_unit_analytic_part(grid_M):
    c = phi2_h_coeffs(AppendixParams(eps=0.3, grid_M=grid_M))
    assert abs(c[0] - 1) < 1e-10
    assert np.max(np.abs(c[1:])) < 1e-10


def test_report_row():
    r = appendix_report(SMALL, seed=3)
    assert r.row() == [0.3, 1 << 12, 64, 16, r.residual]
    assert r.truncated_residual > r.residual
