import numpy as np
import pytest

from szegoflow import kernels
from szegoflow.flow import szego_rhs as reference_rhs

from conftest import random_poly


def test_backend_is_reported():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("n", [1, 2, 7, 64, 130])
def test_rhs_matches_exact_convolution(backend, rng, n):
    u = random_poly(rng, n - 1)
    np.testing.assert_allclose(backend.szego_rhs(u), reference_rhs(u), atol=1e-11 * n)


def test_rhs_examples(backend):
    c = 0.7 + 0.2j
    np.testing.assert_allclose(backend.szego_rhs([c, 0, 0]), [-1j * abs(c) ** 2 * c, 0, 0], atol=1e-15)
    np.testing.assert_allclose(backend.szego_rhs([0, 1, 0, 0]), [0, -1j, 0, 0], atol=1e-15)


def test_rk4_run_records_and_agrees(backend, rng):
    u = 0.3 * random_poly(rng, 15)
    steps, states = backend.rk4_run(u, 250, 1e-3, 10)
    assert steps[0] == 0 and steps[-1] == 250
    assert list(steps) == [0, *range(10, 251, 10)]
    np.testing.assert_array_equal(states[0], u)
    ref_steps, ref_states = kernels.rk4_run(u, 250, 1e-3, 10)
    np.testing.assert_array_equal(steps, ref_steps)
    np.testing.assert_allclose(states, ref_states, atol=1e-13)


def test_rk4_run_detects_blow_up(backend):
    with pytest.raises(FloatingPointError):
        backend.rk4_run(np.array([1e200, 0j]), 5, 1.0, 1)


@pytest.mark.parametrize("n0,count", [(0, 1), (0, 100), (-40, 81), (7, 200)])
def test_nudft_against_direct_sums(backend, rng, n0, count):
    theta = rng.uniform(-1, 7, 300)
    vals = rng.standard_normal(300) + 1j * rng.standard_normal(300)
    modes = n0 + np.arange(count)
    direct = np.exp(-1j * np.outer(modes, theta)) @ vals
    np.testing.assert_allclose(backend.nudft_analysis(theta, vals, n0, count), direct, atol=1e-11)
    coeffs = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    direct_syn = np.exp(1j * np.outer(theta, modes)) @ coeffs
    np.testing.assert_allclose(backend.nudft_synthesis(theta, coeffs, n0), direct_syn, atol=1e-11)


def test_nudft_on_uniform_grid_is_fft(backend, rng):
    M = 64
    theta = 2 * np.pi * np.arange(M) / M
    vals = rng.standard_normal(M) + 0j
    np.testing.assert_allclose(backend.nudft_analysis(theta, vals, 0, M), np.fft.fft(vals), atol=1e-11)
