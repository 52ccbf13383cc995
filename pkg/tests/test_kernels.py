"""Jump kernels: state functionals, rate laws, post-jump distributions."""

import math

import numpy as np
import pytest

import fluxjump as fj
from support import constant_state

# independently recomputed closed forms
RATE_AT_UNIT_WIP = 3.1606027941427883  # 5 * (1 - exp(-1))
HALF_WIDTH_MAX = 0.09486832980505137  # sqrt(0.009)
HALF_WIDTH_MIN = 0.0670820393249937  # sqrt(0.0045)

GRID = fj.Grid(-2.0, 2.0, 400)  # dx = 0.01, window edges grid-aligned


def linear_profile():
    return fj.sample_function(GRID, lambda x: np.clip(x, 0.0, None))


# ---------------------------------------------------------------------------
# state functionals


def test_wip_zero_density():
    assert fj.wip(constant_state(GRID, 0.0), 0.0, 1.0) == 0.0


def test_wip_constant_density():
    got = fj.wip(constant_state(GRID, 0.7), 0.25, 1.3)
    assert got == pytest.approx(0.7 * 1.05, abs=1e-12)


def test_wip_linear_density_midpoint_exact_when_aligned():
    # integral of x over [0, 1] is 1/2; midpoint rule is exact for linear
    # data when the window edges align with cell edges
    assert fj.wip(linear_profile(), 0.0, 1.0) == pytest.approx(0.5, abs=1e-12)


def test_wip_linear_density_unaligned_window_second_order():
    grid = fj.Grid(-0.337, 1.563, 190)
    u = fj.sample_function(grid, lambda x: np.clip(x, 0.0, None))
    got = fj.wip(u, 0.0, 1.0)
    assert abs(got - 0.5) <= grid.dx**2


def test_wip_window_must_sit_inside_grid():
    with pytest.raises(ValueError):
        fj.wip(constant_state(GRID, 1.0), -3.0, 1.0)
    with pytest.raises(ValueError):
        fj.wip(constant_state(GRID, 1.0), 1.0, 1.0)


def test_coverage_fraction_extremes():
    assert fj.coverage_fraction(0.4, constant_state(GRID, 0.4)) == 1.0
    assert fj.coverage_fraction(0.4, constant_state(GRID, 1.0)) == 1.0
    assert fj.coverage_fraction(5.0, constant_state(GRID, 1.0)) == 0.0


def test_coverage_fraction_linear_profile():
    got = fj.coverage_fraction(0.3, linear_profile())
    assert abs(got - 0.7) <= GRID.dx


# ---------------------------------------------------------------------------
# production kernel


def production_kernel(lambda0=5.0, lambda1=1.0, rate_bound=None):
    params = fj.ProductionKernelParams(
        a=0.0, b=1.0, lambda0=lambda0, lambda1=lambda1, alpha_bar=0.0, sigma_sq=0.01
    )
    return fj.ProductionGaussianKernel(params, rate_bound=rate_bound)


def test_production_rate_zero_wip():
    kernel = production_kernel()
    assert kernel.total_rate(0.0, 0.0, constant_state(GRID, 0.0)) == 0.0


def test_production_rate_saturates_at_lambda0():
    kernel = production_kernel()
    rate = kernel.total_rate(0.0, 0.0, constant_state(GRID, 1000.0))
    assert rate == pytest.approx(5.0, abs=1e-6)


def test_production_rate_unit_wip_closed_form():
    kernel = production_kernel()
    state = constant_state(GRID, 1.0)
    assert kernel.functional_value(0.0, 0.0, state) == pytest.approx(1.0, abs=1e-12)
    got = kernel.total_rate(0.0, 0.0, state)
    assert got == pytest.approx(RATE_AT_UNIT_WIP, abs=1e-12)


def test_production_rate_never_exceeds_bound():
    kernel = production_kernel()
    rng = np.random.default_rng(1)
    for _ in range(20):
        u = fj.GridFunction(GRID, rng.uniform(0.0, 50.0, GRID.n_cells))
        rate = kernel.total_rate(0.0, 0.0, u)
        assert 0.0 <= rate <= kernel.lambda_max


def test_production_gaussian_draw_statistics():
    kernel = production_kernel()
    rng = np.random.default_rng(8)
    state = constant_state(GRID, 1.0)
    draws = np.array([kernel.sample_post_jump(0.0, 0.0, state, rng) for _ in range(10_000)])
    sigma = math.sqrt(0.01)
    assert abs(draws.mean()) <= 3.0 * sigma / 100.0
    assert np.var(draws, ddof=1) == pytest.approx(0.01, rel=0.10)


def test_production_draws_seed_determinism():
    kernel = production_kernel()
    state = constant_state(GRID, 1.0)
    a = [kernel.sample_post_jump(0.0, 0.0, state, np.random.default_rng(3)) for _ in range(1)]
    b = [kernel.sample_post_jump(0.0, 0.0, state, np.random.default_rng(3)) for _ in range(1)]
    c = [kernel.sample_post_jump(0.0, 0.0, state, np.random.default_rng(4)) for _ in range(1)]
    assert a == b
    assert a != c


def test_production_rate_bound_override():
    kernel = production_kernel(lambda0=0.0, rate_bound=2.0)
    assert kernel.lambda_max == 2.0
    assert kernel.total_rate(0.0, 0.0, constant_state(GRID, 1.0)) == 0.0
    with pytest.raises(ValueError):
        production_kernel(lambda0=5.0, rate_bound=1.0)


def test_production_params_validation():
    with pytest.raises(ValueError):
        fj.ProductionKernelParams(a=1.0, b=0.0, lambda0=1.0, lambda1=1.0,
                                  alpha_bar=0.0, sigma_sq=0.01)
    with pytest.raises(ValueError):
        fj.ProductionKernelParams(a=0.0, b=1.0, lambda0=-1.0, lambda1=1.0,
                                  alpha_bar=0.0, sigma_sq=0.01)
    with pytest.raises(ValueError):
        fj.ProductionKernelParams(a=0.0, b=1.0, lambda0=1.0, lambda1=1.0,
                                  alpha_bar=0.0, sigma_sq=0.0)


# ---------------------------------------------------------------------------
# traffic kernel


def traffic_kernel():
    return fj.TrafficUniformKernel(
        fj.TrafficKernelParams(lambda0=3.0, lambda1=10.0, alpha0=0.4)
    )


def test_traffic_rate_endpoints_and_midpoint():
    kernel = traffic_kernel()
    assert kernel.total_rate(0.4, 0.0, constant_state(GRID, 0.0)) == 3.0
    assert kernel.total_rate(0.4, 0.0, constant_state(GRID, 1.0)) == 10.0
    half = fj.sample_function(GRID, lambda x: np.where(x < 0.5, 1.0, 0.0))
    assert kernel.total_rate(0.4, 0.0, half) == pytest.approx(6.5, abs=1e-12)
    assert kernel.functional_value(0.4, 0.0, half) == pytest.approx(0.5, abs=1e-12)


def test_traffic_half_width_closed_forms():
    kernel = traffic_kernel()
    low = kernel.half_width(0.4, constant_state(GRID, 0.0))  # V = 0
    high = kernel.half_width(0.4, constant_state(GRID, 1.0))  # V = 1
    assert low == pytest.approx(HALF_WIDTH_MIN, abs=1e-15)
    assert high == pytest.approx(HALF_WIDTH_MAX, abs=1e-15)
    assert kernel.params.max_half_width == pytest.approx(HALF_WIDTH_MAX, abs=1e-15)


def test_traffic_draws_stay_in_support():
    kernel = traffic_kernel()
    rng = np.random.default_rng(9)
    state = constant_state(GRID, 0.0)  # V = 0, narrowest support
    draws = np.array([kernel.sample_post_jump(0.4, 0.0, state, rng) for _ in range(10_000)])
    assert np.all(draws >= 0.4 - HALF_WIDTH_MIN)
    assert np.all(draws <= 0.4 + HALF_WIDTH_MIN)
    se = (2.0 * HALF_WIDTH_MIN / math.sqrt(12.0)) / 100.0
    assert abs(draws.mean() - 0.4) <= 3.0 * se


def test_traffic_params_validation():
    with pytest.raises(ValueError):
        fj.TrafficKernelParams(lambda0=12.0, lambda1=10.0, alpha0=0.4)
    with pytest.raises(ValueError):
        fj.TrafficKernelParams(lambda0=0.0, lambda1=10.0, alpha0=0.4)
    with pytest.raises(ValueError):
        # post-jump support would cross zero
        fj.TrafficKernelParams(lambda0=3.0, lambda1=10.0, alpha0=0.05)
    with pytest.raises(ValueError):
        fj.TrafficKernelParams(lambda0=3.0, lambda1=10.0, alpha0=0.4,
                               half_width_scale=0.0)


# ---------------------------------------------------------------------------
# constant-rate kernel


def test_constant_kernel_contract():
    kernel = fj.ConstantRateKernel(2.0, post_jump_low=0.2, post_jump_high=0.8)
    state = constant_state(GRID, 0.0)
    assert kernel.lambda_max == 2.0
    assert kernel.total_rate(0.5, 1.0, state) == 2.0
    assert kernel.functional_value(0.5, 1.0, state) is None
    draw = kernel.sample_post_jump(0.5, 1.0, state, np.random.default_rng(0))
    assert 0.2 <= draw <= 0.8
    with pytest.raises(ValueError):
        fj.ConstantRateKernel(-1.0)
    with pytest.raises(ValueError):
        fj.ConstantRateKernel(1.0, post_jump_low=0.9, post_jump_high=0.1)
