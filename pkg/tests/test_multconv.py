import math

import numpy as np
import pytest

from mathtools.errors import DomainError, UnknownIdError, UnsupportedError
from mathtools.kernels import ball, build_counterexample_kernel, gaussian, poisson
from mathtools.measures import (
    counterexample_measure,
    lebesgue,
    one_plus_inv,
    point_mass,
    restrict,
    three_plus_inv_sqrt,
)
from mathtools.tool_registry import get_measure
from mathtools.mellin import mult_transform
from mathtools.multconv import (
    H_kernel,
    check_H_identity,
    convolution_via_halfline,
    g_of_kernel,
    halfline_identity_residual,
    limit_under_convolution,
    log_bump,
    monotone_sandwich_violation,
    mult_convolve,
    sandwich_bounds,
    spherical_average,
)
from mathtools.measures import convolve_function_at_center
from mathtools.quadrature import HalfLineProfile


@pytest.mark.parametrize("n", [1, 2, 3])
def test_H_kernel_has_unit_integral(n):
    assert mult_transform(H_kernel(n), 0.0).real == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("n", [1, 2])
def test_g_mappings_carry_kernel_mass(n):
    k = gaussian(n)
    assert mult_transform(g_of_kernel(k, "mean_ratio"), 0.0).real == pytest.approx(1.0, rel=1e-10)
    spherical = mult_transform(g_of_kernel(k, "spherical"), 0.0).real
    assert spherical == pytest.approx(1.0 / (2.0 if n == 1 else 2 * math.pi), rel=1e-10)
    with pytest.raises(UnknownIdError):
        g_of_kernel(k, "volume")


def test_mult_convolve_requires_positive_point():
    with pytest.raises(DomainError):
        mult_convolve(H_kernel(1), H_kernel(1), 0.0)


@pytest.mark.parametrize("t", [0.1, 0.5, 4.0])
def test_convolution_via_halfline_matches_direct(t):
    f = one_plus_inv()
    k = poisson(1)
    direct = convolve_function_at_center(f, k, t)
    assert convolution_via_halfline(f, k, t) == pytest.approx(direct, rel=1e-9)


def test_halfline_identity_residual_small():
    residual = halfline_identity_residual(three_plus_inv_sqrt(), ball(1), [0.5, 2.0, 8.0])
    assert residual < 1e-8


def test_spherical_average_about_center_only():
    f = one_plus_inv()
    assert spherical_average(f, (0.0,), 1.0, 1) == pytest.approx(2 * 1.5)
    with pytest.raises(UnsupportedError):
        spherical_average(f, (0.3,), 1.0, 1)


def test_log_bump_is_a_probability_density():
    bump = log_bump(1.0, 2.0)
    assert mult_transform(bump, 0.0).real == pytest.approx(1.0, rel=1e-12)
    assert bump(3.0) == 0.0
    with pytest.raises(DomainError):
        log_bump(2.0, 1.0)


def test_sandwich_bounds_hold():
    assert sandwich_bounds(lebesgue(1), 2.0, [0.5, 1.0, 2.0]).holds
    assert sandwich_bounds(point_mass(1, 1.0), 1.5, [0.2, 1.0]).holds
    with pytest.raises(DomainError):
        sandwich_bounds(lebesgue(1), 1.0, [1.0])


def test_monotone_sandwich_for_lebesgue():
    assert monotone_sandwich_violation(lebesgue(2), 2.0, [0.5, 1.0]) == 0.0


def test_limit_passes_through_bounded_kernel():
    f = HalfLineProfile(evaluator=lambda s: 1.0 / (1.0 + s), name="1/(1+s)")
    grid = 0.75 ** np.arange(48)
    trace = limit_under_convolution(f, H_kernel(1), grid)
    assert trace.converged
    assert trace.classification.limit == pytest.approx(1.0, abs=1e-4)


@pytest.mark.slow
def test_H_identity_for_lebesgue():
    report = check_H_identity(lebesgue(1), gaussian(1), [0.5, 2.0])
    assert report.max_residual < 1e-6
    assert report.kernel_side == pytest.approx([1.0, 1.0], rel=1e-6)


R_GRID = np.geomspace(0.05, 20.0, 24)


@pytest.mark.slow
@pytest.mark.parametrize("mu, k", [
    (restrict(lebesgue(1), 1.0), poisson(1)),
    (counterexample_measure(1), build_counterexample_kernel(1)),
    (get_measure("mix", 1), gaussian(1)),
], ids=["restricted-lebesgue-poisson", "counterexample", "mix-gaussian"])
def test_H_identity_on_24_points(mu, k):
    report = check_H_identity(mu, k, R_GRID)
    assert report.r_grid.size == 24
    assert report.max_residual <= 1e-6


def test_sandwich_bounds_for_the_counterexample_measure():
    report = sandwich_bounds(counterexample_measure(1), 1.1, [1e-3, 0.05, 1.0, 30.0])
    assert report.holds
    assert report.gamma == 1.1
