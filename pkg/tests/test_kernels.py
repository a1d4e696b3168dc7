import math

import numpy as np
import pytest

from mathtools import kernels
from mathtools.errors import DomainError
from mathtools.kernels import (
    ball,
    build_counterexample_kernel,
    comparison_sup,
    counterexample_bounds,
    counterexample_psi_quadrature,
    counterexample_psi_values,
    decay_check,
    dilate,
    gaussian,
    geometric_grid,
    heat,
    k_kernel,
    kernel_mass,
    normalize,
    poisson,
    power_kernel,
)


@pytest.mark.parametrize("build", [poisson, gaussian, ball, build_counterexample_kernel])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_registered_kernels_have_unit_mass(build, n):
    assert kernel_mass(build(n)) == pytest.approx(1.0, rel=1e-9)


def test_dilation_preserves_mass_and_scales_profile():
    k = poisson(2)
    kt = dilate(k, 0.01)
    assert kernel_mass(kt) == pytest.approx(1.0, rel=1e-9)
    assert kt.profile(0.0) == pytest.approx(k.profile(0.0) / 0.01 ** 2)
    with pytest.raises(DomainError):
        dilate(k, 0.0)


def test_heat_kernel_is_gaussian_at_root_time():
    h = heat(1, 0.25)
    assert h.scale == pytest.approx(0.5)
    # (4 pi t)^{-1/2} e^{-r^2/4t}
    assert h.profile(0.3) == pytest.approx(math.exp(-0.09) / math.sqrt(math.pi), rel=1e-12)
    with pytest.raises(DomainError):
        heat(1, -1.0)


def test_normalize_power_kernel():
    k = normalize(power_kernel(1, 1.0))
    # int (1+x^2)^{-1} dx = pi
    assert k.profile(0.0) == pytest.approx(1 / math.pi, rel=1e-10)
    assert kernel_mass(k) == pytest.approx(1.0, rel=1e-10)


def test_normalize_rejects_non_integrable_kernel():
    # (1+r^2)^{-1/2} / log 3 decays like 1/r on the line
    with pytest.raises(DomainError):
        normalize(k_kernel(1, 0.5, 0.0))


@pytest.mark.parametrize("s", [1e-3, 0.1, 1.0, 3.0, 40.0])
@pytest.mark.parametrize("n", [1, 2, 4])
def test_counterexample_psi_closed_form_matches_quadrature(s, n):
    closed = float(counterexample_psi_values(s, n))
    assert closed == pytest.approx(counterexample_psi_quadrature(s, n), rel=1e-10)


def test_counterexample_kernel_is_positive_and_decreasing():
    k = build_counterexample_kernel(2)
    assert kernels.is_nonnegative(k)
    assert kernels.is_monotone_decreasing(k)
    with pytest.raises(DomainError):
        build_counterexample_kernel(0)


def test_counterexample_series_branch_is_continuous():
    k = build_counterexample_kernel(1)
    below, above = k.profile(0.999e-6), k.profile(1.001e-6)
    assert below == pytest.approx(above, rel=1e-6)


def test_poisson_comparison_is_bounded():
    report = comparison_sup(poisson(3))
    assert report.sup_estimate < 2.0
    assert 0 < report.argmax[0] < 1
    assert report.argmax[1] > 1


def test_counterexample_comparison_within_bound():
    n = 1
    report = comparison_sup(build_counterexample_kernel(n))
    assert report.sup_estimate <= counterexample_bounds(n).ratio_bound


def test_comparison_rejects_grids_outside_domain():
    with pytest.raises(DomainError):
        comparison_sup(poisson(1), t_grid=np.array([0.5, 1.5]))


def test_comparison_rejects_vanishing_kernel():
    with pytest.raises(DomainError):
        comparison_sup(ball(1))


def test_decay():
    assert decay_check(poisson(1)).passed
    assert decay_check(gaussian(2)).passed
    assert not decay_check(k_kernel(1, 0.5, 0.0)).passed


def test_geometric_grid():
    grid = geometric_grid(1e-4, 1.0, 64)
    assert grid.size == 4 * 64 + 1
    assert grid[0] == pytest.approx(1e-4)
    assert grid[-1] == pytest.approx(1.0)
    with pytest.raises(DomainError):
        geometric_grid(0.0, 1.0)
