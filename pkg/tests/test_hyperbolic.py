import math

import numpy as np
import pytest

from mathtools import hyperbolic
from mathtools.errors import DomainError
from mathtools.hyperbolic import HyperbolicContext, HyperbolicEigenSpec
from mathtools.kernels import kernel_mass
from mathtools.measures import lebesgue, point_mass


@pytest.fixture
def ctx3():
    return HyperbolicContext.create(3)


def test_context(ctx3):
    assert ctx3.cn == pytest.approx(1.0 / math.pi, rel=1e-10)
    assert ctx3.rho == 1.0
    assert ctx3.boundary_dim == 2
    with pytest.raises(DomainError):
        HyperbolicContext.create(1)


def test_eigen_spec_validation(ctx3):
    assert HyperbolicEigenSpec(ctx3, 1j).eigenvalue == 0
    with pytest.raises(DomainError):
        HyperbolicEigenSpec(ctx3, 1.0)
    with pytest.raises(DomainError):
        HyperbolicEigenSpec(ctx3, 1j, C=-1.0)
    with pytest.raises(DomainError):
        HyperbolicEigenSpec(ctx3, 1 + 1j, boundary_datum=lebesgue(2))
    with pytest.raises(DomainError):
        HyperbolicEigenSpec(ctx3, 1j, boundary_datum=lebesgue(1))


@pytest.mark.parametrize("lam", [0.5j, 1 + 1j])
def test_slice_integral_matches_closed_form(ctx3, lam):
    numeric = hyperbolic.slice_integral(ctx3, lam)
    assert numeric == pytest.approx(hyperbolic.slice_integral_closed_form(ctx3, lam), rel=1e-9)


def test_slice_integral_values(ctx3):
    assert hyperbolic.slice_integral(ctx3, 1j) == pytest.approx(math.pi, rel=1e-10)
    assert hyperbolic.slice_integral(ctx3, 0.5j) == pytest.approx(2 * math.pi, rel=1e-10)


def test_psi_lambda_has_unit_mass(ctx3):
    psi = hyperbolic.psi_lambda(ctx3, 1j)
    assert psi.name == "hyperbolic:psi:3:1i"
    assert kernel_mass(psi).real == pytest.approx(1.0, rel=1e-10)


def test_eigen_residual_is_second_order(ctx3):
    spec = HyperbolicEigenSpec(ctx3, 1j)
    point = ((0.0, 0.0), 1.0)
    h = 1e-3
    coarse = hyperbolic.eigen_residual(spec, point, h)
    fine = hyperbolic.eigen_residual(spec, point, h / 2)
    assert coarse == pytest.approx(26 * h * h, rel=1e-2)
    assert coarse / fine == pytest.approx(4.0, rel=1e-2)


@pytest.mark.parametrize("lam", [0.5j, 1j, 0.5 + 1j])
def test_eigen_residual_away_from_boundary(ctx3, lam):
    spec = HyperbolicEigenSpec(ctx3, lam)
    for point in [((0.3, -0.8), 3.0), ((-1.0, 1.0), 4.5)]:
        assert hyperbolic.eigen_residual(spec, point, 1e-3) < 1e-5


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("lam", [0.5j, 1j, 0.5 + 1j])
def test_psi_lambda_unit_mass_across_parameters(n, lam):
    psi = hyperbolic.psi_lambda(HyperbolicContext.create(n), lam)
    assert abs(kernel_mass(psi) - 1.0) <= 1e-8


def test_eigen_residual_on_random_points_in_two_dimensions():
    spec = HyperbolicEigenSpec(HyperbolicContext.create(2), 0.5j)
    rng = np.random.default_rng(7)
    for x, y in zip(rng.uniform(-1.0, 1.0, 20), rng.uniform(3.0, 5.0, 20)):
        assert hyperbolic.eigen_residual(spec, ((float(x),), float(y)), 1e-3) <= 1e-5


def test_reference_fields(ctx3):
    spec = HyperbolicEigenSpec(ctx3, 1j)
    assert hyperbolic.eigen_residual(spec, ((0.2, 0.1), 2.0), 1e-3, hyperbolic.power_field(ctx3, 1.5)) < 1e-5
    assert hyperbolic.eigen_residual(spec, ((0.2, 0.1), 3.0), 1e-3, hyperbolic.poisson_field(ctx3)) < 1e-5


def test_finite_difference_guards(ctx3):
    field, _ = hyperbolic.poisson_field(ctx3)
    with pytest.raises(DomainError):
        hyperbolic.laplace_beltrami_fd(ctx3, field, (0.0, 0.0), 1e-3, 1e-3)
    with pytest.raises(DomainError):
        hyperbolic.laplace_beltrami_fd(ctx3, field, (0.0,), 1.0, 1e-3)


def test_parse_lambda():
    assert hyperbolic.parse_lambda("1i") == 1j
    assert hyperbolic.parse_lambda("0.5+1i") == 0.5 + 1j
    assert hyperbolic.parse_lambda("i") == 1j


def test_c_function(ctx3):
    assert hyperbolic.c_function(ctx3, -1j) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(DomainError):
        hyperbolic.c_function(ctx3, 1j)


def test_transform_without_datum(ctx3):
    spec = HyperbolicEigenSpec(ctx3, 1j, C=1.0)
    assert hyperbolic.poisson_transform(spec, (0.0, 0.0), 2.0) == pytest.approx(4.0)


def test_atom_transform_matches_field(ctx3):
    spec = HyperbolicEigenSpec(ctx3, 1j, boundary_datum=point_mass(2, 1.0))
    field, _ = hyperbolic.atomic_transform_field(spec)
    x0, y = (0.3, 0.0), 2.0
    expected = complex(field(np.asarray(x0), y))
    assert hyperbolic.poisson_transform(spec, x0, y) == pytest.approx(expected, rel=1e-9)


def test_lebesgue_datum_normalizes_to_one(ctx3):
    spec = HyperbolicEigenSpec(ctx3, 1j, boundary_datum=lebesgue(2))
    for y in (0.5, 2.0):
        assert hyperbolic.normalized_transform(spec, (0.0, 0.0), y) == pytest.approx(1.0, rel=1e-9)


def test_hardy_norm_of_an_atom(ctx3):
    spec = HyperbolicEigenSpec(ctx3, 1j, boundary_datum=point_mass(2, 1.0))
    estimate = hyperbolic.hardy_norm_estimate(spec, [1.0, 1.5, 2.0], [(0.0, 0.0)])
    assert estimate == pytest.approx(1.0 / math.pi, rel=1e-9)


def test_d_lambda_methods_agree_in_three_dimensions(ctx3):
    report = hyperbolic.d_lambda_report(ctx3, 1j)
    assert report["values"]["numeric"]["re"] == pytest.approx(1.0 / math.pi, rel=1e-10)
    assert report["closed_form_deviation"] < 1e-8
    assert report["c_function_deviation"] < 1e-8
    with pytest.raises(DomainError):
        hyperbolic.d_lambda(ctx3, 1j, method="guess")
