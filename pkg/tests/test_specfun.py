import math

import mpmath
import pytest

from mathtools.errors import DomainError
from mathtools.specfun import (
    ball_volume,
    beta_complex,
    dimension_constants,
    gamma_complex,
    log_gamma_complex,
    poisson_constant,
    sphere_area,
)


@pytest.mark.parametrize("z", [0.5, 1.0, 3.7, 12.25, 1 + 1j, 0.5 - 4j, 2.5 + 7j, -0.5 + 0.5j, -3.3])
def test_gamma_matches_mpmath(z):
    expected = complex(mpmath.gamma(z))
    assert abs(gamma_complex(z) - expected) <= 1e-12 * abs(expected)


def test_log_gamma_exponentiates_for_large_imaginary_parts():
    z = 1.5 + 60j
    expected = complex(mpmath.gamma(z))
    assert abs(complex(mpmath.exp(log_gamma_complex(z))) - expected) <= 1e-9 * abs(expected)


@pytest.mark.parametrize("pole", [0, -1, -7])
def test_gamma_poles_raise(pole):
    with pytest.raises(DomainError):
        gamma_complex(pole)


def test_beta_of_conjugate_pair_is_real():
    value = beta_complex(1 + 2j, 1 - 2j)
    expected = complex(mpmath.beta(1 + 2j, 1 - 2j))
    assert abs(value - expected) <= 1e-12 * abs(expected)
    assert abs(value.imag) <= 1e-14


def test_beta_requires_positive_real_parts():
    with pytest.raises(DomainError):
        beta_complex(-0.5, 1.0)


def test_geometric_constants():
    assert sphere_area(1) == pytest.approx(2.0)
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(3) == pytest.approx(4 * math.pi)
    assert ball_volume(3) == pytest.approx(4 * math.pi / 3)
    constants = dimension_constants(2)
    assert constants.ball_volume == pytest.approx(math.pi)


def test_poisson_constant_low_dimensions():
    assert poisson_constant(1) == pytest.approx(1 / math.pi)
    assert poisson_constant(2) == pytest.approx(1 / (2 * math.pi))


@pytest.mark.parametrize("n", [0, -2, 1.5, True])
def test_invalid_dimension(n):
    with pytest.raises(DomainError):
        sphere_area(n)


@pytest.mark.parametrize("z", [0.5, 7.25, 2 + 30j, -2.5 + 0.1j, 1e3 + 1e3j])
def test_log_gamma_is_principal_branch(z):
    expected = complex(mpmath.loggamma(z))
    assert abs(log_gamma_complex(z) - expected) <= 1e-11 * max(1.0, abs(expected))
