import math

import mpmath
import numpy as np
import pytest

from mathtools.errors import IntegrationError
from mathtools.quadrature import QuadratureSettings, integrate, integrate_line, radial_integral


def test_finite_interval():
    result = integrate(np.sin, 0.0, math.pi)
    assert result.value.real == pytest.approx(2.0, rel=1e-13)
    assert result.converged


def test_discontinuity_at_a_break():
    step = lambda u: np.where(u < 0.3, 1.0, 0.0)
    result = integrate(step, -1.0, 1.0, breaks=[0.3])
    assert result.value.real == pytest.approx(1.3, rel=1e-14)


def test_whole_line_gaussian():
    result = integrate_line(lambda u: np.exp(-u * u))
    assert result.value.real == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_radial_integral_on_half_line():
    result = radial_integral(lambda r: np.exp(-r * r), 1)
    assert result.value.real == pytest.approx(0.5 * math.sqrt(math.pi), rel=1e-12)


@pytest.mark.parametrize("y", [0.0, 2.0, 9.5])
def test_radial_integral_with_oscillation_is_gamma(y):
    # int_0^inf e^{-r} r^{iy} dr = Gamma(1 + iy)
    result = radial_integral(lambda r: np.exp(-r), 1, y)
    expected = complex(mpmath.gamma(1 + 1j * y))
    assert abs(result.value - expected) <= 1e-10 * max(1.0, abs(expected)) + 1e-14


def test_upper_tail_that_does_not_decay():
    with pytest.raises(IntegrationError) as info:
        radial_integral(lambda r: np.ones_like(r), 1)
    assert info.value.tail == "upper"
    assert "[upper tail]" in str(info.value)


def test_lower_tail_that_does_not_decay():
    with pytest.raises(IntegrationError) as info:
        radial_integral(lambda r: r ** -2.0, 1, upper_radius=1.0)
    assert info.value.tail == "lower"


def test_settings_from_config_ignores_unknown_keys():
    settings = QuadratureSettings.from_config({"epsrel": 1e-10, "u_span": 40.0, "colour": "blue"})
    assert settings.epsrel == 1e-10
    assert settings.u_span == 40.0
    assert settings.high_order == QuadratureSettings().high_order
    assert QuadratureSettings.from_config(None) == QuadratureSettings()
