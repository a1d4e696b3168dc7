import math

import mpmath
import numpy as np
import pytest
from scipy import integrate as scipy_integrate

from mathtools.errors import DomainError, UnknownIdError
from mathtools import hyperbolic
from mathtools.kernels import ball, build_counterexample_kernel, dilate, gaussian, k_kernel, poisson
from mathtools.mellin import (
    closed_form_mellin,
    kernel_closed_form_mellin,
    mult_transform,
    quoted_poisson_mellin,
    radial_mellin,
    radial_to_mult,
    tauberian_check,
)
from mathtools.multconv import H_kernel, mult_convolve
from mathtools.quadrature import HalfLineProfile


def _close(a, b, tol=1e-9):
    # transforms of unit-mass kernels are bounded by 1
    return abs(a - b) <= tol


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("y", [0.0, 1.5, 4.0])
@pytest.mark.parametrize("build", [gaussian, poisson, ball, build_counterexample_kernel])
def test_quadrature_matches_closed_form(build, n, y):
    k = build(n)
    assert _close(radial_mellin(k, y), kernel_closed_form_mellin(k, y))


@pytest.mark.parametrize("build", [gaussian, poisson, ball, build_counterexample_kernel])
def test_unit_mass_kernels_transform_to_one_at_zero(build):
    assert _close(kernel_closed_form_mellin(build(2), 0.0), 1.0, tol=1e-10)


def test_dilation_multiplies_by_phase():
    k = dilate(gaussian(1), 2.0)
    expected = kernel_closed_form_mellin(gaussian(1), 1.0) * 2.0 ** 1j
    assert _close(radial_mellin(k, 1.0), expected)
    assert _close(kernel_closed_form_mellin(k, 1.0), expected)


def test_gaussian_against_scipy_quad():
    y = 2.0
    w = gaussian(1)

    def part(func):
        value, _ = scipy_integrate.quad(lambda u: w.profile(math.exp(u)) * math.exp(u) * func(y * u),
                                        -50.0, 6.0, limit=400, epsabs=1e-14, epsrel=1e-12)
        return value

    expected = 2.0 * complex(part(math.cos), part(math.sin))
    assert _close(radial_mellin(w, y), expected, tol=1e-10)


def test_counterexample_kernel_vanishes_at_pi():
    k = build_counterexample_kernel(1)
    assert abs(kernel_closed_form_mellin(k, math.pi)) < 1e-15
    assert abs(radial_mellin(k, math.pi)) < 1e-10


def test_tauberian_check_finds_the_zero_at_pi():
    spectrum = tauberian_check(build_counterexample_kernel(1), 2.5, 3.5, 11)
    assert len(spectrum.zeros) == 1
    zero = spectrum.zeros[0]
    assert zero.y == pytest.approx(math.pi, abs=1e-5)
    assert zero.bracket[0] <= zero.y <= zero.bracket[1]
    summary = spectrum.to_dict()
    assert summary["points"] == 11
    assert summary["kernel"] == "counterexample"


def test_tauberian_check_gaussian_has_no_zero():
    spectrum = tauberian_check(gaussian(1), -8.0, 8.0, 33)
    assert spectrum.zeros == []
    assert spectrum.min_modulus > 1e-6


def test_tauberian_check_rejects_bad_windows():
    with pytest.raises(DomainError):
        tauberian_check(gaussian(1), 0.0, 1.0, 2)
    with pytest.raises(DomainError):
        tauberian_check(gaussian(1), 1.0, 1.0, 5)


def test_mult_transform_is_gamma():
    # int s e^{-s} s^{-iy} ds/s = Gamma(1 - iy)
    g = HalfLineProfile(evaluator=lambda s: s * np.exp(-s), name="s exp(-s)")
    value = mult_transform(g, 1.25)
    assert _close(value, complex(mpmath.gamma(1 - 1.25j)), tol=1e-10)


def test_radial_to_mult_variants():
    assert radial_to_mult(0.5 + 1j, 1, "mean_ratio") == 0.5 + 1j
    assert _close(radial_to_mult(2.0, 1, "spherical"), 1.0)
    with pytest.raises(UnknownIdError):
        radial_to_mult(1.0, 1, "neither")


def test_closed_form_registry_errors():
    with pytest.raises(UnknownIdError):
        closed_form_mellin("lorentzian", (), 1, 0.0)
    with pytest.raises(DomainError):
        closed_form_mellin("power", (0.5,), 1, 0.0)
    with pytest.raises(DomainError):
        closed_form_mellin("hyperbolic_psi", (3, 1j), 1, 0.0)


def test_hyperbolic_slice_closed_form_is_normalized():
    assert _close(closed_form_mellin("hyperbolic_psi", (3, 1j), 2, 0.0), 1.0)


def test_quoted_poisson_constant_differs_from_integral():
    assert quoted_poisson_mellin(1, 0.0) == pytest.approx(0.5, rel=1e-12)
    assert kernel_closed_form_mellin(poisson(1), 0.0) == pytest.approx(1.0, rel=1e-12)


Y_GRID = np.linspace(-8.0, 8.0, 81)


def _gamma_profile():
    return HalfLineProfile(evaluator=lambda s: s * np.exp(-s), name="s exp(-s)")


def _gamma_star_h1(t):
    # (s e^{-s}) * H_1 = (1 - e^{-t}(1 + t)) / t
    t = np.asarray(t, dtype=float)
    return (-np.expm1(-t) - t * np.exp(-t)) / t


def _h1_star_h2(t):
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(t >= 1.0, 2.0 * (t - 1.0) / t ** 2, 0.0)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("y", [0.0, 0.7, -3.0])
def test_mult_transform_of_H(n, y):
    assert _close(mult_transform(H_kernel(n), y), n / complex(n, y), tol=1e-10)


def test_mult_transform_of_log_interval_indicator():
    chi = HalfLineProfile(
        evaluator=lambda s: np.where((s >= math.exp(-1.0)) & (s <= math.e), 1.0, 0.0),
        name="chi[1/e, e]",
        breaks=(math.exp(-1.0), math.e),
    )
    for y in (0.5, 2.0, 7.0):
        assert _close(mult_transform(chi, y), 2.0 * math.sin(y) / y, tol=1e-10)
    assert abs(mult_transform(chi, math.pi)) < 1e-10


def test_convolution_theorem():
    f, g = _gamma_profile(), H_kernel(1)
    for t in (0.01, 0.5, 3.0, 40.0):
        assert mult_convolve(f, g, t) == pytest.approx(float(_gamma_star_h1(t)), rel=1e-10)
    fg = HalfLineProfile(evaluator=_gamma_star_h1, name="(s exp(-s)) * H1")
    for y in (0.0, 0.7, 2.5):
        product = complex(mpmath.gamma(1 - 1j * y)) / complex(1.0, y)
        assert _close(mult_transform(fg, y), product, tol=1e-9)


def test_mult_convolve_is_associative():
    f = _gamma_profile()
    fg = HalfLineProfile(evaluator=_gamma_star_h1, name="(s exp(-s)) * H1")
    gh = HalfLineProfile(evaluator=_h1_star_h2, name="H1 * H2", breaks=(1.0,))
    for t in (0.2, 1.5, 9.0):
        assert mult_convolve(H_kernel(1), H_kernel(2), t) == pytest.approx(float(_h1_star_h2(t)), abs=1e-12)
        left = mult_convolve(fg, H_kernel(2), t)
        right = mult_convolve(f, gh, t)
        assert left == pytest.approx(right, rel=1e-9)


@pytest.mark.parametrize("build", [gaussian, poisson, build_counterexample_kernel])
def test_radial_mellin_conjugate_symmetry(build):
    k = build(2)
    for y in (0.4, 2.3, 6.0):
        assert _close(radial_mellin(k, -y), radial_mellin(k, y).conjugate())


def test_dilations_compose():
    k = poisson(2)
    twice = dilate(dilate(k, 0.5), 3.0)
    once = dilate(k, 1.5)
    r = np.geomspace(1e-3, 1e3, 13)
    assert np.allclose(twice.profile(r), once.profile(r), rtol=1e-14, atol=0.0)
    assert _close(radial_mellin(twice, 2.0), radial_mellin(once, 2.0))


def _slice_kernel(n):
    return hyperbolic.psi_lambda(hyperbolic.HyperbolicContext.create(n + 1), 1j)


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("build", [gaussian, poisson, ball, build_counterexample_kernel, _slice_kernel])
def test_closed_forms_on_the_full_frequency_window(build, n):
    k = build(n)
    worst = max(abs(radial_mellin(k, float(y)) - kernel_closed_form_mellin(k, float(y))) for y in Y_GRID)
    assert worst <= 1e-7


def _k_kernel_oracle(n, y):
    # omega_{n-1} int K(e^u) e^{nu} e^{iyu} du, by QAWO on a window outside of which K is negligible
    k = k_kernel(n, (n + 1) / 2.0, 1.0)
    area = 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)

    def amplitude(u):
        return float(k.profile(math.exp(u))) * math.exp(n * u)

    parts = []
    for weight in ("cos", "sin"):
        value, _ = scipy_integrate.quad(amplitude, -40.0, 40.0, weight=weight, wvar=y, limit=800,
                                        epsabs=1e-13, epsrel=1e-12)
        parts.append(value)
    return area * complex(*parts)


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3])
def test_k_kernel_against_independent_quadrature(n):
    k = k_kernel(n, (n + 1) / 2.0, 1.0)
    for y in Y_GRID[::8]:
        assert abs(radial_mellin(k, float(y)) - _k_kernel_oracle(n, float(y))) <= 1e-7
