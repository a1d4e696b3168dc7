import math

import pytest

from mathtools import kernels, measures
from mathtools.errors import UnknownIdError
from mathtools.tool_registry import (
    describe,
    get_function,
    get_kernel,
    get_measure,
    list_functions,
    list_kernels,
    list_measures,
)


def test_kernel_ids():
    heat = get_kernel("heat:0.5", 1)
    assert heat.profile(0.3) == pytest.approx(kernels.heat(1, 0.5).profile(0.3))
    assert get_kernel("K:1", 2).name == "K:1:0"
    assert get_kernel("counterexample", 2).dim == 2


def test_hyperbolic_slice_dimension_must_match():
    psi = get_kernel("hyperbolic:psi:3:1i", 2)
    assert psi.dim == 2
    with pytest.raises(UnknownIdError):
        get_kernel("hyperbolic:psi:3:1i", 3)


@pytest.mark.parametrize("identifier", ["nope", "heat:abc", "poisson:1", "G:1"])
def test_bad_kernel_ids(identifier):
    with pytest.raises(UnknownIdError):
        get_kernel(identifier, 1)


def test_density_measures():
    mu = get_measure("density:one_plus_r_sin_inv:0.01", 1)
    assert mu.density is not None
    assert get_measure("density:one", 2).name == measures.lebesgue(2).name
    with pytest.raises(UnknownIdError):
        get_measure("density:imaginary_power", 1)
    with pytest.raises(UnknownIdError):
        get_measure("density", 1)


def test_mix_measure():
    mu = get_measure("mix", 2)
    assert mu.atoms[0].location == (0.5, 0.0)
    assert mu.support_radius == 1.0


def test_functions():
    f = get_function("log_oscillation:2")
    assert f(1.0) == pytest.approx(3.0)
    assert get_function("log_oscillation")(math.e) == pytest.approx(2.0 + math.cos(math.pi))


def test_listing():
    assert "hyperbolic:psi" in list_kernels()
    assert "mix" in list_measures()
    assert "one_plus_inv" in list_functions()
    entries = {e["id"]: e for e in describe("kernel")}
    assert entries["K"]["params"] == ["alpha", "beta"]
    assert "build" not in entries["K"]
