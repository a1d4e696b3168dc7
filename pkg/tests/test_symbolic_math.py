import pytest

from mathtools.symbolic_math import SymbolicMathTool


def test_generalized_poisson_eigenfunctions():
    tool = SymbolicMathTool()
    harmonic = tool.eigen_check("(y/(y**2+x1**2+x2**2))**2", 3)
    assert harmonic["error"] is None
    assert harmonic["result"] == "0"
    assert harmonic["verification"]

    cubed = tool.eigen_check("(y/(y**2+x1**2+x2**2))**3", 3)
    assert cubed["result"] == "3"
    assert cubed["verification"]


def test_power_of_height_with_expected_eigenvalue():
    result = SymbolicMathTool().eigen_check("y**s", 3, "s*(s-2)")
    assert result["verification"]


def test_apply_laplacian():
    tool = SymbolicMathTool()
    assert tool.apply_laplacian("x1", 2)["result"] == "0"
    assert tool.apply_laplacian("y", 3)["result"] == "-y"


def test_c_function_at_minus_i_rho():
    assert SymbolicMathTool().c_function("-i", 3)["result"] == "1"


def test_errors_are_reported_not_raised():
    tool = SymbolicMathTool()
    unknown = tool.execute("integrate", "y", 3)
    assert unknown["result"] is None
    assert "Unknown operation" in unknown["error"]
    assert tool.apply_laplacian("y", 1)["error"] is not None



@pytest.mark.parametrize("n, lam, eigenvalue", [
    (3, 1j, 0.0),
    (2, 0.5j, 0.0),
    (3, 0.5 + 1j, -0.25 - 1j),
])
def test_generalized_poisson_check(n, lam, eigenvalue):
    result = SymbolicMathTool().generalized_poisson_check(n, lam)
    assert result["verification"]
    assert result["eigenvalue"] == pytest.approx(eigenvalue, abs=1e-14)
