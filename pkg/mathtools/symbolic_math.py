import sympy as sp
from sympy.parsing.sympy_parser import parse_expr, standard_transformations, implicit_multiplication_application
from typing import Dict, Any, List, Optional, Union


class SymbolicMathTool:
    """
    Symbolic checks on H^n (upper half-space model) using SymPy.

    Coordinates are x1, ..., x_{n-1} and the height y. Expressions may use
    the symbols `lam` (spectral parameter) and `s` (exponent) freely.
    """

    def __init__(self):
        self.transformations = standard_transformations + (implicit_multiplication_application,)
        self.lam = sp.Symbol("lam")
        self.s = sp.Symbol("s")

    def coordinates(self, n: int) -> List[sp.Symbol]:
        """Boundary coordinates x1..x_{n-1} followed by the height y."""
        if n < 2:
            raise ValueError(f"H^n needs n >= 2, got {n}")
        xs = [sp.Symbol(f"x{i}", real=True) for i in range(1, n)]
        return xs + [sp.Symbol("y", positive=True)]

    def execute(
        self,
        operation: str,
        expression: str,
        n: int,
        eigenvalue: Optional[str] = None
    ) -> Dict[str, Any]:
        """
        Execute a symbolic operation.

        Args:
            operation: apply_laplacian, eigen_check or c_function
            expression: Function of the coordinates, or lambda for c_function
            n: Dimension of H^n
            eigenvalue: Expected eigenvalue (eigen_check only)

        Returns:
            Result dictionary
        """
        try:
            coords = self.coordinates(n)
            verification = True

            if operation == "apply_laplacian":
                expr = self._parse_expression(expression, coords)
                result = sp.simplify(self.laplace_beltrami(expr, coords))
            elif operation == "eigen_check":
                expr = self._parse_expression(expression, coords)
                result, verification = self._eigen_check(expr, coords, eigenvalue)
            elif operation == "c_function":
                lam = self._parse_expression(expression, coords)
                result = self.c_function_exact(n, lam)
            else:
                raise ValueError(f"Unknown operation: {operation}")

            return {
                "result": self._format_result(result),
                "latex": sp.latex(result) if result is not None else "",
                "verification": verification,
                "error": None
            }

        except Exception as e:
            return {
                "result": None,
                "latex": "",
                "verification": False,
                "error": f"Symbolic math error: {str(e)}"
            }

    def _parse_expression(self, expression: str, coords: List[sp.Symbol]) -> sp.Expr:
        """Parse a string expression with the coordinate symbols bound."""
        expression = expression.replace('^', '**')
        expression = expression.replace('√', 'sqrt')
        local_dict = {str(c): c for c in coords}
        local_dict.update({"lam": self.lam, "s": self.s, "i": sp.I})

        try:
            return parse_expr(expression, local_dict=local_dict, transformations=self.transformations)
        except Exception as e:
            raise ValueError(f"Failed to parse expression: {str(e)}")

    @staticmethod
    def laplace_beltrami(expr: sp.Expr, coords: List[sp.Symbol]) -> sp.Expr:
        """y^2 (sum d^2/dx_i^2 + d^2/dy^2) - (n-2) y d/dy."""
        *xs, y = coords
        n = len(coords)
        flat = sum((sp.diff(expr, c, 2) for c in coords), sp.Integer(0))
        return y ** 2 * flat - (n - 2) * y * sp.diff(expr, y)

    def _eigen_check(self, expr: sp.Expr, coords: List[sp.Symbol], eigenvalue: Optional[str]):
        ratio = sp.simplify(sp.powsimp(self.laplace_beltrami(expr, coords) / expr, force=True))
        if eigenvalue is None:
            return ratio, not (ratio.free_symbols & set(coords))
        expected = self._parse_expression(eigenvalue, coords)
        return ratio, sp.simplify(sp.expand(ratio - expected)) == 0

    @staticmethod
    def c_function_exact(n: int, lam: sp.Expr) -> sp.Expr:
        """2^{n-1-2 i lam} Gamma(2 i lam) Gamma(n/2) / (Gamma((n-1)/2) Gamma(1/2 + i lam))."""
        n = sp.Integer(n)
        value = (
            2 ** (n - 1 - 2 * sp.I * lam)
            * sp.gamma(2 * sp.I * lam)
            * sp.gamma(n / 2)
            / (sp.gamma((n - 1) / 2) * sp.gamma(sp.Rational(1, 2) + sp.I * lam))
        )
        return sp.simplify(value)

    def generalized_poisson(self, n: int) -> sp.Expr:
        """(y / (y^2 + |x|^2))^{rho - i lam} with rho = (n-1)/2."""
        *xs, y = self.coordinates(n)
        rho = sp.Rational(n - 1, 2)
        return (y / (y ** 2 + sum(x ** 2 for x in xs))) ** (rho - sp.I * self.lam)

    def generalized_poisson_check(self, n: int, lam: complex) -> Dict[str, Any]:
        """
        Exact check that the generalized Poisson kernel satisfies
        Delta u = -(lam^2 + rho^2) u for every lam, plus that eigenvalue at `lam`.
        """
        coords = self.coordinates(n)
        rho = sp.Rational(n - 1, 2)
        expr = self.generalized_poisson(n)
        ratio = self.laplace_beltrami(expr, coords) / expr
        expected = -(self.lam ** 2 + rho ** 2)
        verified = sp.simplify(sp.powsimp(ratio - expected, force=True)) == 0
        eigenvalue = complex(expected.subs(self.lam, sp.sympify(complex(lam))))
        return {
            "verification": bool(verified),
            "eigenvalue": eigenvalue,
            "expression": str(expected),
        }

    def _format_result(self, result: Any) -> Union[str, List[str]]:
        """Format result for output."""
        if result is None:
            return "No result"
        elif isinstance(result, list):
            return [str(r) for r in result]
        else:
            return str(result)

    def apply_laplacian(self, expression: str, n: int) -> Dict[str, Any]:
        """Convenience method for the Laplace-Beltrami operator."""
        return self.execute("apply_laplacian", expression, n)

    def eigen_check(self, expression: str, n: int, eigenvalue: Optional[str] = None) -> Dict[str, Any]:
        """Convenience method for eigenfunction checks."""
        return self.execute("eigen_check", expression, n, eigenvalue)

    def c_function(self, lam: str, n: int) -> Dict[str, Any]:
        """Convenience method for exact c-function values."""
        return self.execute("c_function", lam, n)

