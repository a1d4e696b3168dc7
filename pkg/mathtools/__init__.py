"""
Numerical tools for converse Fatou theorems: kernels, measures, Mellin
transforms, multiplicative convolution and hyperbolic eigenfunctions.
"""

from mathtools import errors
from mathtools import specfun
from mathtools import quadrature
from mathtools import kernels
from mathtools import mellin
from mathtools import measures
from mathtools import multconv
from mathtools import hyperbolic
from mathtools import symbolic_math
from mathtools import tool_registry

# Export main classes and functions
DomainError = errors.DomainError
IntegrationError = errors.IntegrationError
UnknownIdError = errors.UnknownIdError
UnsupportedError = errors.UnsupportedError
ConfigError = errors.ConfigError
RadialKernel = kernels.RadialKernel
RadialMeasure = measures.RadialMeasure
RadialFunction = measures.RadialFunction
LimitTrace = measures.LimitTrace
MellinSpectrum = mellin.MellinSpectrum
HyperbolicContext = hyperbolic.HyperbolicContext
HyperbolicEigenSpec = hyperbolic.HyperbolicEigenSpec
SymbolicMathTool = symbolic_math.SymbolicMathTool
get_kernel = tool_registry.get_kernel
get_measure = tool_registry.get_measure
get_function = tool_registry.get_function

__all__ = [
    'DomainError',
    'IntegrationError',
    'UnknownIdError',
    'UnsupportedError',
    'ConfigError',
    'RadialKernel',
    'RadialMeasure',
    'RadialFunction',
    'LimitTrace',
    'MellinSpectrum',
    'HyperbolicContext',
    'HyperbolicEigenSpec',
    'SymbolicMathTool',
    'get_kernel',
    'get_measure',
    'get_function',
]
