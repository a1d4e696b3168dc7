"""
Registries of kernels, measures and boundary functions addressable by string id.

Ids are colon-separated: a registered head followed by numeric parameters,
e.g. "heat:0.5", "K:1:1", "density:one_plus_r", "hyperbolic:psi:3:1i".
"""

from dataclasses import replace
from typing import Any, Callable, Dict, List, Optional, Tuple
import logging
import math

from mathtools import hyperbolic, kernels, measures
from mathtools.errors import UnknownIdError
from mathtools.kernels import RadialKernel
from mathtools.measures import Atom, RadialFunction, RadialMeasure


# Global registries
KERNEL_REGISTRY: Dict[str, Dict[str, Any]] = {}
MEASURE_REGISTRY: Dict[str, Dict[str, Any]] = {}
FUNCTION_REGISTRY: Dict[str, Dict[str, Any]] = {}

logger = logging.getLogger("mathtools.tool_registry")

_REGISTRIES = {
    "kernel": KERNEL_REGISTRY,
    "measure": MEASURE_REGISTRY,
    "function": FUNCTION_REGISTRY,
}


def _register(
    kind: str,
    name: str,
    description: str,
    params: Tuple[str, ...],
    build_fn: Callable,
    defaults: Tuple[Any, ...] = (),
):
    _REGISTRIES[kind][name] = {
        "name": name,
        "description": description,
        "params": params,
        "defaults": defaults,
        "build": build_fn,
    }
    logger.debug(f"Registered {kind}: {name}")


def register_kernel(name: str, description: str, params: Tuple[str, ...], build_fn: Callable, defaults: Tuple = ()):
    """
    Register a kernel family.

    Args:
        name: Id head
        description: One-line description
        params: Parameter names following the head in an id
        build_fn: Called as build_fn(n, *params) and returning a RadialKernel
        defaults: Values for trailing parameters that may be omitted
    """
    _register("kernel", name, description, params, build_fn, defaults)


def register_measure(name: str, description: str, params: Tuple[str, ...], build_fn: Callable, defaults: Tuple = ()):
    """Register a measure family; build_fn(n, *params) returns a RadialMeasure."""
    _register("measure", name, description, params, build_fn, defaults)


def register_function(name: str, description: str, params: Tuple[str, ...], build_fn: Callable, defaults: Tuple = ()):
    """Register a radial function family; build_fn(*params) returns a RadialFunction."""
    _register("function", name, description, params, build_fn, defaults)


def _split_id(kind: str, identifier: str) -> Tuple[Dict[str, Any], List[str]]:
    ensure_registered()
    registry = _REGISTRIES[kind]
    parts = identifier.strip().split(":")
    # longest registered head wins ("hyperbolic:psi" before "hyperbolic")
    for cut in range(len(parts), 0, -1):
        head = ":".join(parts[:cut])
        if head in registry:
            entry, args = registry[head], parts[cut:]
            break
    else:
        raise UnknownIdError(f"unknown {kind} id '{identifier}'; known: {sorted(registry)}")

    if entry["name"] == "density" and args:
        args = [":".join(args)]
    params, defaults = entry["params"], entry["defaults"]
    if len(args) > len(params) or len(args) < len(params) - len(defaults):
        raise UnknownIdError(
            f"{kind} id '{identifier}' expects parameters {list(params)}, got {len(args)}"
        )
    missing = len(params) - len(args)
    if missing:
        args = args + [str(d) for d in defaults[len(defaults) - missing:]]
    return entry, args


def _to_float(identifier: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UnknownIdError(f"parameter '{text}' of '{identifier}' is not a number") from None


def get_kernel(identifier: str, n: int) -> RadialKernel:
    """
    Build a kernel on R^n from its id. Hyperbolic slices carry their own
    dimension; a mismatch with n raises UnknownIdError.
    """
    entry, args = _split_id("kernel", identifier)
    if entry["name"] == "hyperbolic:psi":
        n_hyp, lam = int(_to_float(identifier, args[0])), hyperbolic.parse_lambda(args[1])
        if n_hyp - 1 != n:
            raise UnknownIdError(f"'{identifier}' is a kernel on R^{n_hyp - 1}, requested R^{n}")
        return entry["build"](n, n_hyp, lam)
    return entry["build"](n, *(_to_float(identifier, a) for a in args))


def get_measure(identifier: str, n: int) -> RadialMeasure:
    entry, args = _split_id("measure", identifier)
    if entry["name"] == "density":
        return entry["build"](n, ":".join(args))
    return entry["build"](n, *(_to_float(identifier, a) for a in args))


def get_function(identifier: str) -> RadialFunction:
    entry, args = _split_id("function", identifier)
    return entry["build"](*(_to_float(identifier, a) for a in args))


def list_kernels() -> List[str]:
    ensure_registered()
    return list(KERNEL_REGISTRY.keys())


def list_measures() -> List[str]:
    ensure_registered()
    return list(MEASURE_REGISTRY.keys())


def list_functions() -> List[str]:
    ensure_registered()
    return list(FUNCTION_REGISTRY.keys())


def describe(kind: str) -> List[Dict[str, Any]]:
    """Registry entries without their builders, for `list` style output."""
    ensure_registered()
    return [
        {"id": e["name"], "params": list(e["params"]), "description": e["description"]}
        for e in _REGISTRIES[kind].values()
    ]


# Standard families

def _density_measure(n: int, spec: str) -> RadialMeasure:
    if not spec:
        raise UnknownIdError("density measures are written density:<family>[:param]")
    f = get_function(spec)
    if f.complex_valued or not f.nonnegative:
        raise UnknownIdError(f"function '{spec}' is not a density")
    if f.translation_invariant:
        return measures.lebesgue(n)
    return measures.absolutely_continuous(n, f, name=f"density:{f.name}")


def _mix_measure(n: int) -> RadialMeasure:
    """Lebesgue on the closed unit ball plus a unit atom at distance 1/2 from the center."""
    base = measures.restrict(measures.lebesgue(n), 1.0)
    atom = Atom(location=(0.5,) + (0.0,) * (n - 1), mass=1.0)
    return replace(base, atoms=(atom,), name="mix")


def _register_standard_kernels():
    register_kernel("poisson", "Poisson kernel of the upper half-space", (), kernels.poisson)
    register_kernel("gaussian", "Gauss-Weierstrass kernel at unit time", (), kernels.gaussian)
    register_kernel("heat", "Gauss-Weierstrass kernel at time t", ("t",), kernels.heat)
    register_kernel(
        "K", "(1+r^2)^-alpha / log(2+r^beta)", ("alpha", "beta"),
        kernels.k_kernel,
        defaults=(0.0,),
    )
    register_kernel("G", "exp(-alpha r^beta)", ("alpha", "beta"), kernels.g_kernel)
    register_kernel("power", "(1+r^2)^-alpha", ("alpha",), kernels.power_kernel)
    register_kernel("ball", "normalized indicator of B(0,1)", (), kernels.ball)
    register_kernel(
        "counterexample", "kernel with a radial Mellin zero at y = pi", (),
        kernels.build_counterexample_kernel,
    )
    register_kernel(
        "hyperbolic:psi", "slice psi^lambda of the generalized Poisson kernel of H^n", ("n", "lambda"),
        lambda n, n_hyp, lam: hyperbolic.psi_lambda(hyperbolic.HyperbolicContext.create(n_hyp), lam),
    )


def _register_standard_functions():
    register_function("one", "constant 1", (), measures.lebesgue_density)
    register_function("one_plus_r", "1 + r", (), measures.one_plus_r)
    register_function("linear", "r", (), measures.linear)
    register_function(
        "one_plus_r_sin_inv", "1 + r sin(1/max(r, floor))", ("floor",),
        measures.one_plus_r_sin_inv, defaults=(1e-3,),
    )
    register_function("three_plus_inv_sqrt", "3 + (1+r)^-1/2", (), measures.three_plus_inv_sqrt)
    register_function("one_plus_inv", "1 + (1+r)^-1", (), measures.one_plus_inv)
    register_function(
        "log_oscillation", "2 + cos(y0 log r)", ("y0",), measures.log_oscillation, defaults=(math.pi,),
    )
    register_function(
        "imaginary_power", "|x|^(i y0)", ("y0",), measures.imaginary_power, defaults=(math.pi,),
    )


def _register_standard_measures():
    register_measure("lebesgue", "Lebesgue measure", (), measures.lebesgue)
    register_measure(
        "atom", "point mass at the center", ("mass",),
        lambda n, mass=1.0: measures.point_mass(n, mass), defaults=(1.0,),
    )
    register_measure(
        "counterexample", "(2 + cos(y0 log|x|)) dx", ("y0",),
        measures.counterexample_measure, defaults=(math.pi,),
    )
    register_measure("density", "f(|x|) dx for a registered nonnegative function", ("family",), _density_measure)
    register_measure("mix", "Lebesgue on B(0,1) plus an off-center atom", (), _mix_measure)


_registered = False


def ensure_registered():
    """Ensure the standard families are registered. Called lazily to avoid import cycles."""
    global _registered
    if not _registered:
        _registered = True
        _register_standard_kernels()
        _register_standard_functions()
        _register_standard_measures()
