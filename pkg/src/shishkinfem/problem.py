"""Problem instances: coefficients, sources, and synthetic layer functions.

The model equation is

    -eps * Lap(u) + b1(x,y) * u_x + c(x,y) * u = f(x,y)   on (-1,1)^2,
    u = 0 on the boundary,

with b1(x,y) = x * a(x,y) changing sign across the turning line x = 0.
All coefficient callables accept and return numpy arrays.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

__all__ = [
    "ProblemSpec",
    "TemplateKind",
    "LayerTemplate",
    "example_5_1",
    "example_5_1_db1_dx",
    "mms_problem",
    "layer_template",
]

DEFAULT_ALPHA = 2.0
DEFAULT_BETA = 1.0


@dataclass(frozen=True)
class ProblemSpec:
    """A turning-point convection-diffusion problem instance."""

    eps: float
    b1: Callable
    c: Callable
    f: Callable
    alpha: float
    beta: float
    exact: Optional[Callable] = None
    exact_grad: Optional[Callable] = None
    name: str = "custom"

    def __post_init__(self):
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")
        if self.alpha <= 0.0 or self.beta <= 0.0:
            raise ValueError("alpha and beta must be positive")


def _b1_ex(x, y):
    return -x * (x * x + np.exp(1.0 + x * y))


def _c_ex(x, y):
    return 3.0 + x * x * np.exp(x)


def _f_ex(x, y):
    return x * y / (1.0 + x * x + y * y)


def example_5_1_db1_dx(x, y):
    """Analytic d(b1)/dx for the benchmark problem."""
    return -(3.0 * x * x + (1.0 + x * y) * np.exp(1.0 + x * y))


def example_5_1(eps, alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA):
    """Benchmark problem with an interior layer at x=0 and boundary
    layers at y = +-1:

        b1 = -x (x^2 + e^(1+xy)),  c = 3 + x^2 e^x,  f = xy / (1 + x^2 + y^2).
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return ProblemSpec(eps=eps, b1=_b1_ex, c=_c_ex, f=_f_ex,
                       alpha=alpha, beta=beta, name="example51")


def mms_problem(eps, alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA):
    """Manufactured-solution problem with exact u = sin(pi x) sin(pi y).

    Uses the benchmark coefficients b1, c; f is the operator applied to u,
    derived analytically:

        f = 2 eps pi^2 u + b1 * pi cos(pi x) sin(pi y) + c * u.
    """
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")

    def exact(x, y):
        return np.sin(np.pi * x) * np.sin(np.pi * y)

    def exact_grad(x, y):
        return (np.pi * np.cos(np.pi * x) * np.sin(np.pi * y),
                np.pi * np.sin(np.pi * x) * np.cos(np.pi * y))

    def f(x, y):
        u = exact(x, y)
        ux = np.pi * np.cos(np.pi * x) * np.sin(np.pi * y)
        return 2.0 * eps * np.pi ** 2 * u + _b1_ex(x, y) * ux + _c_ex(x, y) * u

    return ProblemSpec(eps=eps, b1=_b1_ex, c=_c_ex, f=f,
                       alpha=alpha, beta=beta,
                       exact=exact, exact_grad=exact_grad, name="mms")


class TemplateKind(Enum):
    SMOOTH = "smooth"
    INTERIOR_X = "interior_x"
    BOUNDARY_Y = "boundary_y"
    CORNER_XY = "corner_xy"


@dataclass(frozen=True)
class LayerTemplate:
    """Synthetic function mimicking one part of the layer structure.

    These are interpolation-study targets only; they are not solutions
    of the PDE.
    """

    kind: TemplateKind
    func: Callable

    def __call__(self, x, y):
        return self.func(x, y)


def layer_template(kind, eps, alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA):
    """Build a layer-shaped test function.

    smooth     : (1-x^2)(1-y^2)
    interior_x : exp(-alpha |x| / eps) (1-y^2)
    boundary_y : (exp(-beta (1-y)/sqrt(eps)) + exp(-beta (1+y)/sqrt(eps))) (1-x^2)
    corner_xy  : product of the x- and y-layer factors
    """
    if eps <= 0.0 or alpha <= 0.0 or beta <= 0.0:
        raise ValueError("eps, alpha, beta must be positive")
    kind = TemplateKind(kind)
    se = np.sqrt(eps)

    def x_layer(x):
        return np.exp(-alpha * np.abs(x) / eps)

    def y_layer(y):
        return np.exp(-beta * (1.0 - y) / se) + np.exp(-beta * (1.0 + y) / se)

    if kind is TemplateKind.SMOOTH:
        func = lambda x, y: (1.0 - x * x) * (1.0 - y * y)
    elif kind is TemplateKind.INTERIOR_X:
        func = lambda x, y: x_layer(x) * (1.0 - y * y)
    elif kind is TemplateKind.BOUNDARY_Y:
        func = lambda x, y: y_layer(y) * (1.0 - x * x)
    else:
        func = lambda x, y: x_layer(x) * y_layer(y)
    return LayerTemplate(kind=kind, func=func)
