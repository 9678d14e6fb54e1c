"""Linear-spline quadrature for Cauchy singular integrals with Chebyshev weight."""

from .bounds import ErrorBudget, bound_thm1, bound_thm2, bound_thm3
from .densities import CORPUS, get_density
from .grid import Grid, make_custom, make_uniform, mesh_ratio
from .kernel_complex import sqrt_cut, weights_complex
from .kernel_real import weights_real
from .oracle import OracleConfig, hat_oracle, offcut_oracle, pv_oracle
from .quadrature import eval_offcut, eval_singular
from .spline import DensityFunction, FunctionClassSpec, spline_eval

__all__ = [
    "CORPUS",
    "DensityFunction",
    "ErrorBudget",
    "FunctionClassSpec",
    "Grid",
    "OracleConfig",
    "bound_thm1",
    "bound_thm2",
    "bound_thm3",
    "eval_offcut",
    "eval_singular",
    "get_density",
    "hat_oracle",
    "make_custom",
    "make_uniform",
    "mesh_ratio",
    "offcut_oracle",
    "pv_oracle",
    "spline_eval",
    "sqrt_cut",
    "weights_complex",
    "weights_real",
]
