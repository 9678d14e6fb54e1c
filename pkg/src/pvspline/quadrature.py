"""Evaluation of the two quadrature rules as weight-sample dot products."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .grid import Grid
from .kernel_complex import ComplexQuadrature, weights_complex
from .kernel_real import RealQuadrature, weights_real
from .spline import NodeSamples

# lru_cache is safe for concurrent readers
@lru_cache(maxsize=4096)
def cached_weights_real(grid: Grid, x: float) -> RealQuadrature:
    return weights_real(grid, x)


@lru_cache(maxsize=4096)
def cached_weights_complex(grid: Grid, z: complex) -> ComplexQuadrature:
    return weights_complex(grid, z)


def eval_singular(grid: Grid, density, x: float) -> float:
    """Approximate J(f, x) by sum_k A_k(x) f(t_k); exactly 0 at x = +-1."""
    quad = cached_weights_real(grid, float(x))
    if quad.point.is_endpoint:
        return 0.0
    return quad.apply(NodeSamples.of(grid, density))


def eval_offcut(grid: Grid, density, z: complex) -> complex:
    """Approximate Phi(f, z) by sum_k B_k(z) f(t_k)."""
    quad = cached_weights_complex(grid, complex(z))
    return quad.apply(NodeSamples.of(grid, density))


def eval_singular_many(grid: Grid, density, xs) -> np.ndarray:
    """Vector of eval_singular over several points, sampling f once."""
    f = NodeSamples.of(grid, density)
    return np.array([cached_weights_real(grid, float(x)).apply(f) for x in xs])


def eval_offcut_many(grid: Grid, density, zs) -> np.ndarray:
    f = NodeSamples.of(grid, density)
    return np.array([cached_weights_complex(grid, complex(z)).apply(f) for z in zs])
