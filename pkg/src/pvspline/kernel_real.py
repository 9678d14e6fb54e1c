"""Closed-form weights A_k(x) of the real singular quadrature.

The rule integrates the linear spline of f exactly against the Cauchy
kernel with Chebyshev weight,

    J(f, x) = sqrt(1 - x^2)/pi * p.v. int_{-1}^{1} f(t) / (sqrt(1 - t^2) (t - x)) dt,

so every weight is the principal value integral of one nodal hat function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularEvaluationError
from .grid import Grid

# x is treated as sitting on node t_j when |x - t_j| <= NODE_RTOL * max(1, |t_j|)
NODE_RTOL = 1e-14


def sqrt_one_minus_sq(x):
    """sqrt(1 - x^2), factored to stay accurate near |x| = 1."""
    return np.sqrt((1.0 - x) * (1.0 + x))


@dataclass(frozen=True)
class SingularPoint:
    x: float

    def __post_init__(self):
        if not -1.0 <= self.x <= 1.0:
            raise DomainError(f"singular point must lie in [-1, 1], got {self.x!r}")

    @property
    def is_endpoint(self) -> bool:
        return abs(self.x) == 1.0


@dataclass(frozen=True, eq=False)
class RealQuadrature:
    point: SingularPoint
    weights: np.ndarray
    grid: Grid

    def apply(self, samples) -> float:
        return float(np.dot(self.weights, np.asarray(samples, dtype=float)))


def g_all(grid: Grid) -> np.ndarray:
    """Vector of g_k = (arcsin t_{k+1} - arcsin t_k) / (pi h_k), k = 0..N-1."""
    a = np.arcsin(grid.nodes)
    return np.diff(a) / (math.pi * grid.steps)


def g_coeff(grid: Grid, k: int) -> float:
    if not 0 <= k < grid.size:
        raise IndexError(f"segment index {k} out of range for N={grid.size}")
    t = grid.nodes
    return float((math.asin(t[k + 1]) - math.asin(t[k])) / (math.pi * grid.steps[k]))


def _G_numerator(t, x, sx):
    # t*sqrt(1-x^2) - x*sqrt(1-t^2); rewritten through (t-x)(t+x) when the
    # two products share a sign, where the direct difference cancels
    st = sqrt_one_minus_sq(t)
    direct = t * sx - x * st
    same_sign = (t * x) > 0
    with np.errstate(invalid="ignore", divide="ignore"):
        factored = (t - x) * (t + x) / (t * sx + x * st)
    return np.where(same_sign, factored, direct), st


def G_value(t_k: float, x: float) -> float:
    """G_k(x) = |t_k sqrt(1-x^2) - x sqrt(1-t_k^2)| / (sqrt(1-x^2) + sqrt(1-t_k^2)).

    Equals 1 whenever |x| = 1 or |t_k| = 1 (the latter for |x| < 1).
    """
    if abs(x) > 1 or abs(t_k) > 1:
        raise DomainError("G is defined for |x| <= 1 and |t_k| <= 1")
    if abs(x) == 1.0 or abs(t_k) == 1.0:
        return 1.0
    sx = float(sqrt_one_minus_sq(x))
    num, st = _G_numerator(np.float64(t_k), x, sx)
    return float(abs(num) / (sx + st))


def _log_G(nodes: np.ndarray, x: float, sx: float) -> np.ndarray:
    """ln G_k(x) for every node; entries with G = 0 are returned as 0.

    Every ln G_j enters the weights multiplied by a factor vanishing at
    x = t_j, so 0 is the correct limit of the product.
    """
    num, st = _G_numerator(nodes, x, sx)
    G = np.abs(num) / (sx + st)
    with np.errstate(divide="ignore"):
        L = np.where(G > 0, np.log(np.where(G > 0, G, 1.0)), 0.0)
    L[0] = 0.0
    L[-1] = 0.0
    return L


def _snap_to_node(grid: Grid, x: float):
    # interior nodes only; near +-1 the off-node formula stays accurate
    t = grid.nodes
    j = int(np.argmin(np.abs(t - x)))
    if 0 < j < grid.size and abs(x - t[j]) <= NODE_RTOL * max(1.0, abs(t[j])):
        return float(t[j]), j
    return x, None


def segment_J(grid: Grid, k: int, x: float) -> float:
    """int_{t_k}^{t_{k+1}} dt / (sqrt(1-t^2)(t-x)), principal value if x is inside."""
    if not 0 <= k < grid.size:
        raise IndexError(f"segment index {k} out of range for N={grid.size}")
    if not -1.0 < x < 1.0:
        raise DomainError(f"segment integral needs |x| < 1, got {x!r}")
    _, j = _snap_to_node(grid, x)
    if j in (k, k + 1) or x in (grid.nodes[k], grid.nodes[k + 1]):
        raise SingularEvaluationError(
            f"x={x!r} coincides with an endpoint of segment {k}; use weights_real instead"
        )
    sx = float(sqrt_one_minus_sq(x))
    ends = grid.nodes[k : k + 2]
    L = np.log([G_value(float(ends[0]), x), G_value(float(ends[1]), x)])
    return float((L[1] - L[0]) / sx)


def segment_J1(grid: Grid, k: int, x: float) -> float:
    """int_{t_k}^{t_{k+1}} t dt / (sqrt(1-t^2)(t-x)) = x J(k, x) + pi h_k g_k."""
    return x * segment_J(grid, k, x) + math.pi * grid.steps[k] * g_coeff(grid, k)


def weights_real(grid: Grid, x: float) -> RealQuadrature:
    """Quadrature weights A_0(x), ..., A_N(x) for the singular point ``x``.

    At x = +-1 all weights vanish. On a node t_j the diagonal weight is the
    limit of the off-node formula, which the assembly below produces
    without a special case.
    """
    point = SingularPoint(float(x))
    n = grid.size
    if point.is_endpoint:
        return RealQuadrature(point, np.zeros(n + 1), grid)

    x, _ = _snap_to_node(grid, point.x)
    t, h = grid.nodes, grid.steps
    sx = float(sqrt_one_minus_sq(x))
    L = _log_G(t, x, sx)
    g = g_all(grid)

    A = np.empty(n + 1)
    # (t_{k+1} - x)/(pi h_k) ln G_{k+1}, k = 0..N-1
    right = (t[1:] - x) / (math.pi * h) * L[1:]
    # (x - t_{k-1})/(pi h_{k-1}) ln G_{k-1}, k = 1..N
    left = (x - t[:-1]) / (math.pi * h) * L[:-1]
    A[0] = right[0] - sx * g[0]
    A[n] = -left[n - 1] + sx * g[n - 1]
    # interior: the two ln G_k terms combined into one coefficient that
    # vanishes linearly at x = t_k
    inner = (x - t[1:-1]) * (1.0 / h[:-1] + 1.0 / h[1:]) / math.pi * L[1:-1]
    A[1:-1] = right[1:] - left[:-1] + inner + sx * (g[:-1] - g[1:])
    A.flags.writeable = False
    return RealQuadrature(point, A, grid)
