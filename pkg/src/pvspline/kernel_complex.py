"""Weights B_k(z) of the off-cut quadrature and the branch of sqrt(z^2 - 1).

For z outside [-1, 1] the rule approximates

    Phi(f, z) = -sqrt(z^2 - 1)/pi * int_{-1}^{1} f(t) / (sqrt(1 - t^2) (t - z)) dt

by integrating the linear spline of f exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BranchError
from .grid import Grid
from .kernel_real import g_all

NEAR_CUT_DISTANCE = 1e-3


class NearCutWarning(UserWarning):
    """Off-cut point is close enough to [-1, 1] that accuracy degrades."""


def _normalize(z) -> complex:
    z = complex(z)
    # -0.0 and +0.0 imaginary parts must not select different root branches;
    # off the cut the function is continuous across the real axis
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return z


def cut_distance(z: complex) -> float:
    """Euclidean distance from ``z`` to the segment [-1, 1]."""
    z = complex(z)
    excess = abs(z.real) - 1.0
    if excess <= 0:
        return abs(z.imag)
    return math.hypot(excess, z.imag)


@dataclass(frozen=True)
class OffCutPoint:
    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise BranchError(f"point must be finite, got {z!r}")
        if cut_distance(z) == 0.0:
            raise BranchError(f"z={z!r} lies on the cut [-1, 1]")
        object.__setattr__(self, "z", _normalize(z))

    @property
    def cut_distance(self) -> float:
        return cut_distance(self.z)


@dataclass(frozen=True, eq=False)
class ComplexQuadrature:
    point: OffCutPoint
    weights: np.ndarray
    grid: Grid

    def apply(self, samples) -> complex:
        return complex(np.dot(self.weights, np.asarray(samples)))


def sqrt_cut(z: complex) -> complex:
    """Branch of sqrt(z^2 - 1) cut along [-1, 1] with sqrt(z^2 - 1) ~ z at infinity.

    The principal roots of z - 1 and z + 1 have cuts along (-inf, 1] and
    (-inf, -1]; in the product they cancel on (-inf, -1) and leave only
    [-1, 1].

    >>> sqrt_cut(-2)
    (-1.7320508075688772+0j)
    """
    z = _normalize(z)
    if cut_distance(z) == 0.0:
        raise BranchError(f"z={z!r} lies on the cut [-1, 1]")
    return complex(np.sqrt(z - 1.0) * np.sqrt(z + 1.0))


def _arcsin_terms(nodes: np.ndarray, z: complex) -> np.ndarray:
    # arcsin((z t - 1)/(z - t)), principal branch; the argument is exactly
    # +-1 at t = +-1, pinned to avoid the square-root sensitivity there
    with np.errstate(all="ignore"):
        u = (z * nodes - 1.0) / (z - nodes)
    out = np.arcsin(u.astype(complex))
    out[0] = -math.pi / 2
    out[-1] = math.pi / 2
    return out


def F_all(grid: Grid, z: complex) -> np.ndarray:
    """Vector of F_k(z), k = 0..N-1."""
    return np.diff(_arcsin_terms(grid.nodes, complex(z))) / (math.pi * grid.steps)


def F_coeff(grid: Grid, k: int, z: complex) -> complex:
    """F_k(z) = [arcsin((z t_{k+1}-1)/(z-t_{k+1})) - arcsin((z t_k-1)/(z-t_k))] / (pi h_k)."""
    if not 0 <= k < grid.size:
        raise IndexError(f"segment index {k} out of range for N={grid.size}")
    point = OffCutPoint(z)
    return complex(F_all(grid, point.z)[k])


def weights_complex(grid: Grid, z: complex) -> ComplexQuadrature:
    """Quadrature weights B_0(z), ..., B_N(z) for an off-cut point.

    With the principal arcsin, the antiderivative of
    1/(sqrt(1-t^2)(t-z)) is -arcsin((z t - 1)/(z - t))/sqrt(z^2 - 1), so the
    F-terms enter with (t_{k+1} - z) and (z - t_{k-1}).
    """
    point = OffCutPoint(z)
    z = point.z
    if point.cut_distance < NEAR_CUT_DISTANCE:
        warnings.warn(
            f"z={z!r} is {point.cut_distance:.2e} from the cut; weights lose accuracy",
            NearCutWarning,
            stacklevel=2,
        )
    t = grid.nodes
    n = grid.size
    w = sqrt_cut(z)
    F = F_all(grid, z)
    g = g_all(grid)

    right = (t[1:] - z) * F  # (t_{k+1} - z) F_k
    left = (z - t[:-1]) * F  # (z - t_k) F_k, feeds B_{k+1}
    B = np.empty(n + 1, dtype=complex)
    B[0] = right[0] + w * g[0]
    B[n] = left[n - 1] - w * g[n - 1]
    B[1:-1] = right[1:] + left[:-1] + w * (g[1:] - g[:-1])
    B.flags.writeable = False
    return ComplexQuadrature(point, B, grid)
