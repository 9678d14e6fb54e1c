"""Reference values of the singular integrals by adaptive quadrature.

These routines never touch the closed-form weights. Both integrals are
moved to the angle variable t = cos(theta), which absorbs the
1/sqrt(1 - t^2) endpoint singularity. For the principal value the
constant f(x) is subtracted first (its principal value integral is zero),
leaving an integrand that is bounded whenever f is differentiable at x and
weakly singular when f is only Holder there.
"""

from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import ConvergenceError, DomainError
from .grid import Grid
from .kernel_complex import OffCutPoint, sqrt_cut
from .spline import DensityFunction

_X10, _W10 = np.polynomial.legendre.leggauss(10)
_X20, _W20 = np.polynomial.legendre.leggauss(20)
_MAX_INTERVALS = 200_000


@dataclass(frozen=True)
class OracleConfig:
    tolerance: float = 1e-10
    max_refinement_depth: int = 48

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance!r}")
        if not 1 <= self.max_refinement_depth <= 60:
            raise ValueError(f"max_refinement_depth must be in [1, 60], got {self.max_refinement_depth!r}")

    @classmethod
    def from_env(cls, var="PVSPLINE_TOL"):
        """Default config, with the tolerance overridable from the environment."""
        value = os.environ.get(var)
        if value is None:
            return cls()
        return cls(tolerance=float(value))


@dataclass(frozen=True)
class OracleResult:
    value: float | complex
    error: float
    intervals: int


def _rule(func, a, b):
    c, r = 0.5 * (a + b), 0.5 * (b - a)
    y = func(c + r * np.concatenate([_X10, _X20]))
    coarse = r * np.dot(_W10, y[:10])
    fine = r * np.dot(_W20, y[10:])
    return fine, abs(fine - coarse)


def integrate_adaptive(
    func: Callable[[np.ndarray], np.ndarray],
    breakpoints: Iterable[float],
    config: OracleConfig,
) -> OracleResult:
    """Globally adaptive 10/20-point Gauss-Legendre integration.

    The interval with the largest error estimate is bisected until the
    summed estimate meets ``config.tolerance``. Intervals that reach the
    depth limit are frozen; if the frozen error alone exceeds the
    tolerance a :class:`ConvergenceError` is raised.
    """
    pts = sorted(set(float(p) for p in breakpoints))
    if len(pts) < 2:
        raise ValueError("need at least two breakpoints")
    heap = []
    values = []
    total_err = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        q, e = _rule(func, a, b)
        heapq.heappush(heap, (-e, len(values), a, b, 0))
        values.append(q)
        total_err += e
    frozen_err = 0.0
    count = len(values)
    while heap:
        if total_err <= config.tolerance:
            # the running sum can drift; confirm with an exact recount
            total_err = frozen_err + math.fsum(-item[0] for item in heap)
            if total_err <= config.tolerance:
                break
        neg_e, idx, a, b, depth = heapq.heappop(heap)
        if depth >= config.max_refinement_depth or count >= _MAX_INTERVALS:
            frozen_err += -neg_e
            continue
        m = 0.5 * (a + b)
        ql, el = _rule(func, a, m)
        qr, er = _rule(func, m, b)
        values[idx] = ql
        values.append(qr)
        heapq.heappush(heap, (-el, idx, a, m, depth + 1))
        heapq.heappush(heap, (-er, len(values) - 1, m, b, depth + 1))
        total_err += el + er + neg_e
        count += 1
    total_err = frozen_err + math.fsum(-item[0] for item in heap)
    est = _fsum(values)
    if total_err > config.tolerance:
        raise ConvergenceError(
            f"adaptive integration reached error {total_err:.3e} > tolerance {config.tolerance:.3e}",
            est,
            total_err,
        )
    return OracleResult(est, total_err, len(values))


def _fsum(values):
    if any(isinstance(v, complex) or np.iscomplexobj(v) for v in values):
        return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return math.fsum(values)


def _angles(abscissae: Iterable[float]):
    return [math.acos(t) for t in abscissae if -1.0 < t < 1.0]


def pv_oracle(
    density: DensityFunction,
    x: float,
    config: OracleConfig | None = None,
    *,
    breakpoints: Iterable[float] = (),
    full_output: bool = False,
):
    """Principal value J(f, x) for |x| < 1.

    ``breakpoints`` are extra abscissae in (-1, 1) where the density is
    not smooth (e.g. spline nodes); the density's own kinks are always used.
    """
    config = config or OracleConfig()
    x = float(x)
    if not -1.0 < x < 1.0:
        raise DomainError(f"principal value oracle needs |x| < 1, got {x!r}")
    f = density.evaluator
    theta_x = math.acos(x)
    fx = float(f(np.array([x]))[0])

    def integrand(theta):
        # cos(theta) - cos(theta_x), without cancellation
        diff = -2.0 * np.sin(0.5 * (theta + theta_x)) * np.sin(0.5 * (theta - theta_x))
        num = f(np.cos(theta)) - fx
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(diff != 0.0, num / diff, 0.0)

    angles = [0.0, math.pi, theta_x] + _angles(density.kinks) + _angles(breakpoints)
    res = integrate_adaptive(integrand, angles, config)
    scale = math.sqrt((1.0 - x) * (1.0 + x)) / math.pi
    out = OracleResult(scale * res.value, scale * res.error, res.intervals)
    return out if full_output else out.value


def offcut_oracle(
    density: DensityFunction,
    z: complex,
    config: OracleConfig | None = None,
    *,
    breakpoints: Iterable[float] = (),
    full_output: bool = False,
):
    """Phi(f, z) for z off the cut, by direct adaptive integration."""
    config = config or OracleConfig()
    z = OffCutPoint(z).z
    f = density.evaluator

    def integrand(theta):
        c = np.cos(theta)
        return f(c) / (c - z)

    angles = [0.0, math.pi] + _angles(density.kinks) + _angles(breakpoints)
    # the integrand peaks where cos(theta) is nearest z
    angles += _angles([min(1.0, max(-1.0, z.real))])
    res = integrate_adaptive(integrand, angles, config)
    scale = -sqrt_cut(z) / math.pi
    out = OracleResult(complex(scale * res.value), float(abs(scale) * res.error), res.intervals)
    return out if full_output else out.value


def hat_density(grid: Grid, k: int) -> DensityFunction:
    """Nodal basis function equal to 1 at t_k and 0 at every other node."""
    if not 0 <= k <= grid.size:
        raise IndexError(f"node index {k} out of range for N={grid.size}")
    e = np.zeros(len(grid))
    e[k] = 1.0
    nodes = np.asarray(grid.nodes)
    return DensityFunction(lambda t: np.interp(t, nodes, e), None, f"hat{k}")


def hat_oracle(grid: Grid, k: int, point, config: OracleConfig | None = None):
    """Reference value of the k-th quadrature weight at ``point``.

    A real ``point`` in (-1, 1) gives A_k(x); anything else is treated as an
    off-cut point and gives B_k(z).
    """
    hat = hat_density(grid, k)
    breaks = grid.nodes[1:-1]
    if isinstance(point, (complex, np.complexfloating)) and complex(point).imag != 0.0:
        return offcut_oracle(hat, point, config, breakpoints=breaks)
    x = float(np.real(point))
    if abs(x) > 1.0:
        return offcut_oracle(hat, complex(x), config, breakpoints=breaks)
    return pv_oracle(hat, x, config, breakpoints=breaks)
