"""Linear spline interpolation on a grid and its error constants."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .grid import Grid


class ClassTag(str, enum.Enum):
    HOLDER = "Holder"
    W1 = "W1"
    C1_ALPHA = "C1AlphaPiecewise"
    W2 = "W2Piecewise"


_REQUIRED = {
    ClassTag.HOLDER: ("alpha", "K"),
    ClassTag.W1: ("M1",),
    ClassTag.C1_ALPHA: ("alpha", "K1"),
    ClassTag.W2: ("M2",),
}


@dataclass(frozen=True)
class FunctionClassSpec:
    """Smoothness class of a density together with its constants.

    ``Holder``            |f(t) - f(t')| <= K |t - t'|^alpha
    ``W1``                ess sup |f'| = M1
    ``C1AlphaPiecewise``  f' is (alpha, K1)-Holder on every grid segment
    ``W2Piecewise``       ess sup |f''| = M2 on every grid segment

    Only the constants the tag needs may be set.
    """

    tag: ClassTag
    alpha: float | None = None
    K: float | None = None
    M1: float | None = None
    K1: float | None = None
    M2: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "tag", ClassTag(self.tag))
        need = _REQUIRED[self.tag]
        for name in ("alpha", "K", "M1", "K1", "M2"):
            value = getattr(self, name)
            if name in need:
                if value is None or not value > 0 or not math.isfinite(value):
                    raise ValueError(f"{self.tag.value} class needs a positive {name}, got {value!r}")
            elif value is not None:
                raise ValueError(f"{self.tag.value} class does not take {name}")
        if self.alpha is not None and self.alpha > 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")

    @classmethod
    def holder(cls, alpha, K):
        return cls(ClassTag.HOLDER, alpha=alpha, K=K)

    @classmethod
    def w1(cls, M1):
        return cls(ClassTag.W1, M1=M1)

    @classmethod
    def c1_alpha(cls, alpha, K1):
        return cls(ClassTag.C1_ALPHA, alpha=alpha, K1=K1)

    @classmethod
    def w2(cls, M2):
        return cls(ClassTag.W2, M2=M2)

    @classmethod
    def parse(cls, text: str) -> "FunctionClassSpec":
        """Parse ``tag:alpha:K`` style strings.

        Accepted forms are ``Holder:alpha:K``, ``W1:M1``,
        ``C1AlphaPiecewise:alpha:K1`` and ``W2Piecewise:M2``.
        """
        parts = text.split(":")
        try:
            tag = ClassTag(parts[0])
            nums = [float(p) for p in parts[1:]]
        except ValueError as exc:
            raise ValueError(f"bad class spec {text!r}: {exc}") from None
        need = _REQUIRED[tag]
        if len(nums) != len(need):
            raise ValueError(f"{tag.value} expects {len(need)} constant(s) ({', '.join(need)}), got {text!r}")
        return cls(tag, **dict(zip(need, nums)))

    def __str__(self):
        need = _REQUIRED[self.tag]
        return ":".join([self.tag.value] + [f"{getattr(self, n):g}" for n in need])

    def to_dict(self):
        d = {"tag": self.tag.value}
        d.update({n: getattr(self, n) for n in _REQUIRED[self.tag]})
        return d


@dataclass(frozen=True)
class DensityFunction:
    """A density f on [-1, 1] with its declared smoothness class.

    ``evaluator`` must accept numpy arrays. ``kinks`` lists abscissae where
    f or one of its low derivatives is not smooth; adaptive integration
    splits there.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    cls: FunctionClassSpec | None
    label: str = "f"
    kinks: tuple[float, ...] = field(default=())

    def __call__(self, t):
        return self.evaluator(t)


class NodeSamples(np.ndarray):
    """Values f(t_0), ..., f(t_N) aligned with a grid."""

    @classmethod
    def of(cls, grid: Grid, density) -> "NodeSamples":
        values = np.asarray(density(grid.nodes), dtype=float)
        if values.shape == ():
            values = np.full(len(grid), float(values))
        return cls.wrap(grid, values)

    @classmethod
    def wrap(cls, grid: Grid, values) -> "NodeSamples":
        values = np.asarray(values)
        if values.shape != (len(grid),):
            raise ValueError(f"expected {len(grid)} samples, got shape {values.shape}")
        return values.view(cls)


def _locate(grid: Grid, t: np.ndarray) -> np.ndarray:
    # ties at interior nodes go to the left segment; t = -1 goes to segment 0
    k = np.searchsorted(grid.nodes, t, side="left") - 1
    return np.clip(k, 0, grid.size - 1)


def spline_eval(grid: Grid, samples, t):
    """Evaluate the piecewise-linear interpolant of ``samples`` at ``t``.

    Returns ``samples[k]`` exactly when ``t`` is the node t_k.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(np.abs(t_arr) > 1) or np.any(np.isnan(t_arr)):
        raise DomainError("spline is defined on [-1, 1] only")
    f = np.asarray(samples)
    if f.shape[0] != len(grid):
        raise ValueError(f"expected {len(grid)} samples, got {f.shape[0]}")
    k = _locate(grid, t_arr)
    tk, tk1 = grid.nodes[k], grid.nodes[k + 1]
    h = grid.steps[k]
    out = ((tk1 - t_arr) * f[k] + (t_arr - tk) * f[k + 1]) / h
    out = np.where(t_arr == tk, f[k], np.where(t_arr == tk1, f[k + 1], out))
    if out.ndim == 0:
        return out.item()
    return out


def spline_error_bound(cls: FunctionClassSpec, h: float) -> float:
    """Uniform bound on |S_N(t) - f(t)| over a segment of length ``h``."""
    if not h > 0:
        raise DomainError(f"segment length must be positive, got {h!r}")
    tag = cls.tag
    if tag is ClassTag.HOLDER:
        return cls.K * (h / 2.0) ** cls.alpha
    if tag is ClassTag.W1:
        return cls.M1 * h / 2.0
    if tag is ClassTag.C1_ALPHA:
        return cls.K1 * h ** (1.0 + cls.alpha) / 4.0
    return cls.M2 * h * h / 8.0


def error_holder_constant(cls: FunctionClassSpec, h: float):
    """Holder constant of the interpolation error r_N = S_N - f.

    For the three smooth classes r_N is Lipschitz and the constant is
    returned as a float. For a Holder density the error is only Holder
    with the same exponent, and the pair ``(alpha, 2**(2 - alpha) * K)``
    is returned instead.
    """
    if not h > 0:
        raise DomainError(f"segment length must be positive, got {h!r}")
    tag = cls.tag
    if tag is ClassTag.HOLDER:
        return (cls.alpha, 2.0 ** (2.0 - cls.alpha) * cls.K)
    if tag is ClassTag.W1:
        return 2.0 * cls.M1
    if tag is ClassTag.C1_ALPHA:
        return cls.K1 * h**cls.alpha
    return cls.M2 * h
