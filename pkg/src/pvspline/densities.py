"""Built-in test densities, one or more per smoothness class."""

from __future__ import annotations

import math

import numpy as np

from .spline import DensityFunction, FunctionClassSpec


def _const1(t):
    return np.ones_like(np.asarray(t, dtype=float))


def _linear(t):
    return np.asarray(t, dtype=float)


def _cheb2(t):
    t = np.asarray(t, dtype=float)
    return 2.0 * t * t - 1.0


def _kink(t):
    t = np.asarray(t, dtype=float)
    return t * np.abs(t)


def _holder_sqrt(t):
    return np.sqrt(np.abs(np.asarray(t, dtype=float)))


def _c1half(t):
    # f'(t) = |t|^(1/2)
    t = np.asarray(t, dtype=float)
    return (2.0 / 3.0) * np.sign(t) * np.abs(t) ** 1.5


CORPUS = {
    # any positive M1 bounds the zero derivative
    "const1": DensityFunction(_const1, FunctionClassSpec.w1(1.0), "const1"),
    "linear": DensityFunction(_linear, FunctionClassSpec.w1(1.0), "linear"),
    "cheb2": DensityFunction(_cheb2, FunctionClassSpec.w2(4.0), "cheb2"),
    "expn": DensityFunction(np.exp, FunctionClassSpec.w2(math.e), "expn"),
    "holder-sqrt": DensityFunction(_holder_sqrt, FunctionClassSpec.holder(0.5, 1.0), "holder-sqrt", kinks=(0.0,)),
    "kink": DensityFunction(_kink, FunctionClassSpec.w2(2.0), "kink", kinks=(0.0,)),
    "c1half": DensityFunction(_c1half, FunctionClassSpec.c1_alpha(0.5, 1.0), "c1half", kinks=(0.0,)),
}


def get_density(label: str, cls: FunctionClassSpec | None = None) -> DensityFunction:
    """Look up a corpus density by label, optionally overriding its class."""
    try:
        density = CORPUS[label]
    except KeyError:
        raise KeyError(f"unknown density {label!r}; choose from {', '.join(sorted(CORPUS))}") from None
    if cls is not None:
        density = DensityFunction(density.evaluator, cls, density.label, density.kinks)
    return density
