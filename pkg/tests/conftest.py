"""Shared fixtures and reference routines independent of the package internals."""

import cmath
import math

import numpy as np
import pytest
from scipy import integrate

from pvspline.grid import make_custom, make_uniform


def scipy_pv(f, x, breaks=()):
    """Principal value J(f, x) through scipy's QUADPACK, in the angle variable.

    Kept separate from pvspline.oracle: different rule, different
    refinement, same subtraction identity.
    """
    th = math.acos(x)
    fx = f(x)

    def g(t):
        d = math.cos(t) - x
        return 0.0 if d == 0 else (f(math.cos(t)) - fx) / d

    pts = sorted({0.0, math.pi, th, *(math.acos(b) for b in breaks if -1 < b < 1)})
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        total += integrate.quad(g, a, b, epsabs=1e-14, epsrel=1e-13, limit=500)[0]
    return math.sqrt(1 - x * x) / math.pi * total


def scipy_offcut(f, z, breaks=()):
    w = cmath.sqrt(z - 1) * cmath.sqrt(z + 1)
    pts = sorted({0.0, math.pi, *(math.acos(b) for b in breaks if -1 < b < 1)})
    if abs(z.real) < 1:
        pts = sorted(set(pts) | {math.acos(z.real)})
    re = im = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        re += integrate.quad(lambda t: (f(math.cos(t)) / (math.cos(t) - z)).real, a, b, epsabs=1e-14, limit=500)[0]
        im += integrate.quad(lambda t: (f(math.cos(t)) / (math.cos(t) - z)).imag, a, b, epsabs=1e-14, limit=500)[0]
    return -w / math.pi * complex(re, im)


def trapezoid_pv(f, x, m=256):
    """Global rule for smooth f: the subtracted integrand is even and
    2*pi-periodic in theta, so the trapezoid rule converges geometrically."""
    th = math.acos(x)
    theta = (np.arange(2 * m) + 0.5) * np.pi / m  # offset grid avoids theta_x for generic x
    c = np.cos(theta)
    d = c - x
    vals = np.where(np.abs(d) > 1e-300, (f(c) - f(np.array(x))) / np.where(d == 0, 1, d), 0.0)
    return math.sqrt(1 - x * x) / math.pi * 0.5 * np.sum(vals) * (np.pi / m)


def path_continued_sqrt(z, rel_step=0.05):
    """sqrt(z^2 - 1) continued from sqrt(3) at z = 2.

    The path 2 -> 2 + iH -> Re z + iH -> z stays in the half-plane of z
    (the upper one for real z), so it never meets the cut. Steps shrink
    near the branch points +-1 so the root choice stays unambiguous.
    """
    z = complex(z)
    w = math.sqrt(3.0)
    H = max(1.0, z.imag) if z.imag >= 0 else min(-1.0, z.imag)
    corners = [2 + 0j, complex(2, H), complex(z.real, H), z]
    for a, b in zip(corners[:-1], corners[1:]):
        length = abs(b - a)
        s = 0.0
        while s < length:
            p = a + (b - a) * (s / length) if length else b
            s += max(1e-12, rel_step * min(abs(p - 1), abs(p + 1), 1.0))
            p = a + (b - a) * min(s / length, 1.0)
            cand = cmath.sqrt(p * p - 1)
            w = cand if abs(cand - w) <= abs(cand + w) else -cand
    return w


def hat(nodes, k):
    e = np.zeros(len(nodes))
    e[k] = 1.0
    return lambda t: float(np.interp(t, nodes, e))


@pytest.fixture
def grid3():
    return make_custom([-1.0, 0.0, 1.0])


def random_grid(n, seed, gamma_max=4.0):
    """Random partition with mesh ratio at most ``gamma_max``."""
    rng = np.random.default_rng(seed)
    while True:
        h = rng.uniform(0.5, 1.5, n)
        h *= 2.0 / h.sum()
        if n * h.max() <= gamma_max:
            nodes = np.concatenate([[-1.0], -1.0 + np.cumsum(h)[:-1], [1.0]])
            return make_custom(nodes)


GRIDS_SMALL = [make_uniform(2), make_uniform(4), make_uniform(8), random_grid(8, 7)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
