"""Acceptance suite.

Each test checks one numbered criterion at its stated tolerance and
records a single PASS/FAIL line; the lines are repeated in the terminal
summary. Run alone with ``pytest -m acceptance -s``.
"""

import cmath
import math
import warnings

import numpy as np
import pytest

from conftest import path_continued_sqrt, random_grid
from pvspline.bench import complex_samples, real_samples, run_convergence
from pvspline.densities import CORPUS
from pvspline.grid import make_uniform
from pvspline.kernel_complex import NearCutWarning, sqrt_cut, weights_complex
from pvspline.kernel_real import weights_real
from pvspline.oracle import hat_oracle
from pvspline.spline import NodeSamples, spline_error_bound, spline_eval

pytestmark = pytest.mark.acceptance

RESULTS = {}

NS_REAL = [8, 16, 32, 64, 128, 256, 512]
NS_COMPLEX = [8, 16, 32, 64, 128, 256]


def record(number, title, ok, detail):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    RESULTS[number] = line
    print(line)
    assert ok, line


def _small_grids():
    return [make_uniform(2), make_uniform(4), make_uniform(8), random_grid(8, 2024)]


def _real_points(grid):
    # 20 points: 1e-3 from a node, 1e-3 from the ends, and generic positions
    t = grid.nodes
    mid = t[len(t) // 2]
    pts = [mid - 1e-3, mid + 1e-3, t[1] + 1e-3, t[-2] - 1e-3, -1 + 1e-3, 1 - 1e-3]
    pts += list(np.linspace(-0.93, 0.91, 14))
    return pts


def _complex_points():
    pts = [2, -2, 1j, -1j, 1.5 * cmath.exp(0.4j), 3 * cmath.exp(2.5j), 5 * cmath.exp(-1j),
           0.2 + 0.05j, -0.6 - 0.05j, 0.999 + 0.01j, 1.001 + 0j, -1.001 + 0j, 1.05, -3 + 0.5j,
           0.3 + 1e-3j, 2 - 2j, 10 + 10j, -0.5 + 0.3j, 1e-3 + 0.5j, -1 + 0.2j]
    return [complex(z) for z in pts]


def test_criterion_1_hat_oracle_equivalence():
    worst = 0.0
    for grid in _small_grids():
        for x in _real_points(grid):
            A = weights_real(grid, x).weights
            ref = np.array([hat_oracle(grid, k, x) for k in range(len(grid))])
            worst = max(worst, float(np.max(np.abs(A - ref))))
        for z in _complex_points():
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NearCutWarning)
                B = weights_complex(grid, z).weights
            ref = np.array([hat_oracle(grid, k, z) for k in range(len(grid))])
            worst = max(worst, float(np.max(np.abs(B - ref))))
    record(1, "hat-function oracle equivalence", worst <= 1e-8, f"max deviation {worst:.2e}, tol 1e-8")


def test_criterion_2_exactness_identities():
    grids = [make_uniform(n) for n in NS_REAL] + [random_grid(64, 5)]
    zs = complex_samples()
    e0 = e1 = c0 = c1 = 0.0
    for grid in grids:
        t = grid.nodes
        for x in real_samples(grid):
            A = weights_real(grid, x).weights
            e0 = max(e0, abs(A.sum()) / np.abs(A).sum())
            e1 = max(e1, abs(A @ t - math.sqrt(1 - x * x)))
        for z in zs:
            B = weights_complex(grid, z).weights
            c0 = max(c0, abs(B.sum() - 1))
            c1 = max(c1, abs(B @ t - (z - sqrt_cut(z))))
    ok = e0 <= 1e-12 and e1 <= 1e-10 and c0 <= 1e-10 and c1 <= 1e-10
    record(2, "exactness identities", ok, f"sum A rel {e0:.1e}, moment A {e1:.1e}, sum B {c0:.1e}, moment B {c1:.1e}")


def test_criterion_3_endpoint_law():
    grids = [make_uniform(n) for n in (2, 3, 8, 100)] + [random_grid(16, 3)]
    ok = all(np.all(weights_real(g, x).weights == 0.0) for g in grids for x in (-1.0, 1.0))
    record(3, "endpoint weights vanish", ok, "exact zero vector at x = +-1")


def test_criterion_4_diagonal_continuity():
    worst = 0.0
    for grid in _small_grids():
        for tk in grid.nodes[1:-1]:
            at = weights_real(grid, tk).weights
            for dx in (-1e-7, 1e-7):
                worst = max(worst, float(np.max(np.abs(weights_real(grid, tk + dx).weights - at))))
    record(4, "diagonal continuity", worst <= 1e-5, f"max jump {worst:.2e}, tol 1e-5")


def _thm1_w2(gamma, m2, n):
    return (gamma**2 * m2 / math.pi) * (1 + math.pi * math.sqrt(2) / (gamma * math.log(n))) * math.log(n) / n**2


def test_criterion_5_real_bound_smooth():
    report = run_convergence(CORPUS["expn"], "real", NS_REAL)
    ratios = [r.max_error / _thm1_w2(2.0, math.e, r.N) for r in report.rows]
    order = report.fitted_order
    ok = all(q <= 1 for q in ratios) and order is not None and 1.8 <= order <= 2.2
    record(5, "e^t real error within bound", ok, f"max ratio {max(ratios):.3f}, fitted order {order:.3f}")


def _holder_bound(alpha, K, gamma, n):
    lead = 2 ** (2 - alpha) * gamma**alpha * K / math.pi
    L2 = lead * (1 + (2 + 1 / alpha) * 2 ** (2 - 2 * alpha) / (gamma**alpha * math.log(n)))
    return L2 * math.log(n) / n**alpha


def test_criterion_6_real_bound_holder():
    report = run_convergence(CORPUS["holder-sqrt"], "real", NS_REAL)
    ratios = [r.max_error / _holder_bound(0.5, 1.0, 2.0, r.N) for r in report.rows]
    order = report.fitted_order
    ok = all(q <= 1 for q in ratios) and order is not None and 0.4 <= order <= 0.7
    record(6, "|t|^(1/2) real error within bound", ok, f"max ratio {max(ratios):.3f}, fitted order {order:.3f}")


def test_criterion_7_offcut_bound():
    report = run_convergence(CORPUS["expn"], "complex", NS_COMPLEX)
    ratios = []
    for r in report.rows:
        L = _thm1_w2(2.0, math.e, r.N) * r.N**2 / math.log(r.N)
        L1 = math.e * 4 / (8 * math.pi)
        L_star = math.sqrt(L**2 + (L1 / math.log(r.N)) ** 2)
        ratios.append(r.max_error / (L_star * math.log(r.N) / r.N**2))
    record(7, "e^t off-cut error within bound", all(q <= 1 for q in ratios), f"max ratio {max(ratios):.3f}")


def test_criterion_8_interpolation_bound():
    rng = np.random.default_rng(8)
    pts = np.sort(np.concatenate([rng.uniform(-1, 1, 990), np.linspace(-1, 1, 10)]))
    worst = 0.0
    for label, density in CORPUS.items():
        grids = [make_uniform(n) for n in (4, 8, 16, 32, 64)] + [random_grid(16, 1)]
        for grid in grids:
            s = NodeSamples.of(grid, density)
            err = np.abs(spline_eval(grid, s, pts) - density(pts))
            seg = np.clip(np.searchsorted(grid.nodes, pts, side="right") - 1, 0, grid.size - 1)
            bound = np.array([spline_error_bound(density.cls, h) for h in grid.steps])[seg]
            worst = max(worst, float(np.max(err / bound)))
    record(8, "interpolation error within bound", worst <= 1, f"max ratio {worst:.3f}")


def test_criterion_9_branch():
    rng = np.random.default_rng(9)
    worst = 0.0
    for sign in (1, -1):
        zs = rng.uniform(-3, 3, 100) + 1j * sign * rng.uniform(1e-2, 3, 100)
        for z in zs:
            worst = max(worst, abs(sqrt_cut(z) - path_continued_sqrt(z)))
    far = 10 ** rng.uniform(1, 8, 200) * np.exp(2j * np.pi * rng.uniform(size=200))
    asym = max(abs(sqrt_cut(z) - z) * abs(z) for z in far)
    ok = worst <= 1e-12 and asym <= 2
    record(9, "branch of sqrt(z^2 - 1)", ok, f"path deviation {worst:.1e}, max |z| |w - z| {asym:.3f}")
