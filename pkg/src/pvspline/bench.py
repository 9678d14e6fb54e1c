"""Empirical convergence studies checked against the a priori bounds."""

from __future__ import annotations

import csv
import json
import logging
import math
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .bounds import bound_thm2, real_bound
from .errors import ConvergenceError, InsufficientDataError
from .grid import Grid, make_uniform, mesh_ratio
from .kernel_complex import NearCutWarning
from .oracle import OracleConfig, offcut_oracle, pv_oracle
from .quadrature import eval_offcut_many, eval_singular_many
from .spline import ClassTag, DensityFunction, FunctionClassSpec

log = logging.getLogger(__name__)

N_CHEBYSHEV = 201
NEAR_NODE_OFFSET = 1e-4
NEAR_NODE_COUNT = 5
CIRCLE_RADII = (1.25, 2.0, 5.0)
CIRCLE_POINTS = 64
NEAR_CUT_DISTANCE = 0.05
NEAR_CUT_POINTS = 16


@dataclass
class ConvergenceRow:
    N: int
    max_error: float
    bound: float
    ratio: float
    gamma: float = 2.0
    flagged: bool = False
    note: str = ""


@dataclass
class ConvergenceReport:
    density: str
    cls: FunctionClassSpec
    mode: str
    gamma: float
    bound_kind: str
    rows: list[ConvergenceRow] = field(default_factory=list)
    fitted_order: float | None = None
    warnings: list[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "density": self.density,
            "class": self.cls.to_dict(),
            "mode": self.mode,
            "gamma": self.gamma,
            "bound_kind": self.bound_kind,
            "rows": [asdict(r) for r in self.rows],
            "fitted_order": self.fitted_order,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, d):
        spec = dict(d["class"])
        tag = spec.pop("tag")
        return cls(
            density=d["density"],
            cls=FunctionClassSpec(tag, **spec),
            mode=d["mode"],
            gamma=d["gamma"],
            bound_kind=d["bound_kind"],
            rows=[ConvergenceRow(**r) for r in d["rows"]],
            fitted_order=d["fitted_order"],
            warnings=list(d.get("warnings", [])),
        )


def chebyshev_points(n: int = N_CHEBYSHEV) -> np.ndarray:
    """Zeros of T_n, all strictly inside (-1, 1)."""
    j = np.arange(n)
    return np.cos((2 * j + 1) * np.pi / (2 * n))


def real_samples(grid: Grid) -> np.ndarray:
    """Evaluation points for the real rule on ``grid``.

    Chebyshev points, every interior node, and points 1e-4 either side of
    five spread-out interior nodes, where the error tends to peak.
    """
    interior = grid.nodes[1:-1]
    picks = np.unique(np.round(np.linspace(0, interior.size - 1, NEAR_NODE_COUNT)).astype(int))
    near = np.concatenate([interior[picks] - NEAR_NODE_OFFSET, interior[picks] + NEAR_NODE_OFFSET])
    near = near[np.abs(near) < 1.0]
    return np.concatenate([chebyshev_points(), interior, near])


def complex_samples() -> np.ndarray:
    """Evaluation points for the off-cut rule.

    64 points on each circle |z| = 1.25, 2, 5 and 16 points at distance
    0.05 from the cut, half above and half below it.
    """
    phi = (np.arange(CIRCLE_POINTS) + 0.5) * 2 * np.pi / CIRCLE_POINTS
    circles = [r * np.exp(1j * phi) for r in CIRCLE_RADII]
    psi = (np.arange(NEAR_CUT_POINTS) + 0.5) * 2 * np.pi / NEAR_CUT_POINTS
    near = np.cos(psi) + 1j * NEAR_CUT_DISTANCE * np.sign(np.sin(psi))
    return np.concatenate(circles + [near])


def _default_tolerance(cls, gamma, n_max, mode):
    # two orders below the a priori error at the finest grid, and never
    # looser than 1e-8
    budget = bound_thm2(cls, gamma, n_max) if mode == "complex" else real_bound(cls, gamma, n_max)
    return float(min(1e-8, max(1e-13, 1e-2 * budget.bound_value)))


def run_convergence(
    density: DensityFunction,
    mode: str,
    N_list: Sequence[int],
    *,
    grid_factory: Callable[[int], Grid] = make_uniform,
    oracle_config: OracleConfig | None = None,
    real_points: Callable[[Grid], np.ndarray] = real_samples,
    complex_points: Callable[[], np.ndarray] = complex_samples,
) -> ConvergenceReport:
    """Measure the maximum quadrature error over the sample set for each N."""
    if mode not in ("real", "complex"):
        raise ValueError(f"mode must be 'real' or 'complex', got {mode!r}")
    if density.cls is None:
        raise ValueError(f"density {density.label!r} has no declared class")
    N_list = [int(n) for n in N_list]
    if N_list != sorted(N_list) or len(set(N_list)) != len(N_list):
        raise ValueError("N_list must be strictly ascending")
    cls = density.cls
    grids = [grid_factory(n) for n in N_list]
    gammas = [mesh_ratio(g) for g in grids]
    if mode == "complex" and cls.tag is ClassTag.HOLDER:
        raise ValueError("no off-cut bound is available for the Holder class")
    bound_fn = bound_thm2 if mode == "complex" else real_bound
    if oracle_config is None:
        oracle_config = OracleConfig(tolerance=_default_tolerance(cls, max(gammas), N_list[-1], mode))
    kind = bound_fn(cls, gammas[-1], max(N_list[-1], 3)).kind
    report = ConvergenceReport(density.label, cls, mode, max(gammas), kind)

    cache: dict = {}

    def reference(p):
        if p not in cache:
            if mode == "real":
                cache[p] = pv_oracle(density, p, oracle_config)
            else:
                cache[p] = offcut_oracle(density, p, oracle_config)
        return cache[p]

    for n, grid, gamma in zip(N_list, grids, gammas):
        bound = bound_fn(cls, gamma, n).bound_value
        points = real_points(grid) if mode == "real" else complex_points()
        try:
            exact = np.array([reference(float(p) if mode == "real" else complex(p)) for p in points])
        except ConvergenceError as exc:
            log.warning("N=%d: oracle did not converge: %s", n, exc)
            report.rows.append(ConvergenceRow(n, math.nan, bound, math.nan, gamma, True, str(exc)))
            continue
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", NearCutWarning)
            if mode == "real":
                approx = eval_singular_many(grid, density, points)
            else:
                approx = eval_offcut_many(grid, density, points)
        for w in caught:
            msg = f"N={n}: {w.message}"
            if msg not in report.warnings:
                report.warnings.append(msg)
        err = float(np.max(np.abs(approx - exact)))
        report.rows.append(ConvergenceRow(n, err, bound, err / bound, gamma))
        log.info("%s %s N=%d max_error=%.3e bound=%.3e", density.label, mode, n, err, bound)

    try:
        report.fitted_order = fit_order(report)
    except InsufficientDataError:
        report.fitted_order = None
    return report


def fit_order(report) -> float:
    """Least-squares slope of -log(error) against log(N).

    Accepts a :class:`ConvergenceReport` or a sequence of ``(N, error)``
    pairs. Flagged rows and non-positive errors are ignored.
    """
    if isinstance(report, ConvergenceReport):
        pairs = [(r.N, r.max_error) for r in report.rows if not r.flagged]
    else:
        pairs = list(report)
    pairs = [(n, e) for n, e in pairs if e > 0 and math.isfinite(e)]
    if len(pairs) < 3:
        raise InsufficientDataError(f"need at least 3 rows with positive error, got {len(pairs)}")
    n, e = np.array(pairs, dtype=float).T
    slope, _ = np.polyfit(np.log(n), -np.log(e), 1)
    return float(slope)


def _g17(v):
    return f"{v:.17g}"


def write_report(report: ConvergenceReport, fmt: str, path) -> Path:
    """Persist ``report`` as CSV (``N,max_error,bound,ratio``) or JSON."""
    path = Path(path)
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    try:
        with path.open("w", newline="") as fh:
            if fmt == "csv":
                writer = csv.writer(fh)
                writer.writerow(["N", "max_error", "bound", "ratio"])
                for r in report.rows:
                    writer.writerow([r.N, _g17(r.max_error), _g17(r.bound), _g17(r.ratio)])
            else:
                # repr of a float is the shortest string that round-trips
                json.dump(report.to_dict(), fh, indent=2)
                fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
    return path


def read_report(path) -> ConvergenceReport:
    with Path(path).open() as fh:
        return ConvergenceReport.from_dict(json.load(fh))
