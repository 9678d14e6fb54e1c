"""Partitions of [-1, 1] used as spline and quadrature grids."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InvalidGridError


class Grid:
    """Immutable partition -1 = t_0 < t_1 < ... < t_N = 1.

    Grids compare and hash by their node values so they can key weight
    caches.
    """

    __slots__ = ("_nodes", "_steps", "_hash")

    def __init__(self, nodes: Sequence[float]):
        t = np.array(nodes, dtype=float)
        if t.ndim != 1:
            raise InvalidGridError("nodes must be a flat sequence")
        if t.size < 3:
            raise InvalidGridError(f"need at least 2 segments, got {t.size - 1}")
        if not np.all(np.isfinite(t)):
            raise InvalidGridError("nodes must be finite")
        # endpoints compared exactly: grids are constructed, not measured
        if t[0] != -1.0 or t[-1] != 1.0:
            raise InvalidGridError(f"endpoints must be exactly -1 and 1, got {t[0]!r}, {t[-1]!r}")
        h = np.diff(t)
        if not np.all(h > 0):
            bad = int(np.argmin(h))
            raise InvalidGridError(
                f"nodes must be strictly increasing (t[{bad}]={t[bad]!r}, t[{bad + 1}]={t[bad + 1]!r})"
            )
        t.flags.writeable = False
        h.flags.writeable = False
        self._nodes = t
        self._steps = h
        self._hash = hash(t.tobytes())

    @property
    def nodes(self) -> np.ndarray:
        return self._nodes

    @property
    def steps(self) -> np.ndarray:
        return self._steps

    @property
    def size(self) -> int:
        """Number of segments N."""
        return self._nodes.size - 1

    def __len__(self):
        return self._nodes.size

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return np.array_equal(self._nodes, other._nodes)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.size <= 8:
            return f"Grid({self._nodes.tolist()!r})"
        return f"Grid(N={self.size}, gamma={mesh_ratio(self):.6g})"


def make_uniform(n: int) -> Grid:
    """Uniform grid with ``n`` segments, t_k = -1 + 2k/n."""
    if int(n) != n or n < 2:
        raise InvalidGridError(f"uniform grid needs an integer N >= 2, got {n!r}")
    n = int(n)
    nodes = -1.0 + 2.0 * np.arange(n + 1) / n
    # pin the endpoints against rounding
    nodes[0], nodes[-1] = -1.0, 1.0
    return Grid(nodes)


def make_custom(nodes: Sequence[float]) -> Grid:
    return Grid(nodes)


def mesh_ratio(grid: Grid) -> float:
    """Mesh ratio gamma = N * max_k h_k (equal to 2 on uniform grids)."""
    gamma = float(grid.size * grid.steps.max())
    # rounding in the node values can push a uniform grid slightly off 2
    if gamma - 2.0 <= 8 * grid.size * np.finfo(float).eps:
        return 2.0
    return gamma


def load_nodes(path: str | Path) -> Grid:
    """Read a grid from a JSON array of node values."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidGridError(f"cannot read nodes from {path}: {exc}") from exc
    if not isinstance(data, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in data
    ):
        raise InvalidGridError(f"{path}: expected a JSON array of numbers")
    return Grid(data)
