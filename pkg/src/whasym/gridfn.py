"""Matrix-valued samples on a compactified grid over the extended real line.

Nodes sit at x_j = L*tan(theta_j) with theta_j uniform in (-pi/2, pi/2), so
integrals over the whole line become midpoint sums of pi-periodic integrands
(spectrally accurate for symbols with limits at infinity) and the point at
infinity is carried explicitly by every sampled function.

All containers are immutable after construction and all operations are pure,
so values can be shared freely across threads.  Reductions use numpy's
fixed-order pairwise summation; results do not depend on the worker count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ValidationError

__all__ = [
    "Grid",
    "SampledMatrixFunction",
    "make_grid",
    "sample",
    "sample_scalar",
    "identity",
    "constant",
    "eval_at",
    "sup_norm",
    "holder_seminorm_estimate",
    "holder_norm_estimate",
]


@dataclass(frozen=True, eq=False)
class Grid:
    """Compactified discretization of the extended real line.

    Attributes
    ----------
    scale : float
        The map parameter L in x = L*tan(theta); larger L spends resolution
        on the tails, smaller L near the origin.
    theta : ndarray
        Uniform midpoint angles in (-pi/2, pi/2), exactly antisymmetric.
    nodes : ndarray
        Strictly increasing abscissae, exactly symmetric about 0.
    weights : ndarray
        Quadrature weights for integrals over the real line induced by the
        tangent substitution.
    """

    scale: float
    theta: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.nodes)


def make_grid(scale: float, node_count: int) -> Grid:
    """Build the symmetric tangent grid with `node_count` nodes.

    `node_count` must be even and at least 8; `scale` must be positive.
    Nodes and weights are mirrored from the positive half so that
    x[N-1-j] == -x[j] holds bit-for-bit.
    """
    n = int(node_count)
    if n % 2 != 0 or n < 8:
        raise ValidationError(f"node_count must be even and >= 8, got {node_count}")
    if not (scale > 0):
        raise ValidationError(f"scale must be positive, got {scale}")
    half = n // 2
    theta_pos = np.pi * (2 * np.arange(half) + 1) / (2 * n)
    theta = np.concatenate([-theta_pos[::-1], theta_pos])
    nodes_pos = scale * np.tan(theta_pos)
    nodes = np.concatenate([-nodes_pos[::-1], nodes_pos])
    w_pos = scale * (np.pi / n) / np.cos(theta_pos) ** 2
    weights = np.concatenate([w_pos[::-1], w_pos])
    for arr in (theta, nodes, weights):
        arr.setflags(write=False)
    return Grid(scale=float(scale), theta=theta, nodes=nodes, weights=weights)


@dataclass(frozen=True, eq=False)
class SampledMatrixFunction:
    """n x n complex matrix samples on a Grid plus the value at infinity."""

    grid: Grid
    values: np.ndarray
    value_at_infinity: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        inf = np.asarray(self.value_at_infinity, dtype=complex)
        if vals.ndim != 3 or vals.shape[1] != vals.shape[2]:
            raise ValidationError(f"values must have shape (N, n, n), got {vals.shape}")
        if vals.shape[0] != self.grid.node_count:
            raise ValidationError("values length does not match grid node count")
        if inf.shape != vals.shape[1:]:
            raise ValidationError("value_at_infinity shape does not match values")
        if not np.all(np.isfinite(inf)):
            raise ValidationError("value_at_infinity is not finite")
        vals.setflags(write=False)
        inf.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "value_at_infinity", inf)
        object.__setattr__(self, "dim", vals.shape[1])

    def _require_same_grid(self, other: "SampledMatrixFunction") -> None:
        if other.grid is not self.grid and not np.array_equal(
            other.grid.nodes, self.grid.nodes
        ):
            raise ValidationError("operands live on different grids")

    def __add__(self, other):
        self._require_same_grid(other)
        return SampledMatrixFunction(
            self.grid,
            self.values + other.values,
            self.value_at_infinity + other.value_at_infinity,
        )

    def __sub__(self, other):
        self._require_same_grid(other)
        return SampledMatrixFunction(
            self.grid,
            self.values - other.values,
            self.value_at_infinity - other.value_at_infinity,
        )

    def __mul__(self, scalar):
        return SampledMatrixFunction(
            self.grid, scalar * self.values, scalar * self.value_at_infinity
        )

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1.0)

    def __matmul__(self, other):
        """Node-wise matrix product (order preserved; no commutativity)."""
        self._require_same_grid(other)
        return SampledMatrixFunction(
            self.grid,
            self.values @ other.values,
            self.value_at_infinity @ other.value_at_infinity,
        )

    def reflect_conj(self) -> "SampledMatrixFunction":
        """Samples of conj(f(-x)), exact on the symmetric grid."""
        return SampledMatrixFunction(
            self.grid,
            np.conj(self.values[::-1]),
            np.conj(self.value_at_infinity),
        )

    def at(self, x):
        return eval_at(self, x)


def sample(f, grid: Grid, f_inf) -> SampledMatrixFunction:
    """Sample a pointwise matrix-valued rule on the grid.

    A non-finite value at any node is an error naming the node.
    """
    f_inf = np.atleast_2d(np.asarray(f_inf, dtype=complex))
    vals = np.empty((grid.node_count,) + f_inf.shape, dtype=complex)
    for j, x in enumerate(grid.nodes):
        vals[j] = np.asarray(f(x), dtype=complex)
        if not np.all(np.isfinite(vals[j])):
            raise ValidationError(f"non-finite sample at node {j} (x = {x!r})")
    return SampledMatrixFunction(grid, vals, f_inf)


def sample_scalar(f, grid: Grid, f_inf) -> SampledMatrixFunction:
    """Sample a scalar rule as a 1x1 matrix function (rule may be vectorized)."""
    try:
        vals = np.asarray(f(grid.nodes), dtype=complex)
        if vals.shape != (grid.node_count,):
            raise TypeError
    except TypeError:
        vals = np.array([complex(f(x)) for x in grid.nodes])
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        j = int(bad[0])
        raise ValidationError(f"non-finite sample at node {j} (x = {grid.nodes[j]!r})")
    return SampledMatrixFunction(grid, vals[:, None, None], [[complex(f_inf)]])


def identity(grid: Grid, dim: int) -> SampledMatrixFunction:
    eye = np.eye(dim, dtype=complex)
    return SampledMatrixFunction(grid, np.tile(eye, (grid.node_count, 1, 1)), eye)


def constant(grid: Grid, mat) -> SampledMatrixFunction:
    mat = np.atleast_2d(np.asarray(mat, dtype=complex))
    return SampledMatrixFunction(grid, np.tile(mat, (grid.node_count, 1, 1)), mat)


def eval_at(f: SampledMatrixFunction, x):
    """Evaluate by cubic-spline interpolation in the theta coordinate.

    Exact (bit-for-bit) at grid nodes.  Beyond the extreme nodes the result
    blends linearly in theta from the outermost sample to the stored value
    at infinity, reaching it at theta = +-pi/2.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    grid = f.grid
    theta_q = np.arctan(x_arr / grid.scale)
    spline = CubicSpline(grid.theta, f.values, axis=0)
    out = spline(theta_q)

    lo, hi = grid.theta[0], grid.theta[-1]
    for side, edge, edge_val in (
        (theta_q < lo, lo, f.values[0]),
        (theta_q > hi, hi, f.values[-1]),
    ):
        if np.any(side):
            frac = (np.abs(theta_q[side]) - abs(edge)) / (np.pi / 2 - abs(edge))
            out[side] = (
                (1.0 - frac)[:, None, None] * edge_val
                + frac[:, None, None] * f.value_at_infinity
            )

    # exact node hits return the stored sample untouched
    idx = np.searchsorted(grid.nodes, x_arr)
    idx = np.clip(idx, 0, grid.node_count - 1)
    exact = grid.nodes[idx] == x_arr
    if np.any(exact):
        out[exact] = f.values[idx[exact]]

    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return out[0]
    return out


def sup_norm(f: SampledMatrixFunction) -> float:
    """Max over nodes of the max-entry modulus."""
    return float(np.max(np.abs(f.values))) if f.values.size else 0.0


def _stride_set(n: int):
    s = 1
    while s < n:
        yield s
        s *= 2


def holder_seminorm_estimate(f: SampledMatrixFunction, mu: float) -> float:
    """Discrete lower bound on the Hoelder seminorm in the compactified metric.

    The metric between abscissae is |1/(x1+i) - 1/(x2+i)|**mu; pairs are the
    adjacent ones plus dyadic strides, so both local steepness and large-scale
    swings are seen.  Requires 0 < mu < 1.
    """
    return float(np.max(_holder_entry_seminorms(f, mu)))


def holder_norm_estimate(f: SampledMatrixFunction, mu: float) -> float:
    """Entrywise Hoelder-norm estimate: max over entries of sup + seminorm."""
    sup = np.max(np.abs(f.values), axis=0)
    return float(np.max(sup + _holder_entry_seminorms(f, mu)))


def _holder_entry_seminorms(f: SampledMatrixFunction, mu: float) -> np.ndarray:
    if not (0.0 < mu < 1.0):
        raise ValidationError(f"mu must lie strictly in (0, 1), got {mu}")
    m = 1.0 / (f.grid.nodes + 1j)
    best = np.zeros((f.dim, f.dim))
    for s in _stride_set(f.grid.node_count):
        dist = np.abs(m[s:] - m[:-s]) ** mu
        diff = np.abs(f.values[s:] - f.values[:-s])
        ratios = diff / dist[:, None, None]
        np.maximum(best, ratios.max(axis=0), out=best)
    return best
