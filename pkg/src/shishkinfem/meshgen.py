"""Layer-adapted piecewise-uniform (Shishkin) tensor meshes on [-1,1]^2.

The x-axis carries an interior-layer refinement around x=0, the y-axis
boundary-layer refinements near y=-1 and y=+1.  Transition parameters
depend only on the perturbation parameter eps (and the bounds alpha,
beta), never on N, so meshes for N and 2N are nested.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Region",
    "MeshAxis",
    "TensorMesh",
    "transition_params",
    "build_x_axis",
    "build_y_axis",
    "build_mesh",
    "classify",
    "classify_points",
]


class Region(Enum):
    """Subregion tags induced by the mesh transition lines."""

    COARSE = "coarse"
    LAYER_X = "layer_x"
    LAYER_Y = "layer_y"
    LAYER_XY = "layer_xy"


def transition_params(eps, alpha, beta):
    """Mesh transition parameters (lambda_x, lambda_y).

    lambda_x = min((2 eps / alpha) log(1/eps), 1/2)
    lambda_y = min(2 sqrt(eps/beta) log(1/eps^(3/2)), 1/4)

    log is the natural logarithm.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if alpha <= 0.0 or beta <= 0.0:
        raise ValueError("alpha and beta must be positive")
    log_inv_eps = -np.log(eps)
    lambda_x = min(2.0 * eps / alpha * log_inv_eps, 0.5)
    lambda_y = min(2.0 * np.sqrt(eps / beta) * 1.5 * log_inv_eps, 0.25)
    return lambda_x, lambda_y


@dataclass(frozen=True)
class MeshAxis:
    """A 1D piecewise-uniform grid with its transition parameter."""

    nodes: np.ndarray
    lam: float

    @property
    def n_intervals(self):
        return len(self.nodes) - 1

    def spacings(self):
        return np.diff(self.nodes)


def build_x_axis(N, lambda_x):
    """Full-domain x-axis on [-1,1] with 2N intervals.

    The half-axis [0,1] gets N/2 uniform intervals in [0, lambda_x] and
    N/2 in [lambda_x, 1]; the partition is mirrored about 0.
    """
    if N % 2 != 0 or N < 4:
        raise ValueError(f"N must be an even integer >= 4, got {N}")
    if not 0.0 < lambda_x <= 0.5:
        raise ValueError(f"lambda_x must lie in (0, 1/2], got {lambda_x}")
    half = np.concatenate([
        np.linspace(0.0, lambda_x, N // 2 + 1),
        np.linspace(lambda_x, 1.0, N // 2 + 1)[1:],
    ])
    nodes = np.concatenate([-half[::-1], half[1:]])
    return MeshAxis(nodes=nodes, lam=lambda_x)


def build_y_axis(N, lambda_y):
    """y-axis on [-1,1]: N/4 intervals in each boundary strip, N/2 between."""
    if N % 4 != 0 or N < 4:
        raise ValueError(f"N must be a positive multiple of 4, got {N}")
    if not 0.0 < lambda_y <= 0.25:
        raise ValueError(f"lambda_y must lie in (0, 1/4], got {lambda_y}")
    nodes = np.concatenate([
        np.linspace(-1.0, -1.0 + lambda_y, N // 4 + 1),
        np.linspace(-1.0 + lambda_y, 1.0 - lambda_y, N // 2 + 1)[1:],
        np.linspace(1.0 - lambda_y, 1.0, N // 4 + 1)[1:],
    ])
    return MeshAxis(nodes=nodes, lam=lambda_y)


@dataclass(frozen=True)
class TensorMesh:
    """Tensor product of the two Shishkin axes.

    Nodes are numbered row-major in y: node (i, j) has flat index
    j * nx + i, with i indexing x and j indexing y.
    """

    x_axis: MeshAxis
    y_axis: MeshAxis

    @property
    def lambda_x(self):
        return self.x_axis.lam

    @property
    def lambda_y(self):
        return self.y_axis.lam

    @property
    def nx(self):
        return len(self.x_axis.nodes)

    @property
    def ny(self):
        return len(self.y_axis.nodes)

    @property
    def n_nodes(self):
        return self.nx * self.ny

    @property
    def n_interior(self):
        return (self.nx - 2) * (self.ny - 2)

    def node_coords(self):
        """(n_nodes, 2) array of node coordinates in flat numbering."""
        X, Y = np.meshgrid(self.x_axis.nodes, self.y_axis.nodes)
        return np.column_stack([X.ravel(), Y.ravel()])

    def interior_index(self):
        """Map flat node index -> interior index, -1 on the boundary."""
        idx = -np.ones(self.n_nodes, dtype=np.int64)
        mask = self.interior_mask()
        idx[mask] = np.arange(mask.sum())
        return idx

    def interior_mask(self):
        i = np.tile(np.arange(self.nx), self.ny)
        j = np.repeat(np.arange(self.ny), self.nx)
        return (i > 0) & (i < self.nx - 1) & (j > 0) & (j < self.ny - 1)

    def flat_index(self, i, j):
        return j * self.nx + i

    def nearest_node(self, x, y, interior=True):
        """Flat index of the mesh node nearest (x, y).

        With interior=True the search is restricted to interior nodes.
        """
        xs = self.x_axis.nodes
        ys = self.y_axis.nodes
        if interior:
            i = 1 + int(np.argmin(np.abs(xs[1:-1] - x)))
            j = 1 + int(np.argmin(np.abs(ys[1:-1] - y)))
        else:
            i = int(np.argmin(np.abs(xs - x)))
            j = int(np.argmin(np.abs(ys - y)))
        return self.flat_index(i, j)


def build_mesh(N, lambda_x, lambda_y):
    """Tensor mesh with 2N intervals in x and N intervals in y."""
    return TensorMesh(x_axis=build_x_axis(N, lambda_x),
                      y_axis=build_y_axis(N, lambda_y))


def classify(x, y, lambda_x, lambda_y):
    """Region tag of a point of the closed domain [-1,1]^2.

    Points on a transition line belong to the layer region (closed-layer
    tie-break).
    """
    if abs(x) > 1.0 or abs(y) > 1.0:
        raise ValueError(f"point ({x}, {y}) outside [-1,1]^2")
    in_x = abs(x) <= lambda_x
    in_y = abs(y) >= 1.0 - lambda_y
    if in_x and in_y:
        return Region.LAYER_XY
    if in_x:
        return Region.LAYER_X
    if in_y:
        return Region.LAYER_Y
    return Region.COARSE


def classify_points(x, y, lambda_x, lambda_y):
    """Vectorized classify: returns an object array of Region tags."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(x) > 1.0) or np.any(np.abs(y) > 1.0):
        raise ValueError("points outside [-1,1]^2")
    in_x = np.abs(x) <= lambda_x
    in_y = np.abs(y) >= 1.0 - lambda_y
    out = np.empty(x.shape, dtype=object)
    out[...] = Region.COARSE
    out[in_x & ~in_y] = Region.LAYER_X
    out[~in_x & in_y] = Region.LAYER_Y
    out[in_x & in_y] = Region.LAYER_XY
    return out
