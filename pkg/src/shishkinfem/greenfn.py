"""Discrete Green's functions and their L2 / energy norms.

The Green's function for source node (x_m, y_n) is the discrete field
g with A^T g = e_mn over interior nodes, so that for every discrete v,
B_h(v, g) = v(x_m, y_n).  Norm sweeps over (eps, N) probe the scaling
of ||g|| and ||g||_{1,eps} with the source region.
"""

from dataclasses import dataclass, asdict

import numpy as np

from .meshgen import Region, transition_params, build_mesh
from .assembly import FeField, assemble, assemble_mass, assemble_stiffness
from .linsolve import solve_transpose, DEFAULT_TOL, DEFAULT_MAX_ITER

__all__ = [
    "GreenReport",
    "green_function",
    "fe_l2_norm",
    "fe_energy_norm",
    "default_probes",
    "green_norm_sweep",
]


@dataclass
class GreenReport:
    eps: float
    N: int
    region: str
    source_x: float
    source_y: float
    l2_norm: float
    energy_norm: float

    def as_dict(self):
        return asdict(self)


def green_function(A, mesh, source_node, tol=DEFAULT_TOL,
                   max_iter=DEFAULT_MAX_ITER, method="auto"):
    """Discrete Green's function for a source at a given interior node.

    source_node is a flat mesh node index.  Returns an FeField with
    zero boundary values.
    """
    idx = mesh.interior_index()
    if source_node < 0 or source_node >= mesh.n_nodes or idx[source_node] < 0:
        raise ValueError(f"source node {source_node} is not an interior node")
    e = np.zeros(mesh.n_interior)
    e[idx[source_node]] = 1.0
    g, _ = solve_transpose(A, e, tol=tol, max_iter=max_iter, method=method)
    return FeField.from_interior(mesh, g)


def fe_l2_norm(field, M):
    """sqrt(v^T M v) over interior values."""
    v = field.interior_values()
    if M.shape[0] != len(v):
        raise ValueError("mass matrix does not match field")
    return float(np.sqrt(v @ (M @ v)))


def fe_energy_norm(field, K, M, eps):
    """sqrt(eps v^T K v + v^T M v)."""
    v = field.interior_values()
    if K.shape[0] != len(v) or M.shape[0] != len(v):
        raise ValueError("matrices do not match field")
    return float(np.sqrt(eps * (v @ (K @ v)) + v @ (M @ v)))


def default_probes(lambda_x, lambda_y):
    """Canonical probe point per region (overridable from the CLI)."""
    return {
        Region.COARSE: (0.5, 0.0),
        Region.LAYER_X: (lambda_x / 2.0, 0.0),
        Region.LAYER_Y: (0.5, 1.0 - lambda_y / 2.0),
        Region.LAYER_XY: (lambda_x / 2.0, 1.0 - lambda_y / 2.0),
    }


def green_norm_sweep(spec_family, N_list, eps_list, probes=None,
                     quad_order=3, tol=DEFAULT_TOL, method="auto"):
    """Green's-function norms per (eps, N, region).

    spec_family maps eps -> ProblemSpec.  For each run the source is the
    interior node nearest the region's probe point.  Returns a list of
    GreenReport in deterministic (eps, N, region) order.
    """
    reports = []
    for eps in eps_list:
        spec = spec_family(eps)
        lam_x, lam_y = transition_params(eps, spec.alpha, spec.beta)
        probe_map = probes if probes is not None else default_probes(lam_x, lam_y)
        for N in N_list:
            mesh = build_mesh(N, lam_x, lam_y)
            A, _ = assemble(mesh, spec, quad_order)
            M = assemble_mass(mesh)
            K = assemble_stiffness(mesh)
            coords = mesh.node_coords()
            for region in (Region.COARSE, Region.LAYER_X,
                           Region.LAYER_Y, Region.LAYER_XY):
                px, py = probe_map[region]
                node = mesh.nearest_node(px, py)
                g = green_function(A, mesh, node, tol=tol, method=method)
                sx, sy = coords[node]
                reports.append(GreenReport(
                    eps=eps, N=N, region=region.value,
                    source_x=float(sx), source_y=float(sy),
                    l2_norm=fe_l2_norm(g, M),
                    energy_norm=fe_energy_norm(g, K, M, eps)))
    return reports
