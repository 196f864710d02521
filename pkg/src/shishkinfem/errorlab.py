"""Double-mesh errors, convergence rates, and interpolation studies.

Without an exact solution, errors are estimated by the double-mesh
principle: solve with parameters N and 2N (same transition parameters,
so the meshes are nested) and take region-wise maxima of the nodal
differences at the N-mesh nodes.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .meshgen import (Region, transition_params, build_mesh, classify_points)
from .assembly import FeField, assemble
from .linsolve import solve, DEFAULT_TOL, DEFAULT_MAX_ITER

__all__ = [
    "ErrorTable",
    "bilinear_interp",
    "solve_problem",
    "double_mesh_error",
    "convergence_rate",
    "error_table",
    "interp_error_study",
    "mms_convergence",
]

REGION_ORDER = (Region.COARSE, Region.LAYER_X, Region.LAYER_Y, Region.LAYER_XY)

NESTING_TOL = 1e-12


@dataclass
class ErrorTable:
    """Region-wise double-mesh errors and derived rates.

    errors: rows (eps, N, region_name, error)
    rates:  rows (eps, N, region_name, rate); rate at N pairs the errors
            at N and 2N, so it exists only when both are present.
    """

    errors: list = field(default_factory=list)
    rates: list = field(default_factory=list)

    def error(self, eps, N, region):
        name = region.value if isinstance(region, Region) else region
        for e, n, r, v in self.errors:
            if e == eps and n == N and r == name:
                return v
        raise KeyError((eps, N, name))

    def rate(self, eps, N, region):
        name = region.value if isinstance(region, Region) else region
        for e, n, r, v in self.rates:
            if e == eps and n == N and r == name:
                return v
        raise KeyError((eps, N, name))


def bilinear_interp(field_, points):
    """Evaluate the piecewise-bilinear extension of a nodal field.

    points: (m, 2) array or a single (x, y) pair inside the closed
    domain.  Exact at nodes and for functions linear in x and in y.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    mesh = field_.mesh
    xs = mesh.x_axis.nodes
    ys = mesh.y_axis.nodes
    if (pts[:, 0].min() < xs[0] - 1e-14 or pts[:, 0].max() > xs[-1] + 1e-14
            or pts[:, 1].min() < ys[0] - 1e-14 or pts[:, 1].max() > ys[-1] + 1e-14):
        raise ValueError("point outside the mesh domain")
    i = np.clip(np.searchsorted(xs, pts[:, 0], side="right") - 1, 0, len(xs) - 2)
    j = np.clip(np.searchsorted(ys, pts[:, 1], side="right") - 1, 0, len(ys) - 2)
    hx = xs[i + 1] - xs[i]
    hy = ys[j + 1] - ys[j]
    s = (pts[:, 0] - xs[i]) / hx
    t = (pts[:, 1] - ys[j]) / hy
    grid = field_.grid()
    v00 = grid[j, i]
    v10 = grid[j, i + 1]
    v11 = grid[j + 1, i + 1]
    v01 = grid[j + 1, i]
    # corner-difference form: exact for constant fields, not just close
    out = (v00 + s * (v10 - v00) + t * (v01 - v00)
           + s * t * (v11 - v10 - v01 + v00))
    if np.asarray(points).ndim == 1:
        return float(out[0])
    return out


def solve_problem(spec, N, quad_order=3, tol=DEFAULT_TOL,
                  max_iter=DEFAULT_MAX_ITER, method="auto", lam=None):
    """Build the Shishkin mesh for (spec, N), assemble, and solve."""
    if lam is None:
        lam = transition_params(spec.eps, spec.alpha, spec.beta)
    mesh = build_mesh(N, *lam)
    A, F = assemble(mesh, spec, quad_order)
    u, _ = solve(A, F, tol=tol, max_iter=max_iter, method=method)
    return FeField.from_interior(mesh, u)


def _check_nested(coarse_axis, fine_axis):
    if not np.allclose(fine_axis.nodes[::2], coarse_axis.nodes,
                       rtol=0.0, atol=NESTING_TOL):
        raise ValueError("meshes are not nested; transition parameters differ")


def _region_max(mesh, diff):
    """Region-wise maxima of |diff| over all mesh nodes."""
    coords = mesh.node_coords()
    tags = classify_points(coords[:, 0], coords[:, 1],
                           mesh.lambda_x, mesh.lambda_y)
    out = {}
    for region in REGION_ORDER:
        mask = tags == region
        out[region] = float(np.abs(diff[mask]).max()) if mask.any() else 0.0
    return out


def _compare_nested(u_N, u_2N):
    """Region-wise max |U_N - U_2N| at the N-mesh nodes."""
    _check_nested(u_N.mesh.x_axis, u_2N.mesh.x_axis)
    _check_nested(u_N.mesh.y_axis, u_2N.mesh.y_axis)
    fine = u_2N.grid()[::2, ::2]
    diff = (u_N.grid() - fine).ravel()
    return _region_max(u_N.mesh, diff)


def double_mesh_error(spec, N, quad_order=3, tol=DEFAULT_TOL,
                      max_iter=DEFAULT_MAX_ITER, method="auto"):
    """Double-mesh error estimate per region for one (spec, N)."""
    lam = transition_params(spec.eps, spec.alpha, spec.beta)
    u_N = solve_problem(spec, N, quad_order, tol, max_iter, method, lam=lam)
    u_2N = solve_problem(spec, 2 * N, quad_order, tol, max_iter, method, lam=lam)
    return _compare_nested(u_N, u_2N)


def convergence_rate(e_N, e_2N):
    """log2(e_N / e_2N)."""
    if e_N <= 0.0 or e_2N <= 0.0:
        raise ValueError("double-mesh errors must be positive")
    return math.log2(e_N / e_2N)


def error_table(spec_family, eps_list, N_list, quad_order=3,
                tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, method="auto",
                progress=None):
    """Double-mesh errors and rates over an (eps, N) grid.

    spec_family maps eps -> ProblemSpec.  Solutions are shared between
    the error at N (needs N, 2N) and the rate at N (needs errors at N
    and 2N), so each (eps, N) is solved once.
    """
    table = ErrorTable()
    N_list = sorted(N_list)
    solve_Ns = sorted(set(N_list) | {2 * n for n in N_list})
    for eps in eps_list:
        spec = spec_family(eps)
        lam = transition_params(eps, spec.alpha, spec.beta)
        fields = {}
        for n in solve_Ns:
            if progress is not None:
                progress(eps, n)
            fields[n] = solve_problem(spec, n, quad_order, tol, max_iter,
                                      method, lam=lam)
        errors = {}
        for n in N_list:
            errors[n] = _compare_nested(fields[n], fields[2 * n])
            for region in REGION_ORDER:
                table.errors.append((eps, n, region.value, errors[n][region]))
        for n in N_list:
            if 2 * n not in errors:
                continue
            for region in REGION_ORDER:
                e1, e2 = errors[n][region], errors[2 * n][region]
                if e1 > 0.0 and e2 > 0.0:
                    table.rates.append((eps, n, region.value,
                                        convergence_rate(e1, e2)))
    return table


def interp_error_study(template, eps, alpha, beta, N_list,
                       samples_per_cell=5):
    """Max bilinear-interpolation error of a template, per region.

    For each N: build the Shishkin mesh, sample the template at the
    nodes, and measure max |template - interpolant| over an s x s
    uniform sub-sample of every cell.  Returns {N: {Region: error}}.
    """
    lam_x, lam_y = transition_params(eps, alpha, beta)
    results = {}
    for N in sorted(N_list):
        mesh = build_mesh(N, lam_x, lam_y)
        xs = mesh.x_axis.nodes
        ys = mesh.y_axis.nodes
        nodal = template(*np.meshgrid(xs, ys))
        fld = FeField(mesh=mesh, values=nodal.ravel())
        maxima = {region: 0.0 for region in REGION_ORDER}
        offsets = np.linspace(0.0, 1.0, samples_per_cell)
        hx = np.diff(xs)
        hy = np.diff(ys)
        X0, Y0 = np.meshgrid(xs[:-1], ys[:-1])
        H, K = np.meshgrid(hx, hy)
        for u in offsets:
            for v in offsets:
                px = (X0 + u * H).ravel()
                py = (Y0 + v * K).ravel()
                exact = template(px, py)
                approx = bilinear_interp(fld, np.column_stack([px, py]))
                err = np.abs(exact - approx)
                tags = classify_points(px, py, lam_x, lam_y)
                for region in REGION_ORDER:
                    mask = tags == region
                    if mask.any():
                        maxima[region] = max(maxima[region],
                                             float(err[mask].max()))
        results[N] = maxima
    return results


def mms_convergence(spec, N_list, quad_order=3, tol=DEFAULT_TOL,
                    max_iter=DEFAULT_MAX_ITER, method="auto", lam=None,
                    zero_tol=1e-13):
    """Max nodal error against the exact solution, with observed rates.

    Returns (errors, rates): errors maps N -> max |u_h - u|; rates maps
    N -> log2 ratio against the next N, or None when an error is below
    zero_tol (rate undefined).
    """
    if spec.exact is None:
        raise ValueError("spec has no exact solution")
    N_list = sorted(N_list)
    errors = {}
    for N in N_list:
        uh = solve_problem(spec, N, quad_order, tol, max_iter, method, lam=lam)
        coords = uh.mesh.node_coords()
        exact = spec.exact(coords[:, 0], coords[:, 1])
        errors[N] = float(np.abs(uh.values - exact).max())
    rates = {}
    for a, b in zip(N_list[:-1], N_list[1:]):
        if errors[a] <= zero_tol or errors[b] <= zero_tol:
            rates[a] = None
        else:
            rates[a] = math.log2(errors[a] / errors[b])
    return errors, rates
