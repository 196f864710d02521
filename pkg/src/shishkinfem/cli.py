"""Experiment orchestration and file emission.

Runs are configured by command-line flags or a key=value config file
and emit CSV (or a plain-text grid for field dumps) with a commented
metadata header, so every output is rerunnable from its header alone.

Exit codes: 0 success, 1 configuration error, 2 run/solver failure.
"""

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .meshgen import Region, transition_params
from .problem import example_5_1, mms_problem, layer_template, DEFAULT_ALPHA, DEFAULT_BETA
from .linsolve import SolveError
from .greenfn import green_norm_sweep, default_probes
from .errorlab import (error_table, interp_error_study, mms_convergence,
                       solve_problem, REGION_ORDER)

__all__ = ["RunConfig", "ConfigError", "parse_config", "run", "main"]

MODES = ("errors", "rates", "green", "field", "interp", "mms")
PROBLEMS = ("example51", "mms")

DEFAULT_EPS = (1e-5, 1e-6, 1e-7, 1e-8, 1e-9)
DEFAULT_N = (16, 32, 64, 128, 256)

OUTDIR_ENV = "SHISHKINFEM_OUTDIR"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    mode: str = "errors"
    problem: str = "example51"
    eps_list: tuple = DEFAULT_EPS
    N_list: tuple = DEFAULT_N
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    quad_order: int = 3
    tol: float = 1e-10
    max_iter: int = 20000
    template: str = "interior_x"
    probes: dict = field(default_factory=dict)
    output_dir: str = "."

    def validate(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode: unknown mode {self.mode!r}")
        if self.problem not in PROBLEMS:
            raise ConfigError(f"problem: unknown problem {self.problem!r}")
        for n in self.N_list:
            if n % 4 != 0 or n < 4:
                raise ConfigError(f"N: {n} is not a multiple of 4 (>= 4)")
        for e in self.eps_list:
            if self.mode == "mms":
                if not 0.0 < e <= 1.0:
                    raise ConfigError(f"eps: {e} outside (0, 1]")
            elif not 0.0 < e < 1.0:
                raise ConfigError(f"eps: {e} outside (0, 1)")
        if self.quad_order not in (1, 2, 3, 4):
            raise ConfigError(f"quad_order: must be 1..4, got {self.quad_order}")
        if self.tol <= 0.0:
            raise ConfigError(f"tol: must be positive, got {self.tol}")
        if self.alpha <= 0.0 or self.beta <= 0.0:
            raise ConfigError("alpha/beta: must be positive")
        return self


_KEYS = {
    "mode": str,
    "problem": str,
    "eps": "floats",
    "N": "ints",
    "alpha": float,
    "beta": float,
    "quad_order": int,
    "tol": float,
    "max_iter": int,
    "template": str,
    "output": str,
    "probe_coarse": "point",
    "probe_layer_x": "point",
    "probe_layer_y": "point",
    "probe_layer_xy": "point",
}

_PROBE_REGION = {
    "probe_coarse": Region.COARSE,
    "probe_layer_x": Region.LAYER_X,
    "probe_layer_y": Region.LAYER_Y,
    "probe_layer_xy": Region.LAYER_XY,
}


def _parse_value(key, kind, raw):
    try:
        if kind == "floats":
            return tuple(float(v) for v in raw.split(","))
        if kind == "ints":
            return tuple(int(v) for v in raw.split(","))
        if kind == "point":
            x, y = raw.split(",")
            return (float(x), float(y))
        return kind(raw)
    except ValueError as exc:
        raise ConfigError(f"{key}: malformed value {raw!r}") from exc


def parse_config(text):
    """Parse key=value lines (blank lines and # comments ignored)."""
    cfg = RunConfig()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"{key}: unknown key")
        value = _parse_value(key, _KEYS[key], raw)
        if key == "eps":
            cfg.eps_list = value
        elif key == "N":
            cfg.N_list = value
        elif key == "output":
            cfg.output_dir = value
        elif key in _PROBE_REGION:
            cfg.probes[_PROBE_REGION[key]] = value
        else:
            setattr(cfg, key, value)
    return cfg.validate()


def _spec_family(cfg):
    if cfg.problem == "mms":
        return lambda eps: mms_problem(eps, cfg.alpha, cfg.beta)
    return lambda eps: example_5_1(eps, cfg.alpha, cfg.beta)


def _metadata_lines(cfg):
    return [
        f"# version = {__version__}",
        f"# mode = {cfg.mode}",
        f"# problem = {cfg.problem}",
        f"# eps = {','.join(repr(e) for e in cfg.eps_list)}",
        f"# N = {','.join(str(n) for n in cfg.N_list)}",
        f"# alpha = {cfg.alpha!r}",
        f"# beta = {cfg.beta!r}",
        f"# quad_order = {cfg.quad_order}",
        f"# tol = {cfg.tol!r}",
        f"# x_intervals = 2N (mirrored half-axis refinement)",
    ]


def _write(path, cfg, lines):
    with open(path, "w") as fh:
        for line in _metadata_lines(cfg):
            fh.write(line + "\n")
        for line in lines:
            fh.write(line + "\n")


def _run_errors(cfg, want_rates):
    table = error_table(_spec_family(cfg), cfg.eps_list, cfg.N_list,
                        quad_order=cfg.quad_order, tol=cfg.tol,
                        max_iter=cfg.max_iter)
    if want_rates:
        rows = ["eps,N,region,rate"]
        rows += [f"{e!r},{n},{r},{v!r}" for e, n, r, v in table.rates]
        return "rates.csv", rows
    rows = ["eps,N,region,error"]
    rows += [f"{e!r},{n},{r},{v!r}" for e, n, r, v in table.errors]
    return "errors.csv", rows


def _run_green(cfg):
    probes = None
    if cfg.probes:
        eps0 = cfg.eps_list[0]
        lam = transition_params(eps0, cfg.alpha, cfg.beta)
        probes = default_probes(*lam)
        probes.update(cfg.probes)
    reports = green_norm_sweep(_spec_family(cfg), cfg.N_list, cfg.eps_list,
                               probes=probes, quad_order=cfg.quad_order,
                               tol=cfg.tol)
    rows = ["eps,N,region,source_x,source_y,l2_norm,energy_norm"]
    rows += [f"{r.eps!r},{r.N},{r.region},{r.source_x!r},{r.source_y!r},"
             f"{r.l2_norm!r},{r.energy_norm!r}" for r in reports]
    return "green.csv", rows


def _run_field(cfg):
    eps = cfg.eps_list[0]
    N = cfg.N_list[0]
    spec = _spec_family(cfg)(eps)
    uh = solve_problem(spec, N, quad_order=cfg.quad_order, tol=cfg.tol,
                       max_iter=cfg.max_iter)
    mesh = uh.mesh
    lines = [f"{mesh.nx} {mesh.ny}"]
    coords = mesh.node_coords()
    for (x, y), u in zip(coords, uh.values):
        lines.append(f"{float(x)!r} {float(y)!r} {float(u)!r}")
    return "field.txt", lines


def _run_interp(cfg):
    eps = cfg.eps_list[0]
    template = layer_template(cfg.template, eps, cfg.alpha, cfg.beta)
    res = interp_error_study(template, eps, cfg.alpha, cfg.beta, cfg.N_list)
    rows = ["eps,N,region,error"]
    for n in sorted(res):
        for region in REGION_ORDER:
            rows.append(f"{eps!r},{n},{region.value},{res[n][region]!r}")
    return "interp.csv", rows


def _run_mms(cfg):
    eps = cfg.eps_list[0] if cfg.problem == "mms" else 1.0
    spec = mms_problem(eps, cfg.alpha, cfg.beta)
    lam = (0.5, 0.25) if eps >= 1.0 else None
    errors, rates = mms_convergence(spec, cfg.N_list, quad_order=cfg.quad_order,
                                    tol=cfg.tol, max_iter=cfg.max_iter, lam=lam)
    rows = ["N,error,rate"]
    for n in sorted(errors):
        rate = rates.get(n)
        rows.append(f"{n},{errors[n]!r},{'' if rate is None else repr(rate)}")
    return "mms.csv", rows


def run(cfg):
    """Execute a validated RunConfig; returns the process exit code."""
    out_dir = os.environ.get(OUTDIR_ENV, cfg.output_dir)
    os.makedirs(out_dir, exist_ok=True)
    path = None
    try:
        if cfg.mode in ("errors", "rates"):
            name, lines = _run_errors(cfg, want_rates=(cfg.mode == "rates"))
        elif cfg.mode == "green":
            name, lines = _run_green(cfg)
        elif cfg.mode == "field":
            name, lines = _run_field(cfg)
        elif cfg.mode == "interp":
            name, lines = _run_interp(cfg)
        else:
            name, lines = _run_mms(cfg)
        path = os.path.join(out_dir, name)
        _write(path, cfg, lines)
    except (SolveError, ValueError, ArithmeticError) as exc:
        if path is not None and os.path.exists(path):
            os.remove(path)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


def _build_argparser():
    p = argparse.ArgumentParser(
        prog="shishkinfem",
        description="Shishkin-mesh FEM experiments for 2D turning-point "
                    "convection-diffusion problems")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--problem", choices=PROBLEMS)
    p.add_argument("--eps", help="comma-separated list")
    p.add_argument("--N", help="comma-separated list (multiples of 4)")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--quad-order", type=int, dest="quad_order")
    p.add_argument("--tol", type=float)
    p.add_argument("--max-iter", type=int, dest="max_iter")
    p.add_argument("--template",
                   choices=("smooth", "interior_x", "boundary_y", "corner_xy"))
    p.add_argument("--probe-coarse", dest="probe_coarse", help="x,y")
    p.add_argument("--probe-layer-x", dest="probe_layer_x", help="x,y")
    p.add_argument("--probe-layer-y", dest="probe_layer_y", help="x,y")
    p.add_argument("--probe-layer-xy", dest="probe_layer_xy", help="x,y")
    p.add_argument("--output", "-o", help="output directory")
    return p


def main(argv=None):
    args = _build_argparser().parse_args(argv)
    lines = []
    if args.config:
        try:
            with open(args.config) as fh:
                lines.append(fh.read())
        except OSError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 1
    for key in ("mode", "problem", "eps", "N", "alpha", "beta", "quad_order",
                "tol", "max_iter", "template", "probe_coarse", "probe_layer_x",
                "probe_layer_y", "probe_layer_xy", "output"):
        value = getattr(args, key)
        if value is not None:
            lines.append(f"{key}={value}")
    try:
        cfg = parse_config("\n".join(lines))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
