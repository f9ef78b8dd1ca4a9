"""Command-line front end.

Subcommands: metric, length, sweep, degeneracy, geodesic, validate.
Output is deterministic (fixed key/column order, 17-significant-digit
floats), written to --out or stdout.  Exit codes: 0 success or all checks
passed, 1 validation failure, 2 usage/config error, 3 domain error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import emit, validate
from .backend import BACKEND
from .eos import ModelConfig, Rep, StatePoint, convert_state, material_at, temperature
from .errors import (
    ConfigError,
    DegenerateState,
    DepthExceeded,
    NegativeQuadraticForm,
    NonPhysicalState,
    ThermolenError,
    UnsupportedModel,
)
from .metric import (
    degeneracy_scan,
    det_energy,
    det_entropy,
    energy_metric,
    entropy_metric,
    t4_residual,
)
from .pathlen import (
    Isotherm,
    Polyline,
    QuadratureOptions,
    geodesic,
    isotherm_g22_length,
    length,
    path_from_json_dict,
    path_to_json_dict,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

SWEEP_COLUMNS = ["T", "v", "p", "det_u", "det_s", "t4_residual", "nu_i", "nu_a",
                 "g11_u", "g12_u", "g22_u", "g11_s", "g12_s", "g22_s"]
DEGENERATE_TOKEN = "degenerate"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); keep control
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="thermolen",
                     description="Thermodynamic-geometry engine: metrics, lengths, "
                                 "sound speeds, degeneracy scans and geodesics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, rep=False, fmt=True):
        p.add_argument("--config", required=True, help="model config JSON path")
        if rep:
            p.add_argument("--rep", choices=["energy", "entropy"], default="energy",
                           help="metric representation")
        if fmt:
            p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("metric", help="metric tensors and determinants at a state")
    common(p, rep=True)
    p.add_argument("--state", required=True,
                   help="state coordinates, e.g. s=0,v=1 or u=3,v=1")

    p = sub.add_parser("length", help="thermodynamic length of a path spec")
    common(p, rep=True)
    p.add_argument("--path", required=True, help="PathSpec JSON path")
    p.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")

    p = sub.add_parser("sweep", help="rasterize a (T, v) rectangle")
    common(p)
    p.add_argument("--grid", required=True,
                   help="Tmin:Tmax:nT,vmin:vmax:nv")

    p = sub.add_parser("degeneracy", help="scan isotherms for det_u = 0 roots")
    common(p)
    p.add_argument("--grid", required=True,
                   help="Tmin:Tmax:nT,vmin:vmax:ncells (ncells = scan grid)")
    p.add_argument("--tol", type=float, default=1e-9, help="root interval tolerance")

    p = sub.add_parser("geodesic", help="minimal-length path between two states")
    common(p, rep=True)
    p.add_argument("--path", required=True,
                   help="polyline PathSpec JSON; first/last nodes are the endpoints, "
                        "interior nodes (if any) seed the optimization")
    p.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")

    p = sub.add_parser("validate", help="run the identity suite against thresholds")
    common(p)
    p.add_argument("--threshold-file", help="JSON {check_name: threshold} overrides")

    return parser


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _load_model(path: str) -> ModelConfig:
    return ModelConfig.from_json_dict(_load_json(path))


def _parse_state(model: ModelConfig, text: str) -> StatePoint:
    fields = {}
    for item in text.split(","):
        if "=" not in item:
            raise ConfigError(f"bad state component {item!r}; expected k=value")
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in ("s", "u", "v"):
            raise ConfigError(f"unknown state coordinate {key!r}")
        if key in fields:
            raise ConfigError(f"duplicate state coordinate {key!r}")
        try:
            fields[key] = float(value)
        except ValueError:
            raise ConfigError(f"bad numeric value for {key!r}: {value!r}") from None
    if "v" not in fields or len(fields) != 2:
        raise ConfigError("state must give v and exactly one of s or u")
    if "s" in fields:
        return StatePoint.energy(fields["s"], fields["v"])
    return StatePoint.entropy(fields["u"], fields["v"])


def _parse_grid(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError("grid must be Tmin:Tmax:nT,vmin:vmax:nv")
    out = []
    for part, label in zip(parts, ("T", "v")):
        bits = part.split(":")
        if len(bits) != 3:
            raise ConfigError(f"bad {label} grid {part!r}; expected min:max:n")
        try:
            lo, hi, n = float(bits[0]), float(bits[1]), int(bits[2])
        except ValueError:
            raise ConfigError(f"bad {label} grid numbers in {part!r}") from None
        if n < 0:
            raise ConfigError(f"{label} grid count must be nonnegative")
        out.append((lo, hi, n))
    return out


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    if n == 0:
        return []
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _metric_doc(g) -> dict:
    return {"g11": g.g11, "g12": g.g12, "g22": g.g22, "det": g.det,
            "definiteness": g.definiteness()}


def _write(data: bytes, out: str | None) -> None:
    if out:
        try:
            with open(out, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            raise ConfigError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.buffer.write(data)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_metric(args) -> int:
    model = _load_model(args.config)
    point = _parse_state(model, args.state)
    point_e = convert_state(model, point, Rep.ENERGY)
    point_s = convert_state(model, point, Rep.ENTROPY)
    m = material_at(model, point)
    doc = {
        "family": model.family.value,
        "backend": BACKEND,
        "state": {"rep": point.rep.value, "x1": point.x1, "x2": point.x2,
                  "T": m.T, "p": m.p},
        "energy_metric": _metric_doc(energy_metric(model, point_e)),
        "entropy_metric": _metric_doc(entropy_metric(model, point_s)),
        "det_u": det_energy(model, point),
        "det_s": det_entropy(model, point),
        "t4_residual": t4_residual(model, point),
    }
    if args.format == "csv":
        ge, gs = doc["energy_metric"], doc["entropy_metric"]
        doc = {"columns": ["T", "p", "g11_u", "g12_u", "g22_u", "g11_s", "g12_s",
                           "g22_s", "det_u", "det_s", "t4_residual"],
               "rows": [[m.T, m.p, ge["g11"], ge["g12"], ge["g22"], gs["g11"],
                         gs["g12"], gs["g22"], doc["det_u"], doc["det_s"],
                         doc["t4_residual"]]]}
    _write(emit.emit(doc, args.format), args.out)
    return EXIT_OK


def _cmd_length(args) -> int:
    model = _load_model(args.config)
    path = path_from_json_dict(_load_json(args.path))
    rep = Rep(args.rep)
    opts = QuadratureOptions(abs_tol=args.tol, rel_tol=args.tol)
    result = length(model, rep, path, opts)
    doc = {
        "family": model.family.value,
        "rep": rep.value,
        "length": result.length,
        "error_estimate": result.error_estimate,
        "evaluations": result.evaluations,
        "touched_degeneracy": result.touched_degeneracy,
    }
    if isinstance(path, Isotherm):
        # both isotherm conventions: the metric length of the curve and the
        # accumulated constant-coordinate integrand sqrt(g22)
        alt = isotherm_g22_length(model, rep, path.T, path.v_range, opts)
        doc["g22_route_length"] = alt.length
        doc["g22_route_error_estimate"] = alt.error_estimate
    if args.format == "csv":
        cols = list(doc.keys())[2:]
        doc = {"columns": cols, "rows": [[doc[c] for c in cols]]}
    _write(emit.emit(doc, args.format), args.out)
    return EXIT_OK


def _sweep_row(model: ModelConfig, T: float, v: float) -> list:
    from .acoustics import sound_speeds
    from .eos import pressure, state_from_tv

    point_e = state_from_tv(model, T, v, Rep.ENERGY)
    point_s = convert_state(model, point_e, Rep.ENTROPY)
    p = pressure(model, T, v)
    speeds = sound_speeds(model, point_e)
    row = [T, v, p, det_energy(model, point_e), det_entropy(model, point_e),
           t4_residual(model, point_e), speeds.nu_isothermal, speeds.nu_adiabatic]
    try:
        ge = energy_metric(model, point_e)
        gs = entropy_metric(model, point_s)
        row += [ge.g11, ge.g12, ge.g22, gs.g11, gs.g12, gs.g22]
    except DegenerateState:
        row += [DEGENERATE_TOKEN] * 6
    return row


def _cmd_sweep(args) -> int:
    model = _load_model(args.config)
    (t_lo, t_hi, n_t), (v_lo, v_hi, n_v) = _parse_grid(args.grid)
    rows = [_sweep_row(model, T, v)
            for T in _linspace(t_lo, t_hi, n_t)
            for v in _linspace(v_lo, v_hi, n_v)]
    doc = {"columns": SWEEP_COLUMNS, "rows": rows}
    _write(emit.emit(doc, args.format), args.out)
    return EXIT_OK


def _cmd_degeneracy(args) -> int:
    model = _load_model(args.config)
    (t_lo, t_hi, n_t), (v_lo, v_hi, cells) = _parse_grid(args.grid)
    cells = cells if cells >= 2 else 512
    isotherms = []
    for T in _linspace(t_lo, t_hi, n_t):
        report = degeneracy_scan(model, T, v_lo, v_hi, tol=args.tol, cells=cells)
        isotherms.append({
            "T": report.T,
            "roots": list(report.roots),
            "brackets": [list(br) for br in report.brackets],
            "residuals": list(report.residuals),
        })
    if args.format == "csv":
        rows = [[iso["T"], root, resid]
                for iso in isotherms
                for root, resid in zip(iso["roots"], iso["residuals"])]
        doc = {"columns": ["T", "root_v", "residual"], "rows": rows}
    else:
        doc = {"family": model.family.value, "v_range": [v_lo, v_hi],
               "cells": cells, "tol": args.tol, "isotherms": isotherms}
    _write(emit.emit(doc, args.format), args.out)
    return EXIT_OK


def _cmd_geodesic(args) -> int:
    model = _load_model(args.config)
    path = path_from_json_dict(_load_json(args.path))
    if not isinstance(path, Polyline):
        raise ConfigError("geodesic needs a polyline path spec")
    rep = Rep(args.rep)
    opts = QuadratureOptions(abs_tol=args.tol, rel_tol=args.tol)
    start = StatePoint(rep, *path.nodes[0])
    end = StatePoint(rep, *path.nodes[-1])
    if len(path.nodes) == 2:
        n_segments, init = 8, None
    else:
        n_segments, init = len(path.nodes) - 1, path.nodes
    result = geodesic(model, rep, start, end, n_segments=n_segments,
                      opts=opts, init_nodes=init)
    doc = {
        "family": model.family.value,
        "rep": rep.value,
        "length": result.result.length,
        "error_estimate": result.result.error_estimate,
        "converged": result.converged,
        "iterations": result.iterations,
        "path": path_to_json_dict(result.path),
    }
    if args.format == "csv":
        rows = [[i, x1, x2] for i, (x1, x2) in enumerate(result.path.nodes)]
        doc = {"columns": ["node", "x1", "x2"], "rows": rows}
    _write(emit.emit(doc, args.format), args.out)
    return EXIT_OK


def _cmd_validate(args) -> int:
    model = _load_model(args.config)
    overrides = None
    if args.threshold_file:
        overrides = _load_json(args.threshold_file)
        if not isinstance(overrides, dict):
            raise ConfigError("threshold file must be a JSON object")
        try:
            overrides = {str(k): float(v) for k, v in overrides.items()}
        except (TypeError, ValueError):
            raise ConfigError("threshold values must be numbers") from None
    try:
        doc = validate.run_validation(model, overrides)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if args.format == "csv":
        rows = [[c["name"], c["samples"], c["max_residual"], c["threshold"], c["status"]]
                for c in doc["checks"]]
        out_doc = {"columns": ["check", "samples", "max_residual", "threshold", "status"],
                   "rows": rows}
    else:
        out_doc = doc
    _write(emit.emit(out_doc, args.format), args.out)
    return EXIT_OK if doc["all_pass"] else EXIT_VALIDATION


_COMMANDS = {
    "metric": _cmd_metric,
    "length": _cmd_length,
    "sweep": _cmd_sweep,
    "degeneracy": _cmd_degeneracy,
    "geodesic": _cmd_geodesic,
    "validate": _cmd_validate,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonPhysicalState, DegenerateState, NegativeQuadraticForm,
            DepthExceeded, UnsupportedModel) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ThermolenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())
