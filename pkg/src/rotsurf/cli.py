"""Command-line front end.

Commands: info, geodesic, invariants, curvature, isometry (config-driven),
plus killing and parse-check (self-contained).  Artifacts are written
atomically with 17-significant-digit numbers, so identical runs produce
byte-identical files.

Exit codes: 0 success, 1 validation error, 2 numerical failure (metric
degeneracy, domain exit before 10% of the requested length, non-finite
state).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from .config import ConfigError, RunConfig, initial_state, load_config
from .curvature import (DoubleRotationSurface, FrameDegenerateError,
                        curvature_report)
from .expressions import DomainError, ExprError, differentiate, parse, to_text
from .geodesics import (Trajectory, clairaut_report, flow_residual, integrate,
                        shift_samples)
from .isometries import KillingParams, Rotation, killing_matrix, lie_residual
from .surfaces import (DegenerateMetricError, NotTimelikeError, SurfaceFamily)

__all__ = ["main"]

_OUTPUT_DIR_VAR = "ROTSURF_OUTPUT_DIR"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _resolve_output(path: str) -> str:
    override = os.environ.get(_OUTPUT_DIR_VAR)
    if override:
        return os.path.join(override, os.path.basename(path))
    return path


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, temp_path = tempfile.mkstemp(dir=directory, prefix=".rotsurf-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise


_TRAJECTORY_COLUMNS = ("s", "u", "v", "t", "du", "dv", "dt",
                       "L", "p_u", "p_v", "inv1", "inv2")


def _trajectory_rows(fam: SurfaceFamily, trajectory: Trajectory):
    for sample in trajectory.samples:
        state = sample.state
        report = clairaut_report(fam, state)
        yield (sample.s, state.u, state.v, state.t,
               state.du, state.dv, state.dt,
               sample.L, sample.p_u, sample.p_v,
               report.invariant1, report.invariant2)


def _write_trajectory(path: str, fam: SurfaceFamily, trajectory: Trajectory,
                      fmt: str):
    rows = list(_trajectory_rows(fam, trajectory))
    if fmt == "csv":
        lines = [",".join(_TRAJECTORY_COLUMNS)]
        lines.extend(",".join(_fmt(value) for value in row) for row in rows)
        _write_atomic(path, "\n".join(lines) + "\n")
    else:
        payload = {"columns": list(_TRAJECTORY_COLUMNS),
                   "samples": [dict(zip(_TRAJECTORY_COLUMNS, row))
                               for row in rows],
                   "termination": trajectory.termination}
        _write_atomic(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _run_geodesic(config: RunConfig, fam: SurfaceFamily):
    state0, residual = initial_state(config, fam)
    section = config.geodesic
    trajectory = integrate(fam, state0, section.length, section.step)
    return trajectory, residual


def _numerical_exit(trajectory: Trajectory) -> int | None:
    if trajectory.termination in ("degenerate_metric", "nonfinite_state"):
        print(f"numerical failure: {trajectory.termination} after "
              f"s={_fmt(trajectory.reached_length)}", file=sys.stderr)
        return EXIT_NUMERICAL
    if (trajectory.termination == "domain_exit"
            and trajectory.reached_length < 0.1 * trajectory.requested_length):
        print(f"numerical failure: domain exit at "
              f"s={_fmt(trajectory.reached_length)} "
              f"(before 10% of requested length)", file=sys.stderr)
        return EXIT_NUMERICAL
    if trajectory.termination != "completed":
        print(f"warning: {trajectory.termination} at "
              f"s={_fmt(trajectory.reached_length)}", file=sys.stderr)
    return None


def _cmd_info(config: RunConfig) -> int:
    fam = config.build_family()
    print(f"family {config.family.value} variant {config.variant.value}")
    print(f"profiles fa={config.fa_text!r} fb={config.fb_text!r} "
          f"domain [{_fmt(config.t_min)}, {_fmt(config.t_max)}]")
    print("t,E,G,N,degenerate")
    for i in range(10):
        t = config.t_min + (config.t_max - config.t_min) * i / 9.0
        try:
            coeffs = fam.metric_coefficients(t)
        except DomainError as exc:
            print(f"{_fmt(t)},error: {exc}")
            continue
        flag = "yes" if coeffs.degenerate else "no"
        print(f"{_fmt(t)},{_fmt(coeffs.E)},{_fmt(coeffs.G)},{_fmt(coeffs.N)},{flag}")
    return EXIT_OK


def _cmd_geodesic(config: RunConfig) -> int:
    if config.output is None:
        raise ConfigError("output", "missing")
    fam = config.build_family()
    trajectory, _ = _run_geodesic(config, fam)
    failure = _numerical_exit(trajectory)
    if failure is not None:
        return failure
    path = _resolve_output(config.output.path)
    _write_trajectory(path, fam, trajectory, config.output.format)
    print(f"wrote {path} ({len(trajectory.samples)} samples, "
          f"{trajectory.termination})")
    return EXIT_OK


def _cmd_invariants(config: RunConfig) -> int:
    if config.output is None:
        raise ConfigError("output", "missing")
    fam = config.build_family()
    trajectory, residual = _run_geodesic(config, fam)
    failure = _numerical_exit(trajectory)
    if failure is not None:
        return failure
    path = _resolve_output(config.output.path)
    _write_trajectory(path, fam, trajectory, config.output.format)

    rows = list(_trajectory_rows(fam, trajectory))
    inv1_first, inv2_first = rows[0][10], rows[0][11]
    summary = trajectory.drifts()
    summary["inv1_drift"] = max(abs(row[10] - inv1_first) for row in rows)
    summary["inv2_drift"] = max(abs(row[11] - inv2_first) for row in rows)
    if residual is not None:
        summary["initial_angle_residual"] = residual
    summary_path = os.path.splitext(path)[0] + ".summary.json"
    _write_atomic(summary_path,
                  json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path} and {summary_path}")
    return EXIT_OK


def _cmd_curvature(config: RunConfig) -> int:
    if config.output is None:
        raise ConfigError("output", "missing")
    if config.curvature is None:
        raise ConfigError("curvature", "missing")
    fam = config.build_family()
    surface = DoubleRotationSurface(fam, config.angle_profile("u"),
                                    config.angle_profile("v"))
    section = config.curvature
    lines = ["t,s,K_formula,K_oracle,K_gap,h3,h4,H_gap"]
    json_rows = []
    for i in range(section.nt):
        t = (config.t_min + (config.t_max - config.t_min)
             * (i + 0.5) / section.nt)
        for j in range(section.ns):
            s = (config.t_min + (config.t_max - config.t_min)
                 * (j + 0.5) / section.ns)
            try:
                report = curvature_report(surface, t, s, section.fd_step)
            except (FrameDegenerateError, DegenerateMetricError,
                    DomainError) as exc:
                print(f"numerical failure at t={_fmt(t)}, s={_fmt(s)}: {exc}",
                      file=sys.stderr)
                return EXIT_NUMERICAL
            values = (t, s, report.K_formula, report.K_oracle, report.K_gap,
                      report.h3, report.h4, report.H_gap)
            lines.append(",".join(_fmt(v) for v in values))
            json_rows.append(dict(zip(
                ("t", "s", "K_formula", "K_oracle", "K_gap", "h3", "h4",
                 "H_gap"), values)))
    path = _resolve_output(config.output.path)
    if config.output.format == "csv":
        _write_atomic(path, "\n".join(lines) + "\n")
    else:
        _write_atomic(path, json.dumps({"grid": json_rows}, indent=2,
                                       sort_keys=True) + "\n")
    print(f"wrote {path} ({section.nt * section.ns} grid points)")
    return EXIT_OK


def _cmd_isometry(config: RunConfig, generator: str, angle: float) -> int:
    fam = config.build_family()
    rotation = Rotation.from_label(generator)
    if rotation is fam.generator("u"):
        shift = {"du": angle}
    elif rotation is fam.generator("v"):
        shift = {"dv": angle}
    else:
        raise ConfigError("generator",
                          f"{generator} does not act on family "
                          f"{config.family.value} (expects "
                          f"{fam.generator('u').label} or "
                          f"{fam.generator('v').label})")
    trajectory, _ = _run_geodesic(config, fam)
    failure = _numerical_exit(trajectory)
    if failure is not None:
        return failure
    moved = shift_samples(trajectory.samples, **shift)
    residual = flow_residual(fam, moved)
    print(f"generator {generator} angle {_fmt(angle)}: "
          f"max geodesic-equation residual {_fmt(residual)}")
    return EXIT_OK


def _cmd_killing(params: list[float]) -> int:
    matrix = killing_matrix(KillingParams(*params))
    residual = lie_residual(matrix)
    print("lie residual matrix:")
    for row in residual:
        print(" ".join(_fmt(value) for value in row))
    print(f"max-abs entry: {_fmt(float(np.max(np.abs(residual))))}")
    return EXIT_OK


def _cmd_parse_check(text: str) -> int:
    expr = parse(text)
    d1 = differentiate(expr)
    d2 = differentiate(d1)
    print(f"expr: {to_text(expr)}")
    print(f"ast: {expr!r}")
    print(f"d1: {to_text(d1)}")
    print(f"d2: {to_text(d2)}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotsurf",
        description="Geodesics and curvature on rotational surfaces in "
                    "flat (-,-,+,+) 4-space.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
            ("info", "print metric coefficients on a 10-point grid"),
            ("geodesic", "integrate a geodesic and write the trajectory"),
            ("invariants", "trajectory plus conservation-drift summary"),
            ("curvature", "closed-form vs oracle curvature on a grid")):
        command = sub.add_parser(name, help=help_text)
        command.add_argument("--config", required=True,
                             help="path to the JSON run configuration")

    isometry = sub.add_parser(
        "isometry", help="map a geodesic by a one-parameter isometry and "
                         "report the geodesic-equation residual")
    isometry.add_argument("--config", required=True)
    isometry.add_argument("--generator", required=True,
                          choices=[r.label for r in Rotation])
    isometry.add_argument("--angle", type=float, default=0.5)

    killing = sub.add_parser(
        "killing", help="residual of the metric Lie derivative for a "
                        "six-parameter field")
    killing.add_argument("--params", type=float, nargs=6,
                         default=[1.0] * 6, metavar=("A", "B", "C", "D", "E", "F"))

    parse_check = sub.add_parser(
        "parse-check", help="print the tree and derivatives of an expression")
    parse_check.add_argument("expression")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "killing":
            return _cmd_killing(args.params)
        if args.command == "parse-check":
            return _cmd_parse_check(args.expression)
        config = load_config(args.config)
        if args.command == "info":
            return _cmd_info(config)
        if args.command == "geodesic":
            return _cmd_geodesic(config)
        if args.command == "invariants":
            return _cmd_invariants(config)
        if args.command == "curvature":
            return _cmd_curvature(config)
        if args.command == "isometry":
            return _cmd_isometry(config, args.generator, args.angle)
        raise AssertionError(f"unhandled command {args.command}")
    except (ConfigError, ExprError, ValueError) as exc:
        if isinstance(exc, (DegenerateMetricError, NotTimelikeError)):
            print(f"numerical failure: {exc}", file=sys.stderr)
            return EXIT_NUMERICAL
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
