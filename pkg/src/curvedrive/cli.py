"""Command-line interface: solve, simulate, render and check scene files.

Exit codes: 0 success, 2 schema or reference errors, 3 kinematic
inconsistency, 4 rendering infeasibility.
"""

from __future__ import annotations

import argparse
import sys

from .drivetrain import Mesh, propagate, simulate, validate_mesh
from .errors import (
    CurveDriveError,
    DisconnectedComponent,
    InconsistentCycle,
    InvalidStep,
    MeshInvalid,
    MissingCenters,
    NoTangentExists,
    SceneReferenceError,
    SchemaError,
)
from .kinematics import Gear
from .render import render_scene
from .scene import parse_scene, scene_to_graph

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_KINEMATIC = 3
EXIT_RENDER = 4


def _load_scene(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read scene file: {exc}") from exc
    return parse_scene(text)


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_solve(args) -> int:
    doc = _load_scene(args.scene)
    graph, drive = scene_to_graph(doc)
    solution = propagate(graph, drive)
    lines = []
    header = "omega" if drive.is_constant else "ratio"
    lines.append(f"node\t{header}")
    for comp in doc.components:
        value = solution.omega(comp.id) if drive.is_constant else solution.ratios[comp.id]
        lines.append(f"{comp.id}\t{value!r}")
    _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    doc = _load_scene(args.scene)
    graph, drive = scene_to_graph(doc)
    result = simulate(graph, drive, args.duration, args.step)
    names = [comp.id for comp in doc.components]
    rows = ["t," + ",".join(names)]
    for i, t in enumerate(result.times):
        # `+ 0.0` turns signed zeros into plain 0
        cells = [f"{float(t) + 0.0:.17g}"]
        cells.extend(f"{float(result.angles[name][i]) + 0.0:.17g}" for name in names)
        rows.append(",".join(cells))
    _write_out("\n".join(rows) + "\n", args.out)
    if args.plot is not None:
        from .plots import save_angle_plot

        save_angle_plot(result, args.plot)
    return EXIT_OK


def cmd_render(args) -> int:
    doc = _load_scene(args.scene)
    svg = render_scene(doc)
    _write_out(svg, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    doc = _load_scene(args.scene)
    graph, drive = scene_to_graph(doc)
    lines = []
    worst = EXIT_OK
    for edge in graph.edges:
        label = f"{edge.a}-{edge.b}"
        na, nb = graph.nodes[edge.a], graph.nodes[edge.b]
        if isinstance(edge.coupling, Mesh):
            if not (isinstance(na, Gear) and isinstance(nb, Gear)):
                lines.append(f"mesh {label}: INVALID (needs gears on both ends)")
                worst = max(worst, EXIT_KINEMATIC)
                continue
            report = validate_mesh(na, nb)
            status = "ok" if report.pitch_ok else "PITCH MISMATCH"
            lines.append(f"mesh {label}: pitch residual {report.pitch_residual:.3e} [{status}]")
            if report.placement_residual is None:
                lines.append(f"mesh {label}: placement skipped (no centers)")
            else:
                pstat = "ok" if report.placement_ok else "NOT TANGENT"
                lines.append(
                    f"mesh {label}: placement residual {report.placement_residual:.3e} [{pstat}]"
                )
                if not report.placement_ok:
                    worst = max(worst, EXIT_KINEMATIC)
            if not report.pitch_ok:
                worst = max(worst, EXIT_KINEMATIC)
        else:
            lines.append(f"belt {label}: ok")
    try:
        solution = propagate(graph, drive)
        res = max((c.residual for c in solution.cycle_residuals), default=0.0)
        lines.append(f"cycles: consistent (max residual {res:.3e})")
    except (InconsistentCycle, DisconnectedComponent, MeshInvalid) as exc:
        lines.append(f"cycles: {type(exc).__name__}: {exc}")
        worst = max(worst, EXIT_KINEMATIC)
    _write_out("\n".join(lines) + "\n", args.out)
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvedrive",
        description="Solve, simulate, render and check gear/pulley scenes "
        "on the plane, the hyperbolic plane, or the unit sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("scene", help="scene JSON file")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=None, help="reserved; accepted for scripting")

    p_solve = sub.add_parser("solve", help="print per-node angular velocity")
    common(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_sim = sub.add_parser("simulate", help="integrate angles and emit CSV")
    common(p_sim)
    p_sim.add_argument("--duration", type=float, default=1.0, help="simulated time span")
    p_sim.add_argument("--step", type=float, default=0.01, help="integration step")
    p_sim.add_argument("--plot", default=None, help="also save a matplotlib figure here")
    p_sim.set_defaults(func=cmd_simulate)

    p_render = sub.add_parser("render", help="render the scene to SVG")
    common(p_render)
    p_render.set_defaults(func=cmd_render)

    p_check = sub.add_parser("check", help="validate meshes, placement and cycles")
    common(p_check)
    p_check.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, SceneReferenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (InconsistentCycle, MeshInvalid, DisconnectedComponent, InvalidStep) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_KINEMATIC
    except (MissingCenters, NoTangentExists) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RENDER
    except CurveDriveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
