"""Command-line front end: ``tangtorsion <subcommand> [options]``.

Exit status 0 on success, 1 for malformed input, 2 when a shape is
infeasible or a verification check fails.  Failure detail goes to stderr as
JSON.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Sequence

from . import atlas, tables
from .atlas import ShapeFamily
from .bounds import bounds_report
from .errors import NonConvergent, TangentialError
from .feasibility import solve_tangent_lengths
from .polygon import Shape, TangentialPolygon, from_angles, from_tangent_lengths, functionals
from .torsion import solve_torsion
from .verify import run_suite

DEFAULT_AXES = "L_over_dO,rho_over_dO"


class InputError(Exception):
    """Malformed request; maps to exit status 1."""


class Infeasible(Exception):
    """Valid request with a negative verdict; maps to exit status 2."""

    def __init__(self, detail: dict[str, Any]):
        super().__init__(detail.get("reason", "infeasible"))
        self.detail = detail


# input ---------------------------------------------------------------------

def _load_json(args: argparse.Namespace) -> Any:
    sources = [s for s in (args.input, args.json) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --input or --json")
    try:
        if args.json is not None:
            return json.loads(args.json)
        if args.input == "-":
            return json.load(sys.stdin)
        with open(args.input, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input: {exc}") from exc


def shape_from_json(data: Any) -> tuple[Shape, dict[str, Any]]:
    """Parse a polygon object; returns the shape and its metadata record.

    Accepted forms: ``{"rho", "angles_deg"}``, ``{"rho", "tangent_lengths"}``
    and ``{"family", "params", "normalization"}``.
    """
    if not isinstance(data, dict):
        raise InputError("polygon input must be a JSON object")
    if "family" in data:
        shape_id = ShapeFamily(data["family"], dict(data.get("params", {})),
                           dict(data.get("normalization", {})))
        shape = shape_id.build()
        return shape, {"family": shape_id.family, "params": shape_id.params,
                       "normalization": shape_id.normalization}
    lists = [k for k in ("angles_deg", "tangent_lengths") if k in data]
    if len(lists) != 1:
        raise InputError("need exactly one of angles_deg or tangent_lengths")
    if "rho" not in data:
        raise InputError("missing rho")
    try:
        rho = float(data["rho"])
        values = [float(v) for v in data[lists[0]]]
    except (TypeError, ValueError) as exc:
        raise InputError(f"non-numeric polygon data: {exc}") from exc
    if lists[0] == "angles_deg":
        shape = from_angles([math.radians(a) for a in values], rho)
    else:
        shape = from_tangent_lengths(values, rho)
    return shape, {"normalization": {"rho": rho}, "source": lists[0]}


def _shape_metadata(shape: Shape, meta: dict[str, Any]) -> dict[str, Any]:
    out = {"rho": shape.rho}
    if isinstance(shape, TangentialPolygon):
        out["n"] = shape.n
        out["t_values"] = list(shape.t_values)
    else:
        out["n"] = None
    out.update(meta)
    return out


def _parse_sides(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"sides must be comma-separated numbers: {exc}") from exc


# subcommands -----------------------------------------------------------------

def cmd_poly(args: argparse.Namespace) -> Any:
    shape, meta = shape_from_json(_load_json(args))
    return {"report": functionals(shape).as_dict(), "metadata": _shape_metadata(shape, meta)}


def cmd_bounds(args: argparse.Namespace) -> Any:
    shape, meta = shape_from_json(_load_json(args))
    out = bounds_report(shape).as_dict()
    out["metadata"] = _shape_metadata(shape, meta)
    return out


def cmd_feasible(args: argparse.Namespace) -> Any:
    if args.sides is not None:
        if args.input is not None or args.json is not None:
            raise InputError("give sides either inline or through --input/--json")
        sides = _parse_sides(args.sides)
    else:
        data = _load_json(args)
        if isinstance(data, dict):
            data = data.get("sides")
        if not isinstance(data, list):
            raise InputError("expected a list of sides or {\"sides\": [...]}")
        sides = [float(v) for v in data]
    res = solve_tangent_lengths(sides)
    out = res.as_dict()
    if res.status == "infeasible":
        raise Infeasible({"reason": "infeasible", **out})
    return out


def cmd_solve(args: argparse.Namespace) -> Any:
    shape, meta = shape_from_json(_load_json(args))
    if not args.rel_err >= 1e-4:
        raise InputError("--rel-err must be at least 1e-4")
    sol = solve_torsion(shape, args.rel_err)
    out = sol.as_dict()
    out["metadata"] = _shape_metadata(shape, meta)
    return out


def cmd_table(args: argparse.Namespace) -> str:
    if args.id not in tables.TABLE_IDS:
        raise InputError(f"unknown table id {args.id!r}; choose from {tables.TABLE_IDS}")
    return tables.table_csv(args.id)


_FAMILY_AXES = {"blundon": "L_over_RV,rho_over_RV", "two_cap": "L_over_R,rho_over_R"}


def cmd_diagram(args: argparse.Namespace) -> str:
    expected = _FAMILY_AXES.get(args.family, DEFAULT_AXES)
    axes = args.axes or expected
    if axes != expected:
        raise InputError(f"family {args.family!r} is drawn on axes {expected!r}")
    if args.samples < 2:
        raise InputError("--samples must be at least 2")
    return atlas.diagram_csv(atlas.family_samples(args.family, args.samples, args.seed))


def cmd_verify(args: argparse.Namespace) -> Any:
    results = run_suite(args.rel_err)
    out = {"passed": all(r.passed for r in results), "shapes": [r.as_dict() for r in results]}
    if not out["passed"]:
        failed = [r.label for r in results if not r.passed]
        raise Infeasible({"reason": "verification failed", "failed": failed, **out})
    return out


# plumbing --------------------------------------------------------------------

def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="path to a JSON file, or - for stdin")
    p.add_argument("--json", help="inline JSON instead of a file")
    p.add_argument("--output", help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangtorsion",
        description="Torsional rigidity bounds and geometry of tangential polygons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, text in (
        ("poly", cmd_poly, "geometric functionals of a polygon"),
        ("bounds", cmd_bounds, "sandwich and classical bounds on Q0"),
    ):
        p = sub.add_parser(name, help=text)
        _add_input(p)
        p.set_defaults(func=func)

    p = sub.add_parser("feasible", help="can these sides bound a tangential polygon?")
    _add_input(p)
    p.add_argument("--sides", help="comma-separated side lengths")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("solve", help="grid estimate of Q0")
    _add_input(p)
    p.add_argument("--rel-err", type=float, default=5e-3)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="reference table with recomputed columns")
    p.add_argument("--id", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("diagram", help="diagram sample points as CSV")
    p.add_argument("--family", required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--axes")
    p.add_argument("--output")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("verify", help="bound sandwich over the regression shapes")
    p.add_argument("--rel-err", type=float, default=5e-3)
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(payload: Any, path: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(code: int, detail: dict[str, Any]) -> int:
    sys.stderr.write(json.dumps(detail) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        payload = args.func(args)
    except Infeasible as exc:
        _emit(exc.detail, getattr(args, "output", None))
        return _fail(2, exc.detail)
    except NonConvergent as exc:
        return _fail(2, {"error": "NonConvergent", "message": str(exc)})
    except (InputError, TangentialError, KeyError, ValueError, TypeError) as exc:
        return _fail(1, {"error": type(exc).__name__, "message": str(exc)})
    _emit(payload, getattr(args, "output", None))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
