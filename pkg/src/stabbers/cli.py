"""Command line front end: generate, solve, cross-check, and render.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success (an empty
solution list is a valid answer), 1 parse/parameter errors, 2 degenerate
input or oracle cap exceeded, 3 solver/oracle mismatch in ``check``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .core import (
    Coord,
    DegenerateInput,
    EndpointId,
    Instance,
    Shape,
    Side,
    Solution,
    StabberError,
    as_coord,
    coord_str,
    region_bounds,
)
from .gen import GenConfig, gen_cascade_chain, gen_maxgap, gen_quadratic_rect, gen_random
from .oracle import DEFAULT_CAP, oracle_classes
from .solvers import solve

_SHAPES = {
    "halfplane": ("up", "down", "left", "right"),
    "strip": ("horizontal", "vertical"),
    "quadrant": ("tl", "tr", "bl", "br"),
    "three-rect": ("down", "up", "left", "right"),
    "rect": (),
}


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _coord_json(value: Coord):
    if isinstance(value, Fraction) and value.denominator != 1:
        return coord_str(value)
    return int(value)


def _parse_coord(raw) -> Coord:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise CliError(f"coordinates must be integers or 'p/q' strings, got {raw!r}")
    try:
        return as_coord(raw)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad coordinate {raw!r}: {exc}") from exc


def load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}")
    if not isinstance(doc, dict) or "segments" not in doc:
        raise CliError(f"{path}: expected an object with a 'segments' array")
    segments = doc["segments"]
    if not isinstance(segments, list) or not segments:
        raise CliError(f"{path}: 'segments' must be a non-empty array")
    coords = []
    for i, seg in enumerate(segments):
        try:
            (x1, y1), (x2, y2) = seg
        except (TypeError, ValueError):
            raise CliError(f"{path}: segment {i} must be [[x1,y1],[x2,y2]]")
        coords.append(
            ((_parse_coord(x1), _parse_coord(y1)), (_parse_coord(x2), _parse_coord(y2)))
        )
    try:
        return Instance.from_coords(coords)
    except DegenerateInput as exc:
        raise CliError(f"{path}: {exc}")


def instance_json(inst: Instance) -> str:
    doc = {
        "segments": [
            [
                [_coord_json(s.a.x), _coord_json(s.a.y)],
                [_coord_json(s.b.x), _coord_json(s.b.y)],
            ]
            for s in inst.segments
        ]
    }
    return json.dumps(doc)


def _eid_json(eid: EndpointId) -> list:
    return [eid.seg, eid.end]


def solutions_json(shape: Shape, solutions: list[Solution]) -> str:
    doc = {
        "shape": {"kind": shape.kind, "variant": shape.variant},
        "solutions": [
            {
                "anchors": [_eid_json(a) for a in sol.anchors],
                "class": [_eid_json(e) for e in sol.cls.reds],
                "trivial": sol.trivial,
            }
            for sol in solutions
        ],
    }
    return json.dumps(doc)


def _shape_from_args(args) -> Shape:
    kind = args.shape
    variants = _SHAPES.get(kind)
    if variants is None:
        raise CliError(f"unknown shape {kind!r}")
    orientation = getattr(args, "orientation", None)
    if kind == "rect":
        if orientation:
            raise CliError("rect takes no --orientation")
        return Shape.rect()
    if not orientation:
        raise CliError(f"--orientation required for {kind} (one of {', '.join(variants)})")
    if orientation not in variants:
        raise CliError(f"{kind} orientation must be one of {', '.join(variants)}")
    return Shape(kind.replace("-", "_"), orientation)


def cmd_solve(args) -> int:
    inst = load_instance(args.input)
    shape = _shape_from_args(args)
    try:
        solutions = solve(inst, shape)
    except DegenerateInput as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 2
    if not args.include_trivial:
        solutions = [s for s in solutions if not s.trivial]
    print(solutions_json(shape, solutions))
    return 0


def _oracle_reference(inst: Instance, shape: Shape, cap: int):
    if shape.kind == "halfplane":
        # the solver reports the complementary pair together
        from .core import Shape as _S

        other = {"up": "down", "down": "up", "left": "right", "right": "left"}
        return oracle_classes(inst, shape, cap) | oracle_classes(
            inst, _S.halfplane(other[shape.variant]), cap
        )
    return oracle_classes(inst, shape, cap)


def cmd_check(args) -> int:
    inst = load_instance(args.input)
    shape = _shape_from_args(args)
    cap = int(os.environ.get("STABBER_ORACLE_CAP", DEFAULT_CAP))
    if inst.n > cap:
        print(f"oracle cap exceeded: n={inst.n} > {cap}", file=sys.stderr)
        return 2
    try:
        got = {s.cls for s in solve(inst, shape)}
        expected = _oracle_reference(inst, shape, cap)
    except DegenerateInput as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 2
    if got == expected:
        print(f"MATCH ({len(got)} classes)")
        return 0
    print("MISMATCH")
    for cls in sorted(expected - got):
        print("missing: " + json.dumps([_eid_json(e) for e in cls.reds]))
    for cls in sorted(got - expected):
        print("extra:   " + json.dumps([_eid_json(e) for e in cls.reds]))
    return 3


def _parse_values(raw: str):
    out = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        out.append(_parse_coord(part if "/" in part else int(part)))
    if not out:
        raise CliError("--values must list at least one number")
    return out


def cmd_gen(args) -> int:
    try:
        if args.family == "maxgap":
            if not args.values:
                raise CliError("maxgap needs --values")
            delta = _parse_coord(args.delta) if args.delta else None
            inst = gen_maxgap(_parse_values(args.values), delta)
        elif args.family == "qrect":
            if args.n is None:
                raise CliError("qrect needs --n")
            inst = gen_quadratic_rect(args.n)
        elif args.family == "chain":
            if args.n is None:
                raise CliError("chain needs --n")
            inst = gen_cascade_chain(args.n)
        else:
            if args.n is None:
                raise CliError("random needs --n")
            cfg = GenConfig(seed=args.seed, n=args.n,
                            coord_min=args.coord_min or 0,
                            coord_max=args.coord_max or 0)
            inst = gen_random(cfg)
    except ValueError as exc:
        raise CliError(str(exc))
    except StabberError as exc:
        raise CliError(str(exc))
    print(instance_json(inst))
    return 0


# -- rendering ---------------------------------------------------------------


def _svg_region_box(inst: Instance, sol: Solution, window) -> tuple:
    lo_x, hi_x, lo_y, hi_y = window
    bounds = region_bounds(inst, sol)
    x1 = bounds.get(Side.LEFT, lo_x)
    x2 = bounds.get(Side.RIGHT, hi_x)
    y1 = bounds.get(Side.BOTTOM, lo_y)
    y2 = bounds.get(Side.TOP, hi_y)
    return (x1, x2, y1, y2)


def render_svg(inst: Instance, solutions: list[Solution] | None = None,
               size: float = 480.0) -> str:
    """Standalone SVG 1.1: segments as lines, endpoints as dots (red filled /
    blue hollow when a solution file fixes the classification), one shaded
    box per solution with unbounded sides clipped to the frame."""
    xs = [float(x) for x in inst.xs]
    ys = [float(y) for y in inst.ys]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    pad_x = (hi_x - lo_x or 1.0) * 0.1
    pad_y = (hi_y - lo_y or 1.0) * 0.1
    lo_x, hi_x = lo_x - pad_x, hi_x + pad_x
    lo_y, hi_y = lo_y - pad_y, hi_y + pad_y
    scale = size / max(hi_x - lo_x, hi_y - lo_y)

    def px(x: float) -> float:
        return round((x - lo_x) * scale, 2)

    def py(y: float) -> float:
        return round((hi_y - y) * scale, 2)

    width = round((hi_x - lo_x) * scale, 2)
    height = round((hi_y - lo_y) * scale, 2)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
    ]
    window = (lo_x, hi_x, lo_y, hi_y)
    for sol in solutions or []:
        x1, x2, y1, y2 = (float(v) for v in _svg_region_box(inst, sol, window))
        parts.append(
            f'<rect x="{px(x1)}" y="{py(y2)}" width="{round((x2 - x1) * scale, 2)}"'
            f' height="{round((y2 - y1) * scale, 2)}" fill="#d62728"'
            f' fill-opacity="0.15" stroke="#d62728" stroke-width="1"/>'
        )
    for seg in inst.segments:
        parts.append(
            f'<line x1="{px(float(seg.a.x))}" y1="{py(float(seg.a.y))}"'
            f' x2="{px(float(seg.b.x))}" y2="{py(float(seg.b.y))}"'
            f' stroke="#333333" stroke-width="1.5"/>'
        )
    reds = set(solutions[0].cls.reds) if solutions else None
    for eid in inst.endpoint_ids():
        p = inst.point(eid)
        cx, cy = px(float(p.x)), py(float(p.y))
        if reds is None:
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="3.5" fill="#333333"/>')
        elif eid in reds:
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="3.5" fill="#d62728"/>')
        else:
            parts.append(
                f'<circle cx="{cx}" cy="{cy}" r="3.5" fill="white"'
                f' stroke="#1f77b4" stroke-width="1.5"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _load_solutions(path: str, inst: Instance) -> tuple[Shape, list[Solution]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}")
    try:
        shape = Shape(doc["shape"]["kind"], doc["shape"]["variant"])
        sols = []
        for item in doc["solutions"]:
            anchors = tuple(EndpointId(s, e) for s, e in item["anchors"])
            reds = tuple(EndpointId(s, e) for s, e in item["class"])
            from .core import StabberClass

            sols.append(Solution(shape, anchors, StabberClass(reds),
                                 bool(item.get("trivial", False))))
        return shape, sols
    except (KeyError, TypeError, ValueError, StabberError) as exc:
        raise CliError(f"{path}: malformed solution file: {exc}")


def cmd_render(args) -> int:
    inst = load_instance(args.input)
    solutions = None
    if args.solutions:
        _, solutions = _load_solutions(args.solutions, inst)
    svg = render_svg(inst, solutions)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabbers",
        description="Enumerate combinatorially different axis-parallel stabbers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run a solver on an instance file")
    p_solve.add_argument("--shape", required=True, choices=sorted(_SHAPES))
    p_solve.add_argument("--orientation")
    p_solve.add_argument("--input", required=True)
    p_solve.add_argument("--include-trivial", action="store_true")
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="compare a solver against the oracle")
    p_check.add_argument("--shape", required=True, choices=sorted(_SHAPES))
    p_check.add_argument("--orientation")
    p_check.add_argument("--input", required=True)
    p_check.set_defaults(func=cmd_check)

    p_gen = sub.add_parser("gen", help="emit a generated instance file")
    p_gen.add_argument("--family", required=True,
                       choices=("maxgap", "qrect", "chain", "random"))
    p_gen.add_argument("--values", help="comma list for maxgap")
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--delta")
    p_gen.add_argument("--coord-min", type=int)
    p_gen.add_argument("--coord-max", type=int)
    p_gen.set_defaults(func=cmd_gen)

    p_render = sub.add_parser("render", help="draw an instance (and solutions) as SVG")
    p_render.add_argument("--input", required=True)
    p_render.add_argument("--solutions")
    p_render.add_argument("--out", required=True)
    p_render.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except DegenerateInput as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
