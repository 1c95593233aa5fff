"""Shared fixtures: the named instances used across the suite, random
instance generation, and an intentionally naive cascading reimplementation
used to cross-check the engine."""
from __future__ import annotations

import random

from stabbers.core import Color, EndpointId, Instance


def make_i1() -> Instance:
    """Nested y-spans [1,2] and [0,3]: a horizontal stabbing halfplane exists
    (highest lower endpoint y=1 <= lowest upper endpoint y=2)."""
    return Instance.from_coords([((10, 1), (11, 2)), ((12, 0), (13, 3))])


def make_i2() -> Instance:
    """Three stacked y-spans [0,1], [2,3], [4,5]: no horizontal strip."""
    return Instance.from_coords([((0, 0), (11, 1)), ((2, 2), (13, 3)), ((4, 4), (15, 5))])


def make_i3() -> Instance:
    """Two stacked y-spans [0,1], [2,3]: exactly one horizontal strip class."""
    return Instance.from_coords([((100, 0), (101, 1)), ((102, 2), (103, 3))])


def rand_instance(rng: random.Random, n: int, span: int = 60) -> Instance:
    xs = rng.sample(range(-span, span), 2 * n)
    ys = rng.sample(range(-span, span), 2 * n)
    return Instance.from_coords(
        [((xs[2 * i], ys[2 * i]), (xs[2 * i + 1], ys[2 * i + 1])) for i in range(n)]
    )


def classes_of(solutions) -> set:
    return {s.cls for s in solutions}


def upper(inst: Instance, seg: int) -> EndpointId:
    return inst.end_with(seg, highest=True)


def lower(inst: Instance, seg: int) -> EndpointId:
    return inst.end_with(seg, lowest=True)


# -- naive cascading reference ------------------------------------------------
#
# Quadratic-per-step fixpoint iteration with regions recomputed from scratch
# out of the color map; no index, no incremental state. Supports the strip
# and bottom-right quadrant settings.


def _strip_forced(inst: Instance, colors: dict[EndpointId, Color], eid: EndpointId):
    y = inst.ys[eid.index]
    reds = [inst.ys[e.index] for e, c in colors.items() if c is Color.RED]
    blues_hi = [inst.ys[e.index] for e, c in colors.items() if c is Color.BLUE
                and inst.ys[e.index] > max(reds)]
    blues_lo = [inst.ys[e.index] for e, c in colors.items() if c is Color.BLUE
                and inst.ys[e.index] < min(reds)]
    if min(reds) <= y <= max(reds):
        return Color.RED
    if blues_hi and y >= min(blues_hi):
        return Color.BLUE
    if blues_lo and y <= max(blues_lo):
        return Color.BLUE
    return None


def _quadrant_forced(inst: Instance, colors: dict[EndpointId, Color],
                     apex0, eid: EndpointId):
    x, y = inst.xs[eid.index], inst.ys[eid.index]
    red_x = [inst.xs[e.index] for e, c in colors.items() if c is Color.RED]
    red_y = [inst.ys[e.index] for e, c in colors.items() if c is Color.RED]
    ax = min([apex0[0]] + red_x)
    ay = max([apex0[1]] + red_y)
    if x >= ax and y <= ay:
        return Color.RED
    for e, c in colors.items():
        if c is Color.BLUE:
            bx, by = inst.xs[e.index], inst.ys[e.index]
            if x <= bx and y >= by:
                return Color.BLUE
    return None


def naive_cascade(inst: Instance, kind: str, seeds: list[tuple[EndpointId, Color]]):
    """Returns ('contradiction', None) or ('quiescent', colors)."""
    colors: dict[EndpointId, Color] = {}
    if kind == "quadrant":
        apex0 = (
            min(max(inst.xs[2 * s], inst.xs[2 * s + 1]) for s in range(inst.n)),
            max(min(inst.ys[2 * s], inst.ys[2 * s + 1]) for s in range(inst.n)),
        )
    else:
        apex0 = None
    pending = list(seeds)
    while True:
        nxt: list[tuple[EndpointId, Color]] = []
        for eid, color in pending:
            if colors.get(eid) is color:
                continue
            if colors.get(eid) is not None:
                return ("contradiction", None)
            colors[eid] = color
            nxt.append((eid.partner(), color.opposite()))
        pending = nxt

        def forced_color(eid: EndpointId):
            if kind == "strip":
                if not any(c is Color.RED for c in colors.values()):
                    return None  # strip regions undefined until a red exists
                return _strip_forced(inst, colors, eid)
            return _quadrant_forced(inst, colors, apex0, eid)

        # contradiction: some colored endpoint now violates its region
        for eid, color in list(colors.items()):
            forced = forced_color(eid)
            if forced is not None and forced is not color:
                return ("contradiction", None)
        if pending:
            continue
        # pull in any unclassified endpoint now inside a forced region
        for seg in range(inst.n):
            for end in ("A", "B"):
                eid = EndpointId(seg, end)
                if eid not in colors:
                    forced = forced_color(eid)
                    if forced is not None:
                        pending.append((eid, forced))
        if not pending:
            return ("quiescent", colors)
