"""Brute-force ground truth: enumerate every combinatorially different
stabber by exhausting anchored candidate regions.

A candidate places each bounded side of the shape on some endpoint
coordinate, or drops it entirely (degenerations catch the trivial classes).
Candidates are evaluated in rank space as endpoint bitmasks, so one
candidate costs a handful of integer operations; the only virtue claimed
here is obvious correctness, which `_literal_classes` (plain predicate
evaluation) pins down in the tests.
"""
from __future__ import annotations

import itertools

from .core import (
    Coord,
    DegenerateInput,
    EndpointId,
    Instance,
    Shape,
    Side,
    StabberClass,
    bounded_sides,
    validate_general_position,
)

DEFAULT_CAP = 12


def _check_cap(inst: Instance, cap: int | None) -> None:
    limit = DEFAULT_CAP if cap is None else cap
    if inst.n > limit:
        raise DegenerateInput(
            f"oracle capped at n={limit}; got n={inst.n} (raise the cap explicitly)"
        )


class _AxisMasks:
    """Prefix bitmasks over one axis: which endpoints lie at rank < r."""

    def __init__(self, coords):
        m = len(coords)
        order = sorted(range(m), key=lambda i: (coords[i], i))
        self.values = [coords[i] for i in order]
        prefix = [0] * (m + 1)
        acc = 0
        for r, i in enumerate(order):
            acc |= 1 << i
            prefix[r + 1] = acc
        self.prefix = prefix
        self.all = acc
        self.m = m

    def range_mask(self, lo_rank: int | None, hi_rank: int | None) -> int:
        mask = self.all
        if hi_rank is not None:
            mask &= self.prefix[hi_rank + 1]
        if lo_rank is not None:
            mask &= self.all ^ self.prefix[lo_rank]
        return mask


def _rank_options(m: int, bounded: bool) -> list[int | None]:
    return ([None] + list(range(m))) if bounded else [None]


def _mask_classes(inst: Instance, shape: Shape) -> set[int]:
    n = inst.n
    m = 2 * n
    sides = set(bounded_sides(shape))
    xm = _AxisMasks(inst.xs)
    ym = _AxisMasks(inst.ys)
    even = sum(1 << (2 * s) for s in range(n))
    lo_x_opts = _rank_options(m, Side.LEFT in sides)
    hi_x_opts = _rank_options(m, Side.RIGHT in sides)
    lo_y_opts = _rank_options(m, Side.BOTTOM in sides)
    hi_y_opts = _rank_options(m, Side.TOP in sides)
    found: set[int] = set()
    for lo_y, hi_y in itertools.product(lo_y_opts, hi_y_opts):
        if lo_y is not None and hi_y is not None and lo_y > hi_y:
            continue
        my = ym.range_mask(lo_y, hi_y)
        if ((my | (my >> 1)) & even) != even:
            continue  # some segment already unreachable on y alone
        for lo_x in lo_x_opts:
            for hi_x in hi_x_opts:
                if lo_x is not None and hi_x is not None and lo_x > hi_x:
                    continue
                mask = my & xm.range_mask(lo_x, hi_x)
                if ((mask ^ (mask >> 1)) & even) == even:
                    found.add(mask)
    return found


def _mask_to_class(mask: int, n: int) -> StabberClass:
    reds = []
    for s in range(n):
        reds.append(EndpointId(s, "A") if mask & (1 << (2 * s)) else EndpointId(s, "B"))
    return StabberClass(tuple(reds))


def oracle_classes(inst: Instance, shape: Shape, cap: int | None = None) -> set[StabberClass]:
    """Every combinatorial class realizable by the shape, by exhaustion."""
    _check_cap(inst, cap)
    validate_general_position(inst, shape)
    return {_mask_to_class(mask, inst.n) for mask in _mask_classes(inst, shape)}


def oracle_narrowest_strip(inst: Instance, axis: str, cap: int | None = None) -> Coord | None:
    """Minimum anchored width over all stabbing strips, or None if none exist."""
    shape = Shape.strip(axis)
    _check_cap(inst, cap)
    validate_general_position(inst, shape)
    coords = inst.xs if axis == "vertical" else inst.ys
    am = _AxisMasks(coords)
    n = inst.n
    m = 2 * n
    even = sum(1 << (2 * s) for s in range(n))
    best: Coord | None = None
    for lo in range(m):
        for hi in range(lo, m):
            mask = am.range_mask(lo, hi)
            if ((mask ^ (mask >> 1)) & even) == even:
                width = am.values[hi] - am.values[lo]
                if best is None or width < best:
                    best = width
    return best


def _literal_classes(inst: Instance, shape: Shape) -> set[StabberClass]:
    """Tiny-n reference enumeration with plain predicate tests; exists to
    cross-check the bitmask path."""
    validate_general_position(inst, shape)
    sides = set(bounded_sides(shape))
    xs = sorted(set(inst.xs))
    ys = sorted(set(inst.ys))
    lo_x_opts = [None] + xs if Side.LEFT in sides else [None]
    hi_x_opts = [None] + xs if Side.RIGHT in sides else [None]
    lo_y_opts = [None] + ys if Side.BOTTOM in sides else [None]
    hi_y_opts = [None] + ys if Side.TOP in sides else [None]
    found: set[StabberClass] = set()
    for lo_x, hi_x, lo_y, hi_y in itertools.product(
        lo_x_opts, hi_x_opts, lo_y_opts, hi_y_opts
    ):
        if lo_x is not None and hi_x is not None and lo_x > hi_x:
            continue
        if lo_y is not None and hi_y is not None and lo_y > hi_y:
            continue
        reds = []
        ok = True
        for seg in range(inst.n):
            inside = []
            for end in ("A", "B"):
                eid = EndpointId(seg, end)
                p = inst.point(eid)
                if lo_x is not None and p.x < lo_x:
                    continue
                if hi_x is not None and p.x > hi_x:
                    continue
                if lo_y is not None and p.y < lo_y:
                    continue
                if hi_y is not None and p.y > hi_y:
                    continue
                inside.append(eid)
            if len(inside) != 1:
                ok = False
                break
            reds.append(inside[0])
        if ok:
            found.add(StabberClass(tuple(reds)))
    return found
