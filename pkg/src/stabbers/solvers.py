"""The five shape solvers plus triviality detection.

Every orientation is reduced to a canonical frame (horizontal strips,
bottom-right quadrants, downward-open 3-rectangles) by an exact linear point
map; combinatorial classes are frame-invariant, so solutions are rebuilt in
the original frame afterwards. Enumeration follows the cascading engine:
classify the forced seeds, cascade, then branch on how a solution can treat
the two gray components (swallow one whole, or pin the endpoints nearest the
red region and recurse). The 3-rectangle solver adds the two-level sweep with
checkpoint/rollback; the rectangle solver fixes each endpoint as the bottom
boundary and reduces to preseeded 3-rectangle runs.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Mapping, Sequence

from .cascade import CascadeState
from .core import (
    Classification,
    Color,
    Coord,
    EndpointId,
    Instance,
    InternalInvariantViolation,
    Shape,
    Side,
    Solution,
    StabberClass,
    bounded_sides,
    identity_map,
    negate_x_map,
    negate_xy_map,
    negate_y_map,
    region_bounds,
    rotate_map,
    transpose_map,
    validate_general_position,
)
from .index import RankCounter
from .regions import Contradiction, Loc, QuadrantRegions, StripRegions, ThreeRectRegions

# Cheap structural assertions (gray-component pairing, segment-type lemma,
# sweep disjointness) run inside the solvers while this is on.
CHECK_INVARIANTS = True

ClassTuple = tuple[EndpointId, ...]  # red endpoint per segment, in segment order

# Point maps taking each target frame to its canonical solver frame.
_FRAMES = {
    ("halfplane", "up"): identity_map,
    ("halfplane", "down"): negate_y_map,
    ("halfplane", "right"): transpose_map,
    ("halfplane", "left"): rotate_map,
    ("strip", "horizontal"): identity_map,
    ("strip", "vertical"): transpose_map,
    ("quadrant", "br"): identity_map,
    ("quadrant", "tr"): negate_y_map,
    ("quadrant", "bl"): negate_x_map,
    ("quadrant", "tl"): negate_xy_map,
    ("three_rect", "down"): identity_map,
    ("three_rect", "up"): negate_y_map,
    ("three_rect", "left"): transpose_map,
    ("three_rect", "right"): rotate_map,
    ("rect", ""): identity_map,
}

_OPPOSITE_DIR = {"up": "down", "down": "up", "left": "right", "right": "left"}


# ---------------------------------------------------------------------------
# solution construction and triviality


def solution_from_class(inst: Instance, shape: Shape, reds: Sequence[EndpointId],
                        counter: RankCounter) -> Solution:
    """Build the canonical Solution realizing ``reds``: anchor each bounded
    side at the extreme red endpoint that the minimal region rests on."""
    cls = StabberClass.from_reds(reds, inst.n)
    xs, ys = inst.xs, inst.ys
    anchors = []
    for side in bounded_sides(shape):
        if side is Side.LEFT:
            anchor = min(cls.reds, key=lambda e: xs[e.index])
        elif side is Side.RIGHT:
            anchor = max(cls.reds, key=lambda e: xs[e.index])
        elif side is Side.TOP:
            anchor = max(cls.reds, key=lambda e: ys[e.index])
        else:
            anchor = min(cls.reds, key=lambda e: ys[e.index])
        anchors.append(anchor)
    sol = Solution(shape, tuple(anchors), cls)
    if is_trivial(sol, inst, counter):
        sol = Solution(shape, tuple(anchors), cls, trivial=True)
    return sol


def is_trivial(sol: Solution, inst: Instance, counter: RankCounter | None = None) -> bool:
    """True iff extending some side of the solution to infinity sweeps an
    area empty of endpoints (the region then equals one with fewer sides)."""
    if counter is None:
        counter = RankCounter(inst)
    bounds = region_bounds(inst, sol)
    m = 2 * inst.n
    lo_x = bounds.get(Side.LEFT)
    hi_x = bounds.get(Side.RIGHT)
    lo_y = bounds.get(Side.BOTTOM)
    hi_y = bounds.get(Side.TOP)
    # closed rank windows of the region's own extent per axis
    rx_lo = 0 if lo_x is None else counter.x_rank(lo_x, strict=True)
    rx_hi = m if hi_x is None else counter.x_rank(hi_x, strict=False)
    ry_lo = 0 if lo_y is None else counter.y_rank(lo_y, strict=True)
    ry_hi = m if hi_y is None else counter.y_rank(hi_y, strict=False)
    for side in bounded_sides(sol.shape):
        if side is Side.LEFT:
            count = counter.count_ranks(0, rx_lo, ry_lo, ry_hi)
        elif side is Side.RIGHT:
            count = counter.count_ranks(rx_hi, m, ry_lo, ry_hi)
        elif side is Side.BOTTOM:
            count = counter.count_ranks(rx_lo, rx_hi, 0, ry_lo)
        else:
            count = counter.count_ranks(rx_lo, rx_hi, ry_hi, m)
        if count == 0:
            return True
    return False


def _build_solutions(inst: Instance, shape: Shape, classes: Iterable[ClassTuple],
                     counter: RankCounter | None = None) -> list[Solution]:
    if counter is None:
        counter = RankCounter(inst)
    return [solution_from_class(inst, shape, cls, counter) for cls in sorted(set(classes))]


def _complete_class(state: CascadeState, extra: Mapping[int, EndpointId]) -> ClassTuple:
    """Current red endpoints, with ``extra`` filling the unknown segments."""
    out = []
    for seg in range(state.inst.n):
        color_a = state.colors[2 * seg]
        if color_a is not None:
            out.append(EndpointId(seg, "A" if color_a is Color.RED else "B"))
        else:
            out.append(extra[seg])
    return tuple(out)


def _seed_consistent(state: CascadeState, pairs: Iterable[tuple[EndpointId, Color]]) -> bool:
    """Seed and cascade the still-unknown pairs; False when some endpoint is
    already forced opposite or the cascade contradicts."""
    todo = []
    for eid, color in pairs:
        current = state.color_of(eid)
        if current is color:
            continue
        if current is not None:
            return False
        todo.append((eid, color))
    if state.seed(todo).contradiction:
        return False
    return not state.run().contradiction


# ---------------------------------------------------------------------------
# halfplanes


def solve_halfplane(inst: Instance, direction: str = "up") -> list[Solution]:
    """The two complementary axis-aligned halfplane stabbers for the axis of
    ``direction``, or an empty list when the projections have no common point."""
    shape = Shape.halfplane(direction)
    validate_general_position(inst, shape)
    frame = _FRAMES[(shape.kind, shape.variant)]
    ti = inst.transformed(frame)
    uppers = [ti.end_with(s, highest=True) for s in range(ti.n)]
    lowers = [ti.end_with(s, lowest=True) for s in range(ti.n)]
    highest_lower = max(ti.ys[e.index] for e in lowers)
    lowest_upper = min(ti.ys[e.index] for e in uppers)
    if highest_lower > lowest_upper:
        return []
    counter = RankCounter(inst)
    sols = [
        solution_from_class(inst, shape, tuple(uppers), counter),
        solution_from_class(inst, Shape.halfplane(_OPPOSITE_DIR[direction]),
                            tuple(lowers), counter),
    ]
    sols.sort(key=lambda s: s.cls.reds)
    return sols


# ---------------------------------------------------------------------------
# strips


def _strip_quiescence_check(state: CascadeState) -> None:
    reg = state.regions
    for seg in state.unknown_segments():
        labels = set()
        for idx in (2 * seg, 2 * seg + 1):
            loc, label = reg.locate(state.inst.xs[idx], state.inst.ys[idx])
            if loc is not Loc.GRAY:
                raise InternalInvariantViolation(
                    f"unknown endpoint {idx} not gray at quiescence ({loc})")
            labels.add(label)
        if labels != {"upper", "lower"}:
            raise InternalInvariantViolation(
                f"unknown segment {seg} lacks one endpoint per gray component")


def _strip_classes(inst: Instance, check: bool) -> set[ClassTuple]:
    n = inst.n
    ys = inst.ys
    uppers = [inst.end_with(s, highest=True) for s in range(n)]
    lowers = [inst.end_with(s, lowest=True) for s in range(n)]
    seg_b = max(range(n), key=lambda s: ys[lowers[s].index])
    seg_t = min(range(n), key=lambda s: ys[uppers[s].index])
    classes: set[ClassTuple] = set()
    if ys[lowers[seg_b].index] <= ys[uppers[seg_t].index]:
        # a stabbing halfplane exists; its two classes are also strip classes
        classes.add(tuple(uppers))
        classes.add(tuple(lowers))
        if seg_b == seg_t:
            # the forced seeds coincide on one segment: no further classes
            return classes
    state = CascadeState(inst, StripRegions())
    if state.seed([(lowers[seg_b], Color.RED), (uppers[seg_t], Color.RED)]).contradiction:
        return classes
    if state.run().contradiction:
        return classes
    while True:
        if check:
            _strip_quiescence_check(state)
        unknown = state.unknown_segments()
        if not unknown:
            classes.add(_complete_class(state, {}))
            break
        classes.add(_complete_class(state, {s: uppers[s] for s in unknown}))
        classes.add(_complete_class(state, {s: lowers[s] for s in unknown}))
        tau = min(unknown, key=lambda s: ys[uppers[s].index])
        beta = max(unknown, key=lambda s: ys[lowers[s].index])
        if tau == beta:
            break
        if not _seed_consistent(
            state, [(uppers[tau], Color.RED), (lowers[beta], Color.RED)]
        ):
            break
    return classes


def solve_strip(inst: Instance, axis: str = "horizontal") -> list[Solution]:
    """All combinatorially different stabbing strips on the given axis."""
    shape = Shape.strip(axis)
    validate_general_position(inst, shape)
    ti = inst.transformed(_FRAMES[(shape.kind, shape.variant)])
    return _build_solutions(inst, shape, _strip_classes(ti, CHECK_INVARIANTS))


# ---------------------------------------------------------------------------
# quadrants


def _quadrant_quiescence_check(state: CascadeState,
                               comp: dict[int, dict[str, EndpointId]]) -> None:
    for seg, slots in comp.items():
        if set(slots) != {"right", "down"}:
            raise InternalInvariantViolation(
                f"unknown segment {seg} lacks one endpoint per gray component")


def _quadrant_components(state: CascadeState) -> dict[int, dict[str, EndpointId]]:
    """Gray-component membership of every unknown endpoint; also enforces
    that none of them sits in the red, blue, or white region."""
    reg = state.regions
    out: dict[int, dict[str, EndpointId]] = {}
    for seg in state.unknown_segments():
        slots: dict[str, EndpointId] = {}
        for end in ("A", "B"):
            eid = EndpointId(seg, end)
            loc, label = reg.locate(state.inst.xs[eid.index], state.inst.ys[eid.index])
            if loc is not Loc.GRAY:
                raise InternalInvariantViolation(
                    f"unknown endpoint {eid} in {loc} region at quiescence")
            slots[label] = eid
        out[seg] = slots
    return out


def _quadrant_classes(inst: Instance, check: bool) -> set[ClassTuple]:
    n = inst.n
    xs, ys = inst.xs, inst.ys
    apex_x = min(max(xs[2 * s], xs[2 * s + 1]) for s in range(n))
    apex_y = max(min(ys[2 * s], ys[2 * s + 1]) for s in range(n))
    state = CascadeState(inst, QuadrantRegions(apex_x, apex_y))
    state.absorb((apex_x, None, None, apex_y))
    classes: set[ClassTuple] = set()
    if state.run().contradiction:
        return classes
    while True:
        unknown = state.unknown_segments()
        if not unknown:
            classes.add(_complete_class(state, {}))
            break
        comp = _quadrant_components(state)
        if check:
            _quadrant_quiescence_check(state, comp)
        reg = state.regions
        reds_now = state.red_endpoints()
        red_min_x = min((xs[e.index] for e in reds_now), default=reg.apex_x)
        red_max_y = max((ys[e.index] for e in reds_now), default=reg.apex_y)
        right_ends = {s: slots["right"] for s, slots in comp.items()}
        down_ends = {s: slots["down"] for s, slots in comp.items()}
        # swallow the right component whole
        ax = min(red_min_x, min(xs[e.index] for e in right_ends.values()))
        ay = max(red_max_y, max(ys[e.index] for e in right_ends.values()))
        if not reg.apex_conflicts(ax, ay):
            classes.add(_complete_class(state, right_ends))
        # swallow the down component whole
        ax = min(red_min_x, min(xs[e.index] for e in down_ends.values()))
        ay = max(red_max_y, max(ys[e.index] for e in down_ends.values()))
        if not reg.apex_conflicts(ax, ay):
            classes.add(_complete_class(state, down_ends))
        # otherwise a stabber holds both endpoints nearest the red region
        tau = min(unknown, key=lambda s: ys[right_ends[s].index])
        beta = max(unknown, key=lambda s: xs[down_ends[s].index])
        if tau == beta:
            break
        if not _seed_consistent(
            state, [(right_ends[tau], Color.RED), (down_ends[beta], Color.RED)]
        ):
            break
    return classes


def solve_quadrant(inst: Instance, corner: str = "br") -> list[Solution]:
    """All combinatorially different stabbing quadrants of the given corner type."""
    shape = Shape.quadrant(corner)
    validate_general_position(inst, shape)
    ti = inst.transformed(_FRAMES[(shape.kind, shape.variant)])
    return _build_solutions(inst, shape, _quadrant_classes(ti, CHECK_INVARIANTS))


# ---------------------------------------------------------------------------
# 3-rectangles


_ALLOWED_BASE_TYPES = {
    frozenset(("left", "top")),
    frozenset(("left", "top_right")),
    frozenset(("left", "right")),
    frozenset(("top_left", "right")),
    frozenset(("top", "right")),
}
# During sweep steps the red region has grown, so the non-right endpoint of a
# pending segment may sit in any zone left of or above it; the endpoint in the
# right gap can never migrate out (the red region would have absorbed it).
_ALLOWED_SWEEP_TYPES = {
    frozenset(("left", "right")),
    frozenset(("top_left", "right")),
    frozenset(("top", "right")),
}


def _three_rect_zones(state: CascadeState, seg: int) -> frozenset:
    reg = state.regions
    labels = []
    for idx in (2 * seg, 2 * seg + 1):
        loc, label = reg.locate(state.inst.xs[idx], state.inst.ys[idx])
        if loc is not Loc.GRAY:
            raise InternalInvariantViolation(
                f"unknown endpoint {idx} in {loc} region at quiescence")
        labels.append(label)
    return frozenset(labels)


def _segment_type_check(state: CascadeState, allowed: set[frozenset], where: str) -> None:
    for seg in state.unknown_segments():
        zones = _three_rect_zones(state, seg)
        if zones not in allowed:
            raise InternalInvariantViolation(
                f"unknown segment {seg} of type {sorted(zones)} after {where}")


def _gray_endpoints(state: CascadeState, label: str) -> list[EndpointId]:
    """Unknown endpoints in one gray zone, ordered left to right."""
    reg = state.regions
    xs, ys = state.inst.xs, state.inst.ys
    out = []
    for seg in state.unknown_segments():
        for end in ("A", "B"):
            eid = EndpointId(seg, end)
            loc, lab = reg.locate(xs[eid.index], ys[eid.index])
            if loc is Loc.GRAY and lab == label:
                out.append(eid)
    out.sort(key=lambda e: xs[e.index])
    return out


def _class_valid_three_rect(inst: Instance, cls: ClassTuple, floor: Coord | None) -> bool:
    """Direct check: the minimal downward-open 3-rectangle over the reds
    contains no blue endpoint (those below the fixed floor never count)."""
    xs, ys = inst.xs, inst.ys
    red_idx = set(e.index for e in cls)
    lo = min(xs[i] for i in red_idx)
    hi = max(xs[i] for i in red_idx)
    top = max(ys[i] for i in red_idx)
    for i in range(2 * inst.n):
        if i in red_idx:
            continue
        if floor is not None and ys[i] < floor:
            continue
        if lo <= xs[i] <= hi and ys[i] <= top:
            return False
    return True


def _three_rect_classes(inst: Instance, preseed, floor: Coord | None,
                        sweep_mode: str, check: bool,
                        stats: dict | None = None) -> set[ClassTuple]:
    if sweep_mode not in ("rollback", "recompute"):
        raise ValueError("sweep_mode must be 'rollback' or 'recompute'")
    xs, ys = inst.xs, inst.ys
    classes: set[ClassTuple] = set()

    def build_base() -> CascadeState | None:
        st = CascadeState(inst, ThreeRectRegions(floor=floor))
        if preseed:
            if st.seed(preseed).contradiction:
                return None
            if st.run().contradiction:
                return None
        return st

    state = build_base()
    if state is None:
        return classes
    unknown0 = state.unknown_segments()
    if not unknown0:
        classes.add(_complete_class(state, {}))
        return classes

    # side classes: a solution missing one of the forced vertical lines takes
    # every unknown segment on one x-side; validate those two directly
    lefts = {s: inst.end_with(s, leftmost=True) for s in unknown0}
    rights = {s: inst.end_with(s, rightmost=True) for s in unknown0}
    for extra in (lefts, rights):
        cand = _complete_class(state, extra)
        if _class_valid_three_rect(inst, cand, floor):
            classes.add(cand)

    # every other solution spans both forced lines up to the forced height
    span_a = max(xs[e.index] for e in lefts.values())
    span_b = min(xs[e.index] for e in rights.values())
    top_seed = max(ys[inst.end_with(s, lowest=True).index] for s in unknown0)
    seed_bounds = (min(span_a, span_b), max(span_a, span_b), top_seed)

    def grow(st: CascadeState) -> bool:
        try:
            delta = st.regions.grow_red(*seed_bounds)
        except Contradiction:
            return False
        st.register_region_delta(delta)
        return not st.run().contradiction

    if not grow(state):
        return classes
    if check:
        _segment_type_check(state, _ALLOWED_BASE_TYPES, "initial cascade")

    a_points = _gray_endpoints(state, "left")
    k = len(a_points)
    blues_applied: list[EndpointId] = []

    def rebuild_prefix() -> CascadeState:
        st = build_base()
        if st is None or not grow(st):
            raise InternalInvariantViolation("base rebuild diverged")
        for p in blues_applied:
            if not _seed_consistent(st, [(p, Color.BLUE)]):
                raise InternalInvariantViolation("prefix rebuild diverged")
        return st

    seen_unclassified: dict[int, int] = {}
    for i in range(1, k + 2):
        red_pairs = [(p, Color.RED) for p in a_points[i - 1:]]
        if sweep_mode == "rollback":
            cp = state.checkpoint()
            work = state
        else:
            work = rebuild_prefix()
        if _seed_consistent(work, red_pairs):
            unknown_i = work.unknown_segments()
            if check:
                _segment_type_check(work, _ALLOWED_SWEEP_TYPES, "sweep step")
                # The source material claims a segment never stays
                # unclassified in two different sweep steps; zone migration
                # of its non-right endpoint makes that false in edge cases
                # (correctness is unaffected, duplicates are deduplicated),
                # so overlaps are recorded for inspection instead of raised.
                for seg in unknown_i:
                    first = seen_unclassified.setdefault(seg, i)
                    if first != i and stats is not None:
                        stats.setdefault("sweep_overlaps", []).append((seg, first, i))
            e_points = _gray_endpoints(work, "right")
            for j in range(len(e_points) + 1):
                if sweep_mode == "rollback":
                    cp2 = work.checkpoint()
                    inner = work
                else:
                    inner = rebuild_prefix()
                    if not _seed_consistent(inner, red_pairs):
                        raise InternalInvariantViolation("sweep rebuild diverged")
                split = [(e, Color.RED) for e in e_points[:j]] + [
                    (e, Color.BLUE) for e in e_points[j:]
                ]
                if _seed_consistent(inner, split) and not inner.unknown_segments():
                    classes.add(_complete_class(inner, {}))
                if sweep_mode == "rollback":
                    work.rollback(cp2)
        if sweep_mode == "rollback":
            state.rollback(cp)
        if i <= k:
            nxt = a_points[i - 1]
            if not _seed_consistent(state, [(nxt, Color.BLUE)]):
                break
            blues_applied.append(nxt)
    return classes


def _normalize_preseed(preseed) -> list[tuple[EndpointId, Color]]:
    if preseed is None:
        return []
    if isinstance(preseed, Classification):
        return preseed.items()
    return list(preseed)


def solve_three_rect(inst: Instance, open_side: str = "down", preseed=None,
                     floor: Coord | None = None, sweep_mode: str = "rollback",
                     stats: dict | None = None) -> list[Solution]:
    """All combinatorially different stabbing 3-rectangles open toward
    ``open_side``. ``preseed`` (a Classification or (endpoint, color) pairs)
    fixes colors up front; ``floor`` closes the open side at that coordinate,
    which is how the rectangle solver reuses this routine."""
    shape = Shape.three_rect(open_side)
    validate_general_position(inst, shape)
    frame = _FRAMES[(shape.kind, shape.variant)]
    ti = inst.transformed(frame)
    cfloor: Coord | None = None
    if floor is not None:
        if open_side in ("down", "up"):
            cfloor = frame(0, floor)[1]
        else:
            cfloor = frame(floor, 0)[1]
    classes = _three_rect_classes(
        ti, _normalize_preseed(preseed), cfloor, sweep_mode, CHECK_INVARIANTS,
        stats=stats,
    )
    return _build_solutions(inst, shape, classes)


# ---------------------------------------------------------------------------
# rectangles


def solve_rect(inst: Instance, workers: int | None = None,
               sweep_mode: str = "rollback",
               stats: dict | None = None) -> list[Solution]:
    """All combinatorially different stabbing rectangles: every endpoint is
    tried as the bottom-boundary anchor, everything strictly below it is
    preseeded blue, and the rest is a floor-limited 3-rectangle problem.
    Subproblems are independent; ``workers`` > 1 runs them on a thread pool
    (the output is canonically sorted either way)."""
    shape = Shape.rect()
    validate_general_position(inst, shape)
    check = CHECK_INVARIANTS
    ys = inst.ys
    all_eids = sorted(inst.endpoint_ids(), key=lambda e: ys[e.index])

    def classes_for(v: EndpointId) -> tuple[set[ClassTuple], dict]:
        yv = ys[v.index]
        assigns = [(v, Color.RED)]
        assigns.extend(
            (w, Color.BLUE) for w in all_eids if ys[w.index] < yv
        )
        sub_stats: dict = {}
        found = _three_rect_classes(inst, assigns, yv, sweep_mode, check,
                                    stats=sub_stats)
        return found, sub_stats

    classes: set[ClassTuple] = set()
    parts: list[tuple[set[ClassTuple], dict]]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(classes_for, all_eids))
    else:
        parts = [classes_for(v) for v in all_eids]
    for found, sub_stats in parts:
        classes |= found
        if stats is not None:
            for key, value in sub_stats.items():
                stats.setdefault(key, []).extend(value)
    return _build_solutions(inst, shape, classes)


# ---------------------------------------------------------------------------
# dispatch


def solve(inst: Instance, shape: Shape, **kwargs) -> list[Solution]:
    """Run the solver matching ``shape``."""
    if shape.kind == "halfplane":
        return solve_halfplane(inst, shape.variant, **kwargs)
    if shape.kind == "strip":
        return solve_strip(inst, shape.variant, **kwargs)
    if shape.kind == "quadrant":
        return solve_quadrant(inst, shape.variant, **kwargs)
    if shape.kind == "three_rect":
        return solve_three_rect(inst, shape.variant, **kwargs)
    return solve_rect(inst, **kwargs)
