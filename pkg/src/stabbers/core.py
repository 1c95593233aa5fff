"""Exact geometric primitives: coordinates, segments, instances, endpoint
classifications, stabber shapes and canonical solutions.

All coordinates are exact rationals; every comparison in this package is
exact, so there is no epsilon anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

Coord = int | Fraction


class StabberError(Exception):
    """Base class for all library errors."""


class DegenerateInput(StabberError):
    """Input violates the general-position requirements of a solver."""

    def __init__(self, message: str, witnesses: Iterable["EndpointId"] = ()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class PartialClassification(StabberError):
    """A total classification was required but some segment is unassigned."""


class MalformedSolution(StabberError):
    """Solution anchors are inconsistent with its shape."""


class DoubleAssignmentConflict(StabberError):
    """An endpoint was seeded with both colors."""


class StaleCheckpoint(StabberError):
    """Rollback target no longer exists in the journal."""


class InternalInvariantViolation(StabberError):
    """An internal structural invariant was broken (library bug)."""


class DuplicateValues(StabberError):
    """Generator input contains repeated values."""


class BadSize(StabberError):
    """Generator size parameter out of range."""


class ExhaustedRetries(StabberError):
    """Random generation could not satisfy its constraints."""


def as_coord(value: int | str | Fraction) -> Coord:
    """Normalize an exact coordinate. Integers stay ``int``; fractions with
    unit denominator collapse to ``int``; strings are parsed as "p/q".

    Floats are rejected: silent binary-float promotion would manufacture
    coordinates the caller never wrote down.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, str):
        return as_coord(Fraction(value))
    raise TypeError(f"exact coordinate required, got {type(value).__name__}")


def coord_str(value: Coord) -> str:
    """Serialize a coordinate losslessly ("p/q" for non-integers)."""
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


@dataclass(frozen=True)
class Point:
    x: Coord
    y: Coord

    def __iter__(self) -> Iterator[Coord]:
        return iter((self.x, self.y))


class End(str, Enum):
    A = "A"
    B = "B"

    def __str__(self) -> str:  # keep JSON round-trips terse
        return self.value


class EndpointId(NamedTuple):
    seg: int
    end: str  # "A" | "B"

    @property
    def index(self) -> int:
        return 2 * self.seg + (0 if self.end == "A" else 1)

    def partner(self) -> "EndpointId":
        return EndpointId(self.seg, "B" if self.end == "A" else "A")

    @staticmethod
    def from_index(idx: int) -> "EndpointId":
        return EndpointId(idx // 2, "A" if idx % 2 == 0 else "B")


class Color(Enum):
    RED = "red"
    BLUE = "blue"

    def opposite(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise DegenerateInput("zero-length segment")

    @property
    def is_vertical(self) -> bool:
        """Both endpoints share an x coordinate (left/right ill-defined)."""
        return self.a.x == self.b.x

    @property
    def is_horizontal(self) -> bool:
        """Both endpoints share a y coordinate (upper/lower ill-defined)."""
        return self.a.y == self.b.y

    def _pick(self, upper: bool, by_y: bool) -> tuple[str, Point]:
        if by_y:
            if self.is_horizontal:
                raise DegenerateInput("horizontal segment has no upper/lower endpoint")
            key = self.a.y > self.b.y
        else:
            if self.is_vertical:
                raise DegenerateInput("vertical segment has no left/right endpoint")
            key = self.a.x > self.b.x
        a_wins = key == upper
        return ("A", self.a) if a_wins else ("B", self.b)

    @property
    def upper(self) -> Point:
        return self._pick(True, by_y=True)[1]

    @property
    def lower(self) -> Point:
        return self._pick(False, by_y=True)[1]

    @property
    def left(self) -> Point:
        return self._pick(False, by_y=False)[1]

    @property
    def right(self) -> Point:
        return self._pick(True, by_y=False)[1]


PointMap = Callable[[Coord, Coord], tuple[Coord, Coord]]


@dataclass(frozen=True)
class Instance:
    segments: tuple[Segment, ...]
    # flat coordinate tuples indexed by EndpointId.index, derived from segments
    xs: tuple[Coord, ...] = field(init=False, repr=False, compare=False)
    ys: tuple[Coord, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.segments:
            raise DegenerateInput("instance must contain at least one segment")
        xs: list[Coord] = []
        ys: list[Coord] = []
        for seg in self.segments:
            xs.extend((seg.a.x, seg.b.x))
            ys.extend((seg.a.y, seg.b.y))
        object.__setattr__(self, "xs", tuple(xs))
        object.__setattr__(self, "ys", tuple(ys))

    @property
    def n(self) -> int:
        return len(self.segments)

    @staticmethod
    def from_coords(coords: Iterable[tuple[tuple, tuple]]) -> "Instance":
        segs = []
        for (x1, y1), (x2, y2) in coords:
            segs.append(
                Segment(
                    Point(as_coord(x1), as_coord(y1)),
                    Point(as_coord(x2), as_coord(y2)),
                )
            )
        return Instance(tuple(segs))

    def point(self, eid: EndpointId) -> Point:
        i = eid.index
        return Point(self.xs[i], self.ys[i])

    def endpoint_ids(self) -> Iterator[EndpointId]:
        for s in range(self.n):
            yield EndpointId(s, "A")
            yield EndpointId(s, "B")

    def end_with(self, seg: int, *, lowest: bool = False, highest: bool = False,
                 leftmost: bool = False, rightmost: bool = False) -> EndpointId:
        """Endpoint of ``seg`` selected by one extremal role."""
        s = self.segments[seg]
        if lowest or highest:
            if s.is_horizontal:
                raise DegenerateInput("horizontal segment has no upper/lower endpoint")
            a_wins = (s.a.y > s.b.y) == bool(highest)
        elif leftmost or rightmost:
            if s.is_vertical:
                raise DegenerateInput("vertical segment has no left/right endpoint")
            a_wins = (s.a.x > s.b.x) == bool(rightmost)
        else:
            raise ValueError("select exactly one role")
        return EndpointId(seg, "A" if a_wins else "B")

    def transformed(self, point_map: PointMap) -> "Instance":
        """New instance with every endpoint mapped; endpoint ids are preserved."""
        segs = []
        for seg in self.segments:
            ax, ay = point_map(seg.a.x, seg.a.y)
            bx, by = point_map(seg.b.x, seg.b.y)
            segs.append(Segment(Point(ax, ay), Point(bx, by)))
        return Instance(tuple(segs))


class Side(Enum):
    LEFT = "left"
    TOP = "top"
    RIGHT = "right"
    BOTTOM = "bottom"


_SIDE_ORDER = (Side.LEFT, Side.TOP, Side.RIGHT, Side.BOTTOM)

_SHAPE_VARIANTS = {
    "halfplane": ("up", "down", "left", "right"),
    "strip": ("horizontal", "vertical"),
    "quadrant": ("tl", "tr", "bl", "br"),
    "three_rect": ("down", "up", "left", "right"),
    "rect": ("",),
}

# Which boundary sides each shape actually has, keyed by (kind, variant).
_BOUNDED_SIDES = {
    ("halfplane", "up"): {Side.BOTTOM},
    ("halfplane", "down"): {Side.TOP},
    ("halfplane", "left"): {Side.RIGHT},
    ("halfplane", "right"): {Side.LEFT},
    ("strip", "horizontal"): {Side.TOP, Side.BOTTOM},
    ("strip", "vertical"): {Side.LEFT, Side.RIGHT},
    ("quadrant", "tl"): {Side.RIGHT, Side.BOTTOM},
    ("quadrant", "tr"): {Side.LEFT, Side.BOTTOM},
    ("quadrant", "bl"): {Side.TOP, Side.RIGHT},
    ("quadrant", "br"): {Side.LEFT, Side.TOP},
    ("three_rect", "down"): {Side.LEFT, Side.TOP, Side.RIGHT},
    ("three_rect", "up"): {Side.LEFT, Side.RIGHT, Side.BOTTOM},
    ("three_rect", "left"): {Side.TOP, Side.RIGHT, Side.BOTTOM},
    ("three_rect", "right"): {Side.LEFT, Side.TOP, Side.BOTTOM},
    ("rect", ""): {Side.LEFT, Side.TOP, Side.RIGHT, Side.BOTTOM},
}


@dataclass(frozen=True)
class Shape:
    kind: str
    variant: str = ""

    def __post_init__(self) -> None:
        variants = _SHAPE_VARIANTS.get(self.kind)
        if variants is None:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if self.variant not in variants:
            raise ValueError(f"shape {self.kind!r} has no variant {self.variant!r}")

    @staticmethod
    def halfplane(direction: str) -> "Shape":
        return Shape("halfplane", direction)

    @staticmethod
    def strip(axis: str) -> "Shape":
        return Shape("strip", axis)

    @staticmethod
    def quadrant(corner: str) -> "Shape":
        return Shape("quadrant", corner)

    @staticmethod
    def three_rect(open_side: str) -> "Shape":
        return Shape("three_rect", open_side)

    @staticmethod
    def rect() -> "Shape":
        return Shape("rect", "")


def bounded_sides(shape: Shape) -> tuple[Side, ...]:
    """Boundary sides of ``shape`` in the fixed (left, top, right, bottom) order."""
    present = _BOUNDED_SIDES[(shape.kind, shape.variant)]
    return tuple(s for s in _SIDE_ORDER if s in present)


@dataclass(frozen=True)
class StabberClass:
    """Canonical identity of a combinatorial solution: the sorted list of red
    endpoints, exactly one per segment."""

    reds: tuple[EndpointId, ...]

    def __post_init__(self) -> None:
        segs = [e.seg for e in self.reds]
        if segs != sorted(set(segs)) or segs != list(range(len(segs))):
            raise ValueError("class must hold exactly one sorted endpoint per segment")

    @staticmethod
    def from_reds(reds: Iterable[EndpointId], n: int) -> "StabberClass":
        ordered = tuple(sorted(reds))
        if len(ordered) != n:
            raise ValueError(f"expected {n} red endpoints, got {len(ordered)}")
        return StabberClass(ordered)

    def __iter__(self) -> Iterator[EndpointId]:
        return iter(self.reds)

    def __len__(self) -> int:
        return len(self.reds)

    def __lt__(self, other: "StabberClass") -> bool:
        return self.reds < other.reds


class Classification:
    """Partial endpoint coloring; both endpoints of a segment, once assigned,
    always carry opposite colors."""

    def __init__(self, colors: Mapping[EndpointId, Color] | None = None):
        self._colors: dict[EndpointId, Color] = {}
        if colors:
            for eid, color in colors.items():
                self.assign(eid, color)

    def assign(self, eid: EndpointId, color: Color) -> None:
        eid = EndpointId(eid.seg, eid.end)
        old = self._colors.get(eid)
        if old is not None and old is not color:
            raise DoubleAssignmentConflict(f"endpoint {eid} seeded with both colors")
        mate = self._colors.get(eid.partner())
        if mate is not None and mate is color:
            raise DoubleAssignmentConflict(
                f"both endpoints of segment {eid.seg} would be {color.value}"
            )
        self._colors[eid] = color

    def get(self, eid: EndpointId) -> Color | None:
        return self._colors.get(eid)

    def __contains__(self, eid: EndpointId) -> bool:
        return eid in self._colors

    def __len__(self) -> int:
        return len(self._colors)

    def items(self) -> list[tuple[EndpointId, Color]]:
        return sorted(self._colors.items())


def canonical_class(classification: Classification, n: int) -> StabberClass:
    """Collapse a total classification to its canonical red-endpoint list."""
    reds = []
    for seg in range(n):
        a, b = EndpointId(seg, "A"), EndpointId(seg, "B")
        ca, cb = classification.get(a), classification.get(b)
        if ca is None or cb is None:
            raise PartialClassification(f"segment {seg} not fully classified")
        reds.append(a if ca is Color.RED else b)
    return StabberClass(tuple(reds))


@dataclass(frozen=True)
class Solution:
    """A stabbing region given by one red anchor endpoint per bounded side
    (in the shape's fixed side order) plus its combinatorial class."""

    shape: Shape
    anchors: tuple[EndpointId, ...]
    cls: StabberClass
    trivial: bool = False

    def __post_init__(self) -> None:
        expected = len(bounded_sides(self.shape))
        if len(self.anchors) != expected:
            raise MalformedSolution(
                f"{self.shape.kind}/{self.shape.variant} needs {expected} anchors,"
                f" got {len(self.anchors)}"
            )
        red_set = set(self.cls.reds)
        for a in self.anchors:
            if a not in red_set:
                raise MalformedSolution(f"anchor {a} is not a red endpoint")


def region_bounds(inst: Instance, sol: Solution) -> dict[Side, Coord]:
    """Per-side boundary coordinates of the solution's minimal closed region."""
    out: dict[Side, Coord] = {}
    for side, anchor in zip(bounded_sides(sol.shape), sol.anchors):
        p = inst.point(anchor)
        out[side] = p.x if side in (Side.LEFT, Side.RIGHT) else p.y
    lo, hi = out.get(Side.LEFT), out.get(Side.RIGHT)
    if lo is not None and hi is not None and lo > hi:
        raise MalformedSolution("left bound exceeds right bound")
    bo, to = out.get(Side.BOTTOM), out.get(Side.TOP)
    if bo is not None and to is not None and bo > to:
        raise MalformedSolution("bottom bound exceeds top bound")
    return out


def realize_region(inst: Instance, sol: Solution) -> Callable[[Point], bool]:
    """Exact membership predicate of the inclusionwise-smallest closed region
    of the solution's shape whose boundary sides pass through its anchors."""
    bounds = region_bounds(inst, sol)
    lo = bounds.get(Side.LEFT)
    hi = bounds.get(Side.RIGHT)
    bo = bounds.get(Side.BOTTOM)
    to = bounds.get(Side.TOP)

    def contains(p: Point) -> bool:
        if lo is not None and p.x < lo:
            return False
        if hi is not None and p.x > hi:
            return False
        if bo is not None and p.y < bo:
            return False
        if to is not None and p.y > to:
            return False
        return True

    return contains


def class_of_region(inst: Instance, contains: Callable[[Point], bool]) -> StabberClass | None:
    """Class realized by a region predicate, or None if it is not a stabber."""
    reds = []
    for seg in range(inst.n):
        a, b = EndpointId(seg, "A"), EndpointId(seg, "B")
        ia, ib = contains(inst.point(a)), contains(inst.point(b))
        if ia == ib:
            return None
        reds.append(a if ia else b)
    return StabberClass(tuple(reds))


def _axes_for(shape: Shape) -> tuple[bool, bool]:
    """(need distinct x, need distinct y) for general-position validation."""
    if shape.kind == "halfplane":
        return (shape.variant in ("left", "right"), shape.variant in ("up", "down"))
    if shape.kind == "strip":
        return (shape.variant == "vertical", shape.variant == "horizontal")
    return (True, True)


def validate_general_position(inst: Instance, shape: Shape) -> None:
    """Check the per-axis distinctness the shape's solver relies on.

    Raises DegenerateInput carrying the first offending endpoint pair.
    """
    need_x, need_y = _axes_for(shape)
    for axis, needed, coords in (("x", need_x, inst.xs), ("y", need_y, inst.ys)):
        if not needed:
            continue
        order = sorted(range(len(coords)), key=lambda i: coords[i])
        for i, j in zip(order, order[1:]):
            if coords[i] == coords[j]:
                w = (EndpointId.from_index(i), EndpointId.from_index(j))
                raise DegenerateInput(
                    f"endpoints {w[0]} and {w[1]} share {axis}={coord_str(coords[i])}",
                    witnesses=w,
                )


# Frame transforms used to reduce every orientation to a canonical solver.
def identity_map(x: Coord, y: Coord) -> tuple[Coord, Coord]:
    return (x, y)


def negate_x_map(x: Coord, y: Coord) -> tuple[Coord, Coord]:
    return (-x, y)


def negate_y_map(x: Coord, y: Coord) -> tuple[Coord, Coord]:
    return (x, -y)


def negate_xy_map(x: Coord, y: Coord) -> tuple[Coord, Coord]:
    return (-x, -y)


def transpose_map(x: Coord, y: Coord) -> tuple[Coord, Coord]:
    return (y, x)


def rotate_map(x: Coord, y: Coord) -> tuple[Coord, Coord]:
    """Quarter turn taking {x >= c} halfplanes to {y >= c} halfplanes."""
    return (y, -x)
