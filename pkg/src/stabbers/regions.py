"""Red/blue/gray region bookkeeping per stabber shape.

Each region state lives in the canonical frame of its solver (horizontal
strips, bottom-right quadrants, downward-open 3-rectangles). Updates return
an undo token plus the query boxes whose newly covered area the cascade
engine must re-scan; a coloring that would overlap red and blue raises
Contradiction on the exact update that first violates disjointness.

Boundary rule: red regions and blue forbidden zones are both closed, so a
point falling on both is a contradiction (impossible for inputs in general
position, and a loud symptom of upstream degeneracy otherwise).
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from enum import Enum

from .core import Color, Coord, InternalInvariantViolation

# Closed query box (x_lo, x_hi, y_lo, y_hi); None = unbounded on that side.
QueryBox = tuple[Coord | None, Coord | None, Coord | None, Coord | None]
# Every query carries the color newly covered endpoints must take.
ColoredQuery = tuple[Color, QueryBox]


class Contradiction(Exception):
    """Red and blue regions were forced to overlap."""


class Loc(Enum):
    RED = "red"
    BLUE = "blue"
    GRAY = "gray"
    WHITE = "white"


class StripRegions:
    """Projection onto the y axis: blue [t_lo, +inf), red [r_lo, r_hi],
    blue (-inf, b_hi], separated by the two gray gap intervals."""

    __slots__ = ("r_lo", "r_hi", "t_lo", "b_hi")

    def __init__(self) -> None:
        self.r_lo: Coord | None = None
        self.r_hi: Coord | None = None
        self.t_lo: Coord | None = None  # None = empty top blue
        self.b_hi: Coord | None = None  # None = empty bottom blue

    def _token(self):
        return (self.r_lo, self.r_hi, self.t_lo, self.b_hi)

    def apply_undo(self, token) -> None:
        self.r_lo, self.r_hi, self.t_lo, self.b_hi = token

    def snapshot(self):
        return self._token()

    def add_point(self, x: Coord, y: Coord, color: Color):
        token = self._token()
        queries: list[ColoredQuery] = []
        if color is Color.RED:
            if (self.t_lo is not None and y >= self.t_lo) or (
                self.b_hi is not None and y <= self.b_hi
            ):
                raise Contradiction(f"red y={y} lies in a blue interval")
            if self.r_lo is None:
                self.r_lo = self.r_hi = y
                queries.append((Color.RED, (None, None, y, y)))
            elif y < self.r_lo:
                self.r_lo = y
                queries.append((Color.RED, (None, None, self.r_lo, self.r_hi)))
            elif y > self.r_hi:
                self.r_hi = y
                queries.append((Color.RED, (None, None, self.r_lo, self.r_hi)))
        else:
            if self.r_lo is None:
                raise InternalInvariantViolation("blue before any red in strip state")
            if self.r_lo <= y <= self.r_hi:
                raise Contradiction(f"blue y={y} lies in the red interval")
            if y > self.r_hi:
                if self.t_lo is None or y < self.t_lo:
                    self.t_lo = y
                    queries.append((Color.BLUE, (None, None, y, None)))
            else:
                if self.b_hi is None or y > self.b_hi:
                    self.b_hi = y
                    queries.append((Color.BLUE, (None, None, None, y)))
        return token, queries

    def locate(self, x: Coord, y: Coord) -> tuple[Loc, str | None]:
        if self.t_lo is not None and y >= self.t_lo:
            return (Loc.BLUE, None)
        if self.b_hi is not None and y <= self.b_hi:
            return (Loc.BLUE, None)
        if self.r_lo is not None and self.r_lo <= y <= self.r_hi:
            return (Loc.RED, None)
        if self.r_lo is None:
            raise InternalInvariantViolation("locate on unseeded strip state")
        return (Loc.GRAY, "upper" if y > self.r_hi else "lower")


class QuadrantRegions:
    """Bottom-right red quadrant plus the staircase of blue corners, each of
    which forbids its closed top-left quadrant. Only non-dominated corners
    are stored, so the staircase ascends in both coordinates."""

    __slots__ = ("apex_x", "apex_y", "stair_x", "stair_y")

    def __init__(self, apex_x: Coord, apex_y: Coord):
        self.apex_x = apex_x
        self.apex_y = apex_y
        self.stair_x: list[Coord] = []
        self.stair_y: list[Coord] = []

    def snapshot(self):
        return (self.apex_x, self.apex_y, tuple(self.stair_x), tuple(self.stair_y))

    def apply_undo(self, token) -> None:
        ax, ay, pos, removed, inserted = token
        self.apex_x, self.apex_y = ax, ay
        if pos is not None:
            xs = [p[0] for p in removed]
            ys = [p[1] for p in removed]
            self.stair_x[pos : pos + inserted] = xs
            self.stair_y[pos : pos + inserted] = ys

    def apex_conflicts(self, x: Coord, y: Coord) -> bool:
        """Would a red quadrant with apex (x, y) meet a blue corner zone?"""
        idx = bisect_left(self.stair_x, x)
        return idx < len(self.stair_x) and self.stair_y[idx] <= y

    def add_point(self, x: Coord, y: Coord, color: Color):
        queries: list[ColoredQuery] = []
        if color is Color.RED:
            nx = x if x < self.apex_x else self.apex_x
            ny = y if y > self.apex_y else self.apex_y
            token = (self.apex_x, self.apex_y, None, (), 0)
            if nx == self.apex_x and ny == self.apex_y:
                return token, queries
            if self.apex_conflicts(nx, ny):
                raise Contradiction(f"red quadrant grown to ({nx},{ny}) meets blue")
            self.apex_x, self.apex_y = nx, ny
            queries.append((Color.RED, (nx, None, None, ny)))
            return token, queries
        # blue
        if x >= self.apex_x and y <= self.apex_y:
            raise Contradiction(f"blue point ({x},{y}) inside red quadrant")
        sx, sy = self.stair_x, self.stair_y
        idx = bisect_left(sx, x)
        if idx < len(sx) and sy[idx] <= y:
            # dominated: its forbidden zone is already covered
            return (self.apex_x, self.apex_y, None, (), 0), queries
        j2 = bisect_right(sx, x)
        j0 = bisect_left(sy, y, 0, j2)
        removed = tuple(zip(sx[j0:j2], sy[j0:j2]))
        sx[j0:j2] = [x]
        sy[j0:j2] = [y]
        queries.append((Color.BLUE, (None, x, y, None)))
        return (self.apex_x, self.apex_y, j0, removed, 1), queries

    def in_blue(self, x: Coord, y: Coord) -> bool:
        idx = bisect_left(self.stair_x, x)
        return idx < len(self.stair_x) and self.stair_y[idx] <= y

    def locate(self, x: Coord, y: Coord) -> tuple[Loc, str | None]:
        # boundary rays stay with the component whose inclusion behavior they
        # share: on x = apex_x above the apex only the horizontal boundary
        # matters (right component), on y = apex_y left of the apex only the
        # vertical one does (down component)
        if x >= self.apex_x and y <= self.apex_y:
            return (Loc.RED, None)
        if self.in_blue(x, y):
            return (Loc.BLUE, None)
        if x >= self.apex_x and y > self.apex_y:
            return (Loc.GRAY, "right")
        if x < self.apex_x and y <= self.apex_y:
            return (Loc.GRAY, "down")
        return (Loc.WHITE, None)


class ThreeRectRegions:
    """Downward-open red 3-rectangle [lo_x, hi_x] x (-inf, top_y] with blue
    constraints split by position: halfplane bounds on the left/right/top
    gaps and two corner staircases (ascending over the top-left corner,
    descending over the top-right one).

    ``floor`` supports the rectangle reduction: blue points strictly below it
    are cut off by the fixed bottom side, so they impose no constraint here.
    """

    __slots__ = ("lo_x", "hi_x", "top_y", "blue_left", "blue_right", "blue_top",
                 "bx", "by", "dx", "dy", "floor")

    def __init__(self, floor: Coord | None = None):
        self.lo_x: Coord | None = None
        self.hi_x: Coord | None = None
        self.top_y: Coord | None = None
        self.blue_left: Coord | None = None   # blue {x <= blue_left}
        self.blue_right: Coord | None = None  # blue {x >= blue_right}
        self.blue_top: Coord | None = None    # blue {y >= blue_top}
        self.bx: list[Coord] = []  # top-left staircase, x asc / y asc
        self.by: list[Coord] = []
        self.dx: list[Coord] = []  # top-right staircase, x asc / y desc
        self.dy: list[Coord] = []
        self.floor = floor

    def snapshot(self):
        return (self.lo_x, self.hi_x, self.top_y, self.blue_left, self.blue_right,
                self.blue_top, tuple(self.bx), tuple(self.by),
                tuple(self.dx), tuple(self.dy))

    def _scalars(self):
        return (self.lo_x, self.hi_x, self.top_y, self.blue_left,
                self.blue_right, self.blue_top)

    def apply_undo(self, token) -> None:
        scalars, b_edit, d_edit = token
        (self.lo_x, self.hi_x, self.top_y, self.blue_left,
         self.blue_right, self.blue_top) = scalars
        if b_edit is not None:
            pos, removed, inserted = b_edit
            self.bx[pos : pos + inserted] = [p[0] for p in removed]
            self.by[pos : pos + inserted] = [p[1] for p in removed]
        if d_edit is not None:
            pos, removed, inserted = d_edit
            self.dx[pos : pos + inserted] = [p[0] for p in removed]
            self.dy[pos : pos + inserted] = [p[1] for p in removed]

    def grow_red(self, lo: Coord, hi: Coord, top: Coord):
        """Grow the red 3-rectangle to cover [lo, hi] x (-inf, top]."""
        if self.lo_x is not None:
            lo = min(lo, self.lo_x)
            hi = max(hi, self.hi_x)
            top = max(top, self.top_y)
            if (lo, hi, top) == (self.lo_x, self.hi_x, self.top_y):
                return (self._scalars(), None, None), []
        if self.blue_left is not None and lo <= self.blue_left:
            raise Contradiction("red 3-rectangle reaches the left blue bound")
        if self.blue_right is not None and hi >= self.blue_right:
            raise Contradiction("red 3-rectangle reaches the right blue bound")
        if self.blue_top is not None and top >= self.blue_top:
            raise Contradiction("red 3-rectangle reaches the top blue bound")
        i = bisect_left(self.bx, lo)
        if i < len(self.bx) and self.by[i] <= top:
            raise Contradiction("red 3-rectangle meets the top-left blue staircase")
        j = bisect_right(self.dx, hi)
        if j > 0 and self.dy[j - 1] <= top:
            raise Contradiction("red 3-rectangle meets the top-right blue staircase")
        scalars = self._scalars()
        queries: list[ColoredQuery] = [(Color.RED, (lo, hi, None, top))]
        b_edit = d_edit = None
        # promote staircase corners the taller red now turns into halfplanes
        jb = bisect_right(self.by, top)
        if jb > 0:
            promoted_x = self.bx[jb - 1]
            b_edit = (0, tuple(zip(self.bx[:jb], self.by[:jb])), 0)
            del self.bx[:jb]
            del self.by[:jb]
            if self.blue_left is None or promoted_x > self.blue_left:
                self.blue_left = promoted_x
                queries.append((Color.BLUE, (None, promoted_x, None, None)))
        lo_d, hi_d = 0, len(self.dy)
        while lo_d < hi_d:
            mid = (lo_d + hi_d) // 2
            if self.dy[mid] <= top:
                hi_d = mid
            else:
                lo_d = mid + 1
        if lo_d < len(self.dy):
            promoted_x = self.dx[lo_d]
            d_edit = (lo_d, tuple(zip(self.dx[lo_d:], self.dy[lo_d:])), 0)
            del self.dx[lo_d:]
            del self.dy[lo_d:]
            if self.blue_right is None or promoted_x < self.blue_right:
                self.blue_right = promoted_x
                queries.append((Color.BLUE, (promoted_x, None, None, None)))
        self.lo_x, self.hi_x, self.top_y = lo, hi, top
        return (scalars, b_edit, d_edit), queries

    def add_point(self, x: Coord, y: Coord, color: Color):
        if color is Color.RED:
            return self.grow_red(x, x, y)
        # blue
        scalars = self._scalars()
        queries: list[ColoredQuery] = []
        if self.floor is not None and y < self.floor:
            return (scalars, None, None), queries  # cut off by the fixed bottom side
        if self.lo_x is None:
            raise InternalInvariantViolation("blue before any red in 3-rect state")
        if self.lo_x <= x <= self.hi_x and y <= self.top_y:
            raise Contradiction(f"blue point ({x},{y}) inside red 3-rectangle")
        if y <= self.top_y:
            if x < self.lo_x:
                if self.blue_left is None or x > self.blue_left:
                    self.blue_left = x
                    queries.append((Color.BLUE, (None, x, None, None)))
            else:
                if self.blue_right is None or x < self.blue_right:
                    self.blue_right = x
                    queries.append((Color.BLUE, (x, None, None, None)))
            return (scalars, None, None), queries
        if self.lo_x <= x <= self.hi_x:
            if self.blue_top is None or y < self.blue_top:
                self.blue_top = y
                queries.append((Color.BLUE, (None, None, y, None)))
            return (scalars, None, None), queries
        if x < self.lo_x:
            sx, sy = self.bx, self.by
            idx = bisect_left(sx, x)
            if idx < len(sx) and sy[idx] <= y:
                return (scalars, None, None), queries
            j2 = bisect_right(sx, x)
            j0 = bisect_left(sy, y, 0, j2)
            removed = tuple(zip(sx[j0:j2], sy[j0:j2]))
            sx[j0:j2] = [x]
            sy[j0:j2] = [y]
            queries.append((Color.BLUE, (None, x, y, None)))
            return (scalars, (j0, removed, 1), None), queries
        sx, sy = self.dx, self.dy
        j2 = bisect_right(sx, x)
        if j2 > 0 and sy[j2 - 1] <= y:
            return (scalars, None, None), queries
        idx = bisect_left(sx, x)
        j1 = idx
        while j1 < len(sy) and sy[j1] >= y:
            j1 += 1
        removed = tuple(zip(sx[idx:j1], sy[idx:j1]))
        sx[idx:j1] = [x]
        sy[idx:j1] = [y]
        queries.append((Color.BLUE, (x, None, y, None)))
        return (scalars, None, (idx, removed, 1)), queries

    def in_blue(self, x: Coord, y: Coord) -> bool:
        if self.floor is not None and y < self.floor:
            return True
        if self.blue_left is not None and x <= self.blue_left:
            return True
        if self.blue_right is not None and x >= self.blue_right:
            return True
        if self.blue_top is not None and y >= self.blue_top:
            return True
        idx = bisect_left(self.bx, x)
        if idx < len(self.bx) and self.by[idx] <= y:
            return True
        j2 = bisect_right(self.dx, x)
        return j2 > 0 and self.dy[j2 - 1] <= y

    def locate(self, x: Coord, y: Coord) -> tuple[Loc, str | None]:
        if self.lo_x is None:
            raise InternalInvariantViolation("locate on unseeded 3-rect state")
        if self.floor is not None and y < self.floor:
            return (Loc.BLUE, None)
        if self.lo_x <= x <= self.hi_x and y <= self.top_y:
            return (Loc.RED, None)
        if self.in_blue(x, y):
            return (Loc.BLUE, None)
        if x < self.lo_x:
            return (Loc.GRAY, "left" if y <= self.top_y else "top_left")
        if x > self.hi_x:
            return (Loc.GRAY, "right" if y <= self.top_y else "top_right")
        return (Loc.GRAY, "top")
