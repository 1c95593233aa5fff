"""Enumerate all combinatorially different axis-parallel stabbing regions
(halfplanes, strips, quadrants, 3-sided rectangles, rectangles) of a set of
plane segments, with exact rational arithmetic throughout."""

from .core import (
    BadSize,
    Classification,
    Color,
    Coord,
    DegenerateInput,
    DoubleAssignmentConflict,
    DuplicateValues,
    EndpointId,
    ExhaustedRetries,
    Instance,
    InternalInvariantViolation,
    MalformedSolution,
    PartialClassification,
    Point,
    Segment,
    Shape,
    Side,
    Solution,
    StabberClass,
    StabberError,
    StaleCheckpoint,
    as_coord,
    canonical_class,
    class_of_region,
    realize_region,
    region_bounds,
    validate_general_position,
)
from .gen import GenConfig, gen_cascade_chain, gen_maxgap, gen_maxgap_rotated, gen_quadratic_rect, gen_random
from .oracle import oracle_classes, oracle_narrowest_strip
from .solvers import (
    is_trivial,
    solution_from_class,
    solve,
    solve_halfplane,
    solve_quadrant,
    solve_rect,
    solve_strip,
    solve_three_rect,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
