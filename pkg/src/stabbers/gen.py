"""Instance generators: adversarial constructions with known answer structure
plus seeded random instances.

The max-gap family encodes a set of numbers X so that vertical stabbing
strips correspond one-to-one with prefixes of sorted X: the narrowest strip
width equals max(X) + 1 - maxgap(X) whenever maxgap(X) >= 1 (integer inputs
always qualify), and the class count is exactly |X|. Guard placement matters:
both guards are offset by small rationals so all x coordinates stay distinct,
and the left guard's far endpoint sits just inside the leftmost segment
endpoint, which pins the class count at |X|.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    BadSize,
    Coord,
    DuplicateValues,
    ExhaustedRetries,
    Instance,
    as_coord,
)


@dataclass(frozen=True)
class GenConfig:
    seed: int
    n: int
    coord_min: int = 0
    coord_max: int = 0
    delta: Fraction = Fraction(1, 64)

    def __post_init__(self) -> None:
        if self.delta <= 0:
            raise BadSize("perturbation step must be positive")
        if self.coord_min == 0 and self.coord_max == 0:
            span = max(10 * self.n + 10, 100)
            object.__setattr__(self, "coord_min", -span)
            object.__setattr__(self, "coord_max", span)


def _maxgap_value_pairs(values: list[Coord], delta: Coord | None):
    """Per-segment x-coordinate pairs of the max-gap construction, plus the
    chosen offset; shared by the planar and the diagonal variants."""
    if len(values) < 2:
        raise BadSize("need at least two values")
    if len(set(values)) != len(values):
        raise DuplicateValues("values must be pairwise distinct")
    if any(v <= 0 for v in values):
        raise BadSize("values must be positive")
    ordered = sorted(values)
    x_min, x_second = ordered[0], ordered[1]
    x_max = ordered[-1]
    limit = min(Fraction(1), Fraction(x_min), Fraction(x_second) - Fraction(x_min))
    if delta is None:
        delta = limit / 4
    delta = as_coord(Fraction(delta))
    while not 0 < delta < limit:
        delta = as_coord(Fraction(delta) / 2)
    pairs: list[tuple[Coord, Coord]] = []
    for v in values:
        pairs.append((as_coord(-x_max + v - 1), as_coord(v)))
    # right guard: forbids the all-right-endpoints halfplane
    pairs.append((delta, as_coord(x_max + delta)))
    # left guard: its right endpoint forbids the all-left halfplane; its left
    # endpoint sits just right of the leftmost segment endpoint so that no
    # strip can take every left endpoint while skipping the guard
    pairs.append((as_coord(x_min - x_max - 1 + delta), as_coord(-delta)))
    return pairs, delta


def gen_maxgap(values, delta: Coord | None = None) -> Instance:
    """Horizontal segments whose vertical stabbing strips encode the maximum
    gap of ``values``; |values| + 2 segments, all x coordinates distinct."""
    vals = [as_coord(v) for v in values]
    pairs, _ = _maxgap_value_pairs(vals, delta)
    coords = []
    for i, (a, b) in enumerate(pairs[:-2]):
        coords.append(((a, i + 1), (b, i + 1)))
    ga, gb = pairs[-2]
    coords.append(((ga, 0), (gb, 0)))
    ga, gb = pairs[-1]
    coords.append(((ga, -1), (gb, -1)))
    return Instance.from_coords(coords)


def gen_maxgap_rotated(values, delta: Coord | None = None) -> Instance:
    """The max-gap construction squashed onto one line and given a quarter
    turn onto the main diagonal: bottom-right quadrant stabbers of the result
    correspond one-to-one with vertical strip stabbers of ``gen_maxgap``."""
    vals = [as_coord(v) for v in values]
    pairs, _ = _maxgap_value_pairs(vals, delta)
    coords = [((a, a), (b, b)) for a, b in pairs]
    return Instance.from_coords(coords)


def gen_quadratic_rect(n: int) -> Instance:
    """An instance with at least (n/4)^2 combinatorially different stabbing
    rectangles: two far-apart diagonal max-gap families, one seen only by the
    top-left corner of any stabbing rectangle and one only by the
    bottom-right corner, so their choices multiply."""
    if n < 8 or n % 4:
        raise BadSize("size must be a multiple of 4, at least 8")
    k = n // 2 - 2
    pairs, _ = _maxgap_value_pairs([as_coord(i) for i in range(1, k + 1)], None)
    spread = max(abs(Fraction(v)) for pair in pairs for v in pair)
    shift = as_coord(8 * (spread + 1))
    coords = []
    for a, b in pairs:  # top-left family: constrains (left, top) only
        coords.append(((a - shift, a + shift), (b - shift, b + shift)))
    for a, b in pairs:  # bottom-right family: constrains (right, bottom) only
        coords.append(((shift - a, -shift - a), (shift - b, -shift - b)))
    inst = Instance.from_coords(coords)
    if n <= 12:
        from .core import Shape
        from .oracle import oracle_classes

        count = len(oracle_classes(inst, Shape.rect()))
        if count < (n // 4) ** 2:
            raise AssertionError(
                f"construction self-check failed: {count} rectangle classes")
    return inst


def gen_cascade_chain(n: int) -> Instance:
    """An instance whose strip cascade classifies the n-2 chain segments one
    at a time: each classification grows the red or blue region just enough
    to expose the next segment's trigger endpoint."""
    if n < 3:
        raise BadSize("chain needs at least 3 segments")
    m = n
    spans = [(0, 10 * m), (15 * m, 25 * m)]
    for t in range(1, n - 1):
        if t == 1:
            trigger, partner = 10 * m + 5, 25 * m - 10
        elif t % 2 == 0:
            step = t // 2
            trigger, partner = 25 * m - 10 * step + 5, 10 * m - 10 * step
        else:
            step = (t - 1) // 2
            trigger, partner = 10 * m - 10 * step + 5, 25 * m - 10 * (step + 1)
        spans.append((trigger, partner))
    coords = []
    for i, (ya, yb) in enumerate(spans):
        coords.append(((2 * i, ya), (2 * i + 1, yb)))
    return Instance.from_coords(coords)


def gen_random(cfg: GenConfig) -> Instance:
    """Seeded random instance with pairwise distinct x and y coordinates."""
    if cfg.n < 1:
        raise BadSize("need at least one segment")
    rng = random.Random(cfg.seed)
    universe = range(cfg.coord_min, cfg.coord_max + 1)
    try:
        xs = rng.sample(universe, 2 * cfg.n)
        ys = rng.sample(universe, 2 * cfg.n)
    except ValueError as exc:
        raise ExhaustedRetries(
            f"coordinate range {cfg.coord_min}..{cfg.coord_max} cannot host"
            f" {2 * cfg.n} distinct values") from exc
    coords = [
        ((xs[2 * i], ys[2 * i]), (xs[2 * i + 1], ys[2 * i + 1]))
        for i in range(cfg.n)
    ]
    return Instance.from_coords(coords)
