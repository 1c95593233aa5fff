import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stabbers.core import (
    Classification,
    Color,
    DegenerateInput,
    DoubleAssignmentConflict,
    EndpointId,
    Instance,
    MalformedSolution,
    PartialClassification,
    Point,
    Segment,
    Shape,
    Solution,
    StabberClass,
    as_coord,
    canonical_class,
    class_of_region,
    coord_str,
    realize_region,
    validate_general_position,
)
from support import make_i2, make_i3, rand_instance


def test_as_coord_int_and_fraction():
    assert as_coord(5) == 5 and isinstance(as_coord(5), int)
    assert as_coord("3/4") == Fraction(3, 4)
    assert as_coord(Fraction(8, 2)) == 4 and isinstance(as_coord(Fraction(8, 2)), int)


def test_as_coord_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_coord(0.1)
    with pytest.raises(TypeError):
        as_coord(True)


def test_coord_round_trip():
    for v in (7, -3, Fraction(22, 7), Fraction(-1, 64)):
        assert as_coord(coord_str(as_coord(v))) == as_coord(v)


def test_coord_comparisons_are_exact():
    a = Fraction(1, 3)
    b = Fraction(333333333333333333, 10**18)
    assert a != b and (a > b) != (a < b)


def test_segment_roles():
    s = Segment(Point(0, 3), Point(2, 0))
    assert s.upper == Point(0, 3)
    assert s.lower == Point(2, 0)
    assert s.left == Point(0, 3)
    assert s.right == Point(2, 0)


def test_degenerate_segment_roles_raise():
    horizontal = Segment(Point(0, 1), Point(5, 1))
    with pytest.raises(DegenerateInput):
        horizontal.upper
    assert horizontal.left == Point(0, 1)
    with pytest.raises(DegenerateInput):
        Segment(Point(0, 0), Point(0, 0))


def test_validate_rect_ok_on_distinct_coords():
    inst = rand_instance(random.Random(3), 5)
    validate_general_position(inst, Shape.rect())


def test_validate_reports_shared_y():
    inst = Instance.from_coords([((0, 0), (1, 5)), ((2, 5), (3, 9))])
    with pytest.raises(DegenerateInput) as err:
        validate_general_position(inst, Shape.strip("horizontal"))
    assert set(err.value.witnesses) == {EndpointId(0, "B"), EndpointId(1, "A")}
    # the x axis is untouched by horizontal strips
    validate_general_position(inst, Shape.strip("vertical"))


def test_validate_maxgap_for_vertical_strips():
    from stabbers.gen import gen_maxgap

    inst = gen_maxgap([7, 4, 1, 2, 8])
    validate_general_position(inst, Shape.strip("vertical"))
    assert len(set(inst.xs)) == 2 * inst.n


def test_canonical_class_single_segment():
    c = Classification({EndpointId(0, "A"): Color.RED, EndpointId(0, "B"): Color.BLUE})
    assert canonical_class(c, 1).reds == (EndpointId(0, "A"),)


def test_canonical_class_sorts():
    c = Classification()
    c.assign(EndpointId(1, "B"), Color.RED)
    c.assign(EndpointId(1, "A"), Color.BLUE)
    c.assign(EndpointId(0, "A"), Color.RED)
    c.assign(EndpointId(0, "B"), Color.BLUE)
    assert canonical_class(c, 2).reds == (EndpointId(0, "A"), EndpointId(1, "B"))


def test_canonical_class_partial_raises():
    c = Classification({EndpointId(0, "A"): Color.RED, EndpointId(0, "B"): Color.BLUE})
    with pytest.raises(PartialClassification):
        canonical_class(c, 2)


@given(st.permutations(list(range(6))))
def test_canonical_class_order_independent(order):
    eids = [EndpointId(s, e) for s in range(3) for e in ("A", "B")]
    colors = {
        EndpointId(0, "A"): Color.RED, EndpointId(0, "B"): Color.BLUE,
        EndpointId(1, "B"): Color.RED, EndpointId(1, "A"): Color.BLUE,
        EndpointId(2, "A"): Color.RED, EndpointId(2, "B"): Color.BLUE,
    }
    c = Classification()
    for i in order:
        c.assign(eids[i], colors[eids[i]])
    first = canonical_class(c, 3)
    assert first == canonical_class(c, 3)  # idempotent
    assert first.reds == (EndpointId(0, "A"), EndpointId(1, "B"), EndpointId(2, "A"))


def test_classification_conflicts():
    c = Classification()
    c.assign(EndpointId(0, "A"), Color.RED)
    with pytest.raises(DoubleAssignmentConflict):
        c.assign(EndpointId(0, "A"), Color.BLUE)
    with pytest.raises(DoubleAssignmentConflict):
        c.assign(EndpointId(0, "B"), Color.RED)


def test_realize_strip():
    inst = Instance.from_coords([((0, 1), (1, 10)), ((2, 2), (3, -5))])
    cls = StabberClass((EndpointId(0, "A"), EndpointId(1, "A")))
    sol = Solution(Shape.strip("horizontal"),
                   (EndpointId(1, "A"), EndpointId(0, "A")), cls)
    member = realize_region(inst, sol)
    assert member(Point(50, 1)) and member(Point(-50, 2)) and member(Point(0, Fraction(3, 2)))
    assert not member(Point(0, Fraction(1, 2))) and not member(Point(0, 3))


def test_realize_quadrant_br():
    inst = Instance.from_coords([((2, -3), (0, 9)), ((5, 0), (-4, 8))])
    cls = StabberClass((EndpointId(0, "A"), EndpointId(1, "A")))
    sol = Solution(Shape.quadrant("br"), (EndpointId(0, "A"), EndpointId(1, "A")), cls)
    member = realize_region(inst, sol)
    assert member(Point(2, 0))  # apex lies on both boundaries
    assert member(Point(100, -100))
    assert not member(Point(1, 0)) and not member(Point(2, 1))


def test_realize_rect_box():
    inst = Instance.from_coords(
        [((0, 1), (-10, 20)), ((5, 3), (30, -9)), ((1, 0), (2, 40)), ((3, 6), (-7, -8))]
    )
    reds = (EndpointId(0, "A"), EndpointId(1, "A"), EndpointId(2, "A"), EndpointId(3, "A"))
    sol = Solution(Shape.rect(), (reds[0], reds[3], reds[1], reds[2]), StabberClass(reds))
    member = realize_region(inst, sol)
    # box [0,5] x [0,6]
    assert member(Point(0, 0)) and member(Point(5, 6)) and member(Point(3, 3))
    assert not member(Point(-1, 3)) and not member(Point(3, 7))


def test_solution_anchor_validation():
    inst = make_i3()
    cls = StabberClass((EndpointId(0, "B"), EndpointId(1, "A")))
    with pytest.raises(MalformedSolution):
        Solution(Shape.strip("horizontal"), (EndpointId(0, "B"),), cls)
    with pytest.raises(MalformedSolution):
        Solution(Shape.strip("horizontal"),
                 (EndpointId(0, "A"), EndpointId(1, "A")), cls)  # 0A is not red
    bad = Solution(Shape.strip("horizontal"),
                   (EndpointId(0, "B"), EndpointId(1, "A")), cls)
    with pytest.raises(MalformedSolution):
        realize_region(inst, bad)  # top anchor below bottom anchor


def test_class_of_region_matches_oracle_idea():
    assert class_of_region(make_i2(), lambda p: True) is None  # holds both ends
    got = class_of_region(make_i3(), lambda p: 1 <= p.y <= 2)
    assert got is not None
    assert got.reds == (EndpointId(0, "B"), EndpointId(1, "A"))
