import random

import pytest
from hypothesis import given, settings, strategies as st

from stabbers.cascade import CLASSIFIED, UNKNOWN, WAITING, CascadeState
from stabbers.core import (
    Color,
    DoubleAssignmentConflict,
    EndpointId,
    Instance,
    StaleCheckpoint,
)
from stabbers.regions import QuadrantRegions, StripRegions
from support import classes_of, lower, make_i2, make_i3, naive_cascade, rand_instance, upper


def strip_state(inst, discipline="fifo"):
    return CascadeState(inst, StripRegions(), discipline=discipline)


def seed_strip(inst, state):
    ys = inst.ys
    seg_b = max(range(inst.n), key=lambda s: ys[lower(inst, s).index])
    seg_t = min(range(inst.n), key=lambda s: ys[upper(inst, s).index])
    seeds = [(lower(inst, seg_b), Color.RED), (upper(inst, seg_t), Color.RED)]
    return state.seed(seeds)


def quadrant_state(inst):
    apex_x = min(max(inst.xs[2 * s], inst.xs[2 * s + 1]) for s in range(inst.n))
    apex_y = max(min(inst.ys[2 * s], inst.ys[2 * s + 1]) for s in range(inst.n))
    state = CascadeState(inst, QuadrantRegions(apex_x, apex_y))
    state.absorb((apex_x, None, None, apex_y))
    return state, (apex_x, apex_y)


def test_seed_i3_queues_both_and_covers_span():
    inst = make_i3()
    state = strip_state(inst)
    assert not seed_strip(inst, state).contradiction
    assert all(s == WAITING for s in state.status)
    assert not state.run().contradiction
    assert (state.regions.r_lo, state.regions.r_hi) == (1, 2)
    assert state.unknown_segments() == []


def test_seed_conflicting_colors_raises():
    inst = make_i3()
    state = strip_state(inst)
    with pytest.raises(DoubleAssignmentConflict):
        state.seed([(EndpointId(0, "A"), Color.RED), (EndpointId(0, "A"), Color.BLUE)])


def test_seed_same_color_pair_is_contradiction_outcome():
    inst = make_i3()
    state = strip_state(inst)
    result = state.seed([(EndpointId(0, "A"), Color.RED), (EndpointId(0, "B"), Color.RED)])
    assert result.contradiction


def test_seed_quadrant_absorbs_initial_region():
    rng = random.Random(9)
    inst = rand_instance(rng, 5)
    state, (ax, ay) = quadrant_state(inst)
    expected = set()
    for seg in range(inst.n):
        if any(
            inst.xs[2 * seg + k] >= ax and inst.ys[2 * seg + k] <= ay
            for k in (0, 1)
        ):
            expected.add(seg)
    waiting = {s for s in range(inst.n) if state.status[s] == WAITING}
    assert waiting == expected


def test_run_i2_contradicts_at_middle_segment():
    inst = make_i2()
    state = strip_state(inst)
    seed_strip(inst, state)
    result = state.run()
    assert result.contradiction
    assert result.witness.seg == 1


def test_run_i3_quiescent_with_expected_class():
    inst = make_i3()
    state = strip_state(inst)
    seed_strip(inst, state)
    assert not state.run().contradiction
    reds = tuple(sorted(state.red_endpoints()))
    assert reds == (EndpointId(0, "B"), EndpointId(1, "A"))


def quiescent_quadrant_case(start_seed: int, min_unknown: int = 0):
    """First random instance whose quadrant cascade goes quiescent."""
    for seed in range(start_seed, start_seed + 500):
        rng = random.Random(seed)
        inst = rand_instance(rng, 8)
        state, apex = quadrant_state(inst)
        if not state.run().contradiction and len(state.unknown_segments()) >= min_unknown:
            return inst, state, apex
    raise AssertionError("no quiescent case found")


def test_checkpoint_rollback_restores_everything():
    inst, state, _ = quiescent_quadrant_case(0, min_unknown=2)
    cp = state.checkpoint()
    snap = (list(state.colors), list(state.status), state.regions.snapshot())
    unknown = state.unknown_segments()
    extra = [(EndpointId(unknown[0], "A"), Color.RED),
             (EndpointId(unknown[1], "B"), Color.RED)]
    state.seed(extra)
    state.run()
    assert (list(state.colors), list(state.status)) != snap[:2]
    state.rollback(cp)
    assert (list(state.colors), list(state.status), state.regions.snapshot()) == snap
    state.rollback(cp)  # idempotent
    assert (list(state.colors), list(state.status), state.regions.snapshot()) == snap


def test_stale_checkpoint_detected():
    inst = make_i3()
    state = strip_state(inst)
    seed_strip(inst, state)
    state.run()
    cp1 = state.checkpoint()
    base = CascadeState(inst, StripRegions())
    cp0 = base.checkpoint()
    state.rollback(cp0)  # unwinds everything
    with pytest.raises(StaleCheckpoint):
        state.rollback(cp1)


def test_index_membership_restored_on_rollback():
    inst, state, _ = quiescent_quadrant_case(100, min_unknown=1)
    cp = state.checkpoint()
    active_before = [state.index.is_active(e) for e in inst.endpoint_ids()]
    unknown = state.unknown_segments()
    state.seed([(EndpointId(unknown[0], "A"), Color.RED)])
    state.run()
    state.rollback(cp)
    assert [state.index.is_active(e) for e in inst.endpoint_ids()] == active_before


def test_journal_soundness_replay():
    inst = make_i3()
    state = strip_state(inst)
    seed_strip(inst, state)
    state.run()
    fresh = StripRegions()
    for seg, color_a, color_b in state.journal_colorings():
        pairs = [(2 * seg, color_a), (2 * seg + 1, color_b)]
        pairs.sort(key=lambda p: p[1] is not Color.RED)  # red first, as the engine does
        for idx, color in pairs:
            fresh.add_point(inst.xs[idx], inst.ys[idx], color)
    assert fresh.snapshot() == state.regions.snapshot()


def test_clone_is_independent():
    inst = make_i3()
    state = strip_state(inst)
    seed_strip(inst, state)
    clone = state.clone()
    state.run()
    assert clone.unknown_segments() != [] or clone.status != state.status
    assert not clone.run().contradiction
    assert clone.colors == state.colors


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_fifo_and_lifo_reach_the_same_quiescence(seed):
    rng = random.Random(seed)
    inst = rand_instance(rng, rng.randint(2, 8))
    outcomes = []
    for discipline in ("fifo", "lifo"):
        state = strip_state(inst, discipline)
        r = seed_strip(inst, state)
        if not r.contradiction:
            r = state.run()
        if r.contradiction:
            outcomes.append("contradiction")
        else:
            outcomes.append((tuple(state.colors), state.regions.snapshot()))
    assert outcomes[0] == outcomes[1]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_engine_matches_naive_strip_cascade(seed):
    rng = random.Random(seed)
    inst = rand_instance(rng, rng.randint(2, 10))
    ys = inst.ys
    seg_b = max(range(inst.n), key=lambda s: ys[lower(inst, s).index])
    seg_t = min(range(inst.n), key=lambda s: ys[upper(inst, s).index])
    if seg_b == seg_t:
        return
    seeds = [(lower(inst, seg_b), Color.RED), (upper(inst, seg_t), Color.RED)]
    state = strip_state(inst)
    r = state.seed(seeds)
    if not r.contradiction:
        r = state.run()
    outcome, colors = naive_cascade(inst, "strip", seeds)
    if r.contradiction:
        assert outcome == "contradiction"
    else:
        assert outcome == "quiescent"
        engine_colors = {
            EndpointId.from_index(i): c for i, c in enumerate(state.colors) if c
        }
        assert engine_colors == colors


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_engine_matches_naive_quadrant_cascade(seed):
    rng = random.Random(seed)
    inst = rand_instance(rng, rng.randint(1, 10))
    state, _ = quadrant_state(inst)
    # replicate the engine's initial waiting set as naive seeds
    seeds = []
    for seg in range(inst.n):
        if state.status[seg] == WAITING:
            ca, _ = state.pending[seg]
            seeds.append((EndpointId(seg, "A"), ca))
    r = state.run()
    outcome, colors = naive_cascade(inst, "quadrant", seeds)
    if r.contradiction:
        assert outcome == "contradiction"
    else:
        assert outcome == "quiescent"
        engine_colors = {
            EndpointId.from_index(i): c for i, c in enumerate(state.colors) if c
        }
        assert engine_colors == colors


def test_partition_invariant_holds_after_operations():
    rng = random.Random(21)
    inst = rand_instance(rng, 7)
    state, _ = quadrant_state(inst)
    state.run()
    counts = {UNKNOWN: 0, WAITING: 0, CLASSIFIED: 0}
    for s in state.status:
        counts[s] += 1
    assert sum(counts.values()) == inst.n
    assert counts[WAITING] == 0
    for seg in range(inst.n):
        colored = state.colors[2 * seg] is not None
        assert colored == (state.status[seg] == CLASSIFIED)
